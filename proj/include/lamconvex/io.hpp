#pragma once

/**
 * @file io.hpp
 * @brief JSON laminate files.
 *
 *   {"name": "optional text", "breakpoints": [-1, 0, 1], "angles_deg": [0, 90]}
 *
 * Angles are degrees on disk and radians in memory. Unknown keys are rejected.
 * Breakpoints must already span [-1, 1] unless normalization is requested.
 */

#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lamconvex/core.hpp"

namespace lamconvex {

struct LaminateFile {
    std::vector<double> breakpoints;
    std::vector<double> angles_deg;
    std::optional<std::string> name;
};

// Conversions go through long double so that deg -> rad -> deg round trips
// stay within one ulp.
inline double deg_to_rad(double deg) {
    return static_cast<double>(static_cast<long double>(deg) * std::numbers::pi_v<long double> /
                               180.0L);
}

inline double rad_to_deg(double rad) {
    return static_cast<double>(static_cast<long double>(rad) * 180.0L /
                               std::numbers::pi_v<long double>);
}

namespace detail {

inline std::vector<double> number_array(const nlohmann::json& j, const char* field) {
    if (!j.contains(field)) {
        throw Error(ErrorCode::ParseError, std::string("missing field '") + field + "'");
    }
    const auto& arr = j.at(field);
    if (!arr.is_array()) {
        throw Error(ErrorCode::ParseError, std::string("field '") + field + "' must be an array");
    }
    std::vector<double> out;
    out.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_number()) {
            throw Error(ErrorCode::ParseError, std::string(field) + "[" + std::to_string(i) +
                                                   "] is not a number");
        }
        out.push_back(arr[i].get<double>());
    }
    return out;
}

}  // namespace detail

inline LaminateFile parse_laminate_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "laminate file must hold a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key != "breakpoints" && key != "angles_deg" && key != "name") {
            throw Error(ErrorCode::ParseError, "unknown field '" + key + "'");
        }
    }
    LaminateFile f;
    f.breakpoints = detail::number_array(j, "breakpoints");
    f.angles_deg = detail::number_array(j, "angles_deg");
    if (j.contains("name")) {
        if (!j["name"].is_string()) throw Error(ErrorCode::ParseError, "field 'name' must be a string");
        f.name = j["name"].get<std::string>();
    }
    return f;
}

/// Converts to radians and validates; with `normalize` the breakpoints are
/// first mapped affinely onto [-1, 1].
inline StepLaminate to_laminate(const LaminateFile& f, bool normalize = false) {
    std::vector<double> bps = f.breakpoints;
    if (normalize) {
        for (std::size_t i = 1; i < bps.size(); ++i) {
            if (!(bps[i] > bps[i - 1])) {
                throw Error(ErrorCode::InvariantViolation,
                            "breakpoints[" + std::to_string(i) + "] is not strictly increasing");
            }
        }
        bps = normalize_breakpoints(bps);
    }
    std::vector<double> rad(f.angles_deg.size());
    for (std::size_t i = 0; i < rad.size(); ++i) rad[i] = deg_to_rad(f.angles_deg[i]);
    return {std::move(bps), std::move(rad)};
}

inline LaminateFile to_file(const StepLaminate& t, std::optional<std::string> name = std::nullopt) {
    LaminateFile f;
    f.breakpoints.assign(t.breakpoints().begin(), t.breakpoints().end());
    f.angles_deg.reserve(t.size());
    for (double a : t.angles()) f.angles_deg.push_back(rad_to_deg(a));
    f.name = std::move(name);
    return f;
}

/// Shortest round-trip decimal form of every double.
inline std::string dump_laminate_json(const LaminateFile& f) {
    nlohmann::ordered_json j;
    if (f.name) j["name"] = *f.name;
    j["breakpoints"] = f.breakpoints;
    j["angles_deg"] = f.angles_deg;
    return j.dump(2) + "\n";
}

inline StepLaminate load_laminate(const std::string& path, bool normalize = false) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IOError, "cannot open '" + path + "' for reading");
    std::stringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw Error(ErrorCode::IOError, "read failure on '" + path + "'");
    return to_laminate(parse_laminate_json(buf.str()), normalize);
}

inline void save_laminate(const StepLaminate& t, const std::string& path,
                          std::optional<std::string> name = std::nullopt) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IOError, "cannot open '" + path + "' for writing");
    out << dump_laminate_json(to_file(t, std::move(name)));
    out.flush();
    if (!out) throw Error(ErrorCode::IOError, "write failure on '" + path + "'");
}

}  // namespace lamconvex
