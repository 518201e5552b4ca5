#pragma once

/**
 * @file report.hpp
 * @brief Command reports: inputs echo, numeric payload, verdicts.
 *
 * Every verdict carries the value it was decided on and the tolerance, so it
 * can be re-derived from the report alone. JSON output preserves insertion
 * order and prints doubles in shortest round-trip form, so identical inputs
 * give byte-identical documents.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lamconvex/convexity.hpp"
#include "lamconvex/counterexample.hpp"
#include "lamconvex/lamparams.hpp"

namespace lamconvex {

using ojson = nlohmann::ordered_json;

/// Allowed excess of |xi| over 1 from round-off.
inline constexpr double kBoundSlack = 1e-12;

struct Verdict {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string rule;  ///< e.g. "value <= tolerance"
};

struct Report {
    std::string command;
    ojson inputs = ojson::object();
    ojson payload = ojson::object();
    std::vector<Verdict> verdicts;
    std::vector<std::string> notes;

    bool pass() const {
        for (const auto& v : verdicts) {
            if (!v.pass) return false;
        }
        return true;
    }

    ojson to_json() const {
        ojson j;
        j["command"] = command;
        j["inputs"] = inputs;
        j["payload"] = payload;
        ojson vs = ojson::array();
        for (const auto& v : verdicts) {
            vs.push_back({{"name", v.name},
                          {"value", v.value},
                          {"tolerance", v.tolerance},
                          {"rule", v.rule},
                          {"pass", v.pass}});
        }
        j["verdicts"] = vs;
        if (!notes.empty()) j["notes"] = notes;
        j["pass"] = pass();
        return j;
    }
};

inline ojson params_json(const LamParams& p) {
    return {{"xiA", p.xiA}, {"xiB", p.xiB}, {"xiD", p.xiD}};
}

inline double max_abs(const LamParams& p) {
    double m = 0.0;
    for (double v : p.flat()) m = std::max(m, std::abs(v));
    return m;
}

inline Verdict bounds_verdict(double max_abs_value) {
    return {"bounds", max_abs_value, 1.0 + kBoundSlack, max_abs_value <= 1.0 + kBoundSlack,
            "max |xi| <= tolerance"};
}

inline Report params_report(const StepLaminate& t) {
    Report r;
    r.command = "params";
    r.inputs["plies"] = t.size();
    const LamParams p = lamination_parameters(t);
    r.payload["parameters"] = params_json(p);
    r.verdicts.push_back(bounds_verdict(max_abs(p)));
    return r;
}

inline Report combine_report(const StepLaminate& t1, const StepLaminate& t2, double alpha,
                             const StepLaminate& result, double tolerance) {
    Report r;
    r.command = "combine";
    r.inputs["alpha"] = alpha;
    r.inputs["tolerance"] = tolerance;
    r.inputs["plies1"] = t1.size();
    r.inputs["plies2"] = t2.size();
    const CombinationReport check = verify_combination(t1, t2, alpha, result, tolerance);
    const LamParams p = lamination_parameters(result);
    r.payload["pieces"] = result.size();
    r.payload["refinement_intervals"] = refine(t1, t2).size();
    r.payload["parameters"] = params_json(p);
    r.payload["target"] =
        params_json(mix(lamination_parameters(t1), lamination_parameters(t2), alpha));
    ojson res = ojson::object();
    for (std::size_t k = 0; k < 12; ++k) res[std::string(kParamNames[k])] = check.residuals[k];
    r.payload["residuals"] = res;
    r.payload["max_residual"] = check.max_residual;
    r.verdicts.push_back({"combination", check.max_residual, tolerance, check.pass,
                          "max residual <= tolerance"});
    r.verdicts.push_back(bounds_verdict(max_abs(p)));
    return r;
}

inline Report gsequence_report(const StepLaminate& t1, const StepLaminate& t2, double alpha,
                               const std::vector<std::int64_t>& n_list,
                               LimitOrientation orientation) {
    Report r;
    r.command = "gsequence";
    r.inputs["alpha"] = alpha;
    r.inputs["n"] = n_list;
    r.inputs["orientation"] =
        orientation == LimitOrientation::AsConstructed ? "constructed" : "swapped";
    const auto rows = convergence_table(t1, t2, alpha, n_list, orientation);
    r.payload["limit"] = params_json(theta_n_limit(t1, t2, alpha, orientation));
    ojson table = ojson::array();
    double worst_bound = 0.0;
    double worst_growth = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        table.push_back({{"n", row.n},
                         {"parameters", params_json(row.params)},
                         {"distance", row.distance},
                         {"max_distance", row.max_distance}});
        worst_bound = std::max(worst_bound, max_abs(row.params));
        // along increasing n the distance may not grow by more than a factor 2
        if (i > 0 && row.n > rows[i - 1].n) {
            const double allowed = 2.0 * rows[i - 1].max_distance + kBoundSlack;
            worst_growth = std::max(worst_growth, row.max_distance - allowed);
        }
    }
    r.payload["rows"] = table;
    r.verdicts.push_back(bounds_verdict(worst_bound));
    r.verdicts.push_back({"decay", worst_growth, 0.0, worst_growth <= 0.0,
                          "max over rows of d(n_next) - 2 d(n_prev) - 1e-12 <= 0"});
    if (orientation == LimitOrientation::Swapped) {
        r.notes.push_back(
            "limit uses (1 - alpha) xi[t1] + alpha xi[t2]; the sequence itself converges to "
            "alpha xi[t1] + (1 - alpha) xi[t2]");
    }
    return r;
}

inline ojson witness_entries_json(const std::vector<WitnessEntry>& entries) {
    ojson arr = ojson::array();
    for (const auto& e : entries) {
        ojson j{{"n", e.n}, {"fraction", e.fraction}};
        if (e.exact) j["fraction_exact"] = e.exact->to_string();
        arr.push_back(j);
    }
    return arr;
}

/// Re-checks every witness entry against its region (exactly when rational).
inline std::size_t count_region_violations(const WitnessTable& w) {
    std::size_t bad = 0;
    for (const auto& e : w.below) {
        const bool ok = e.exact ? (e.exact->num() > 0 && compare(*e.exact, w.alpha) < 0)
                                : (e.fraction > 0.0 && e.fraction < w.alpha);
        bad += ok ? 0 : 1;
    }
    for (const auto& e : w.above) {
        const bool ok = e.exact ? (compare(*e.exact, w.alpha) > 0 && e.exact->num() < e.exact->den())
                                : (e.fraction > w.alpha && e.fraction < 1.0);
        bad += ok ? 0 : 1;
    }
    return bad;
}

inline Report oscillate_report(const WitnessTable& w, std::size_t count) {
    Report r;
    r.command = "oscillate";
    r.inputs["x"] = w.x;
    if (w.x_exact) r.inputs["x_exact"] = w.x_exact->to_string();
    r.inputs["alpha"] = w.alpha;
    r.inputs["count"] = count;
    if (w.x_exact) r.payload["y_exact"] = cell_coordinate(*w.x_exact).to_string();
    r.payload["below"] = witness_entries_json(w.below);
    r.payload["above"] = witness_entries_json(w.above);
    r.payload["undefined_at"] = w.undefined_at;
    if (w.values_differ) r.payload["values_differ"] = *w.values_differ;
    const auto found = static_cast<double>(std::min(w.below.size(), w.above.size()));
    r.verdicts.push_back({"witnesses", found, static_cast<double>(count),
                          found >= static_cast<double>(count),
                          "min(#below, #above) >= tolerance"});
    const auto bad = static_cast<double>(count_region_violations(w));
    r.verdicts.push_back({"regions", bad, 0.0, bad == 0.0, "entries outside their region <= 0"});
    if (w.values_differ && !*w.values_differ) {
        r.notes.push_back("theta1(x) == theta2(x): theta^n(x) is constant at x, oscillation is vacuous");
    }
    return r;
}

namespace detail {

inline std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "% .17g", v);
    return buf;
}

inline std::string fmt_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline void print_params(std::string& out, const ojson& p) {
    for (const char* block : {"xiA", "xiB", "xiD"}) {
        out += "  ";
        out += block;
        out += ":";
        for (const auto& v : p[block]) out += " " + fmt_num(v.get<double>());
        out += "\n";
    }
}

}  // namespace detail

/// Human-readable rendering.
inline std::string to_text(const Report& r) {
    std::string out = r.command + "\n";
    const auto& pl = r.payload;
    if (r.command == "params" || r.command == "combine") {
        if (pl.contains("pieces")) out += "pieces: " + pl["pieces"].dump() + "\n";
        out += "parameters:\n";
        detail::print_params(out, pl["parameters"]);
        if (pl.contains("residuals")) {
            out += "residuals:\n";
            for (const auto& [k, v] : pl["residuals"].items()) {
                out += "  " + k + ": " + detail::fmt_num(v.get<double>()) + "\n";
            }
        }
    } else if (r.command == "gsequence") {
        out += "limit:\n";
        detail::print_params(out, pl["limit"]);
        out += "       n    max_distance\n";
        for (const auto& row : pl["rows"]) {
            char buf[80];
            std::snprintf(buf, sizeof buf, "%8lld  %.6e\n",
                          static_cast<long long>(row["n"].get<std::int64_t>()),
                          row["max_distance"].get<double>());
            out += buf;
        }
    } else if (r.command == "oscillate") {
        if (pl.contains("y_exact")) out += "y = " + pl["y_exact"].get<std::string>() + "\n";
        for (const char* region : {"below", "above"}) {
            out += std::string(region) + ":";
            for (const auto& e : pl[region]) {
                out += " " + e["n"].dump();
                out += "(" + (e.contains("fraction_exact") ? e["fraction_exact"].get<std::string>()
                                                           : detail::fmt_num(e["fraction"].get<double>()))
                       + ")";
            }
            out += "\n";
        }
        out += "undefined_at:";
        for (const auto& n : pl["undefined_at"]) out += " " + n.dump();
        out += "\n";
    }
    for (const auto& v : r.verdicts) {
        out += std::string(v.pass ? "PASS " : "FAIL ") + v.name + ": " + detail::fmt_short(v.value) +
               " (" + v.rule + ", tolerance " + detail::fmt_short(v.tolerance) + ")\n";
    }
    for (const auto& n : r.notes) out += "note: " + n + "\n";
    return out;
}

}  // namespace lamconvex
