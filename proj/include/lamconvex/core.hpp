#pragma once

/**
 * @file core.hpp
 * @brief Step-function layups on the normalized thickness coordinate [-1, 1].
 *
 * A StepLaminate is a piecewise-constant layup angle theta(z): breakpoints
 * a_0 = -1 < a_1 < ... < a_N = 1 and one angle (radians) per open interval
 * (a_i, a_{i+1}). Values at breakpoints are undefined.
 *
 * Also provides the interval moments  m_j = int_A^B z^j dz  (j = 0, 1, 2)
 * and the common refinement of two step functions.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lamconvex/error.hpp"

namespace lamconvex {

/// Breakpoints closer than this are the same point.
inline constexpr double kBreakpointTol = 1e-12;

/// Adjacent angles closer than this (radians) are the same angle.
inline constexpr double kAngleTol = 1e-12;

struct MomentTriple {
    double m0 = 0.0;
    double m1 = 0.0;
    double m2 = 0.0;

    double operator[](std::size_t j) const { return j == 0 ? m0 : (j == 1 ? m1 : m2); }

    MomentTriple& operator+=(const MomentTriple& o) {
        m0 += o.m0;
        m1 += o.m1;
        m2 += o.m2;
        return *this;
    }
    friend MomentTriple operator+(MomentTriple a, const MomentTriple& b) { return a += b; }
    friend MomentTriple operator-(const MomentTriple& a, const MomentTriple& b) {
        return {a.m0 - b.m0, a.m1 - b.m1, a.m2 - b.m2};
    }
    friend MomentTriple operator*(double s, const MomentTriple& a) {
        return {s * a.m0, s * a.m1, s * a.m2};
    }
};

/// (int_A^B dz, int_A^B z dz, int_A^B z^2 dz), evaluated in factored form.
inline MomentTriple moments(double A, double B) {
    if (!std::isfinite(A) || !std::isfinite(B)) {
        throw Error(ErrorCode::DegenerateInterval, "interval endpoints must be finite");
    }
    if (!(A < B)) {
        throw Error(ErrorCode::DegenerateInterval,
                    "interval (" + std::to_string(A) + ", " + std::to_string(B) + ") is empty");
    }
    const double w = B - A;
    return {w, 0.5 * w * (A + B), w * (A * A + A * B + B * B) / 3.0};
}

class StepLaminate {
public:
    /// Validates every invariant; throws Error(InvariantViolation) naming the field and index.
    StepLaminate(std::vector<double> breakpoints, std::vector<double> angles)
        : breakpoints_(std::move(breakpoints)), angles_(std::move(angles)) {
        validate();
    }

    /// One ply of constant angle over the whole thickness.
    static StepLaminate uniform(double angle) { return StepLaminate({-1.0, 1.0}, {angle}); }

    std::span<const double> breakpoints() const noexcept { return breakpoints_; }
    std::span<const double> angles() const noexcept { return angles_; }
    std::size_t size() const noexcept { return angles_.size(); }

    double lower(std::size_t i) const { return breakpoints_.at(i); }
    double upper(std::size_t i) const { return breakpoints_.at(i + 1); }

    /// Index of the interval containing z. Throws if z is (within tolerance) a breakpoint
    /// or lies outside (-1, 1).
    std::size_t interval_index(double z) const {
        if (!(z > -1.0 && z < 1.0)) {
            throw Error(ErrorCode::InvalidArgument,
                        "evaluation point " + std::to_string(z) + " outside (-1, 1)");
        }
        auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), z);
        const auto hi = static_cast<std::size_t>(it - breakpoints_.begin());
        const std::size_t i = hi - 1;
        if (z - breakpoints_[i] < kBreakpointTol || breakpoints_[hi] - z < kBreakpointTol) {
            throw Error(ErrorCode::UndefinedAtBreakpoint,
                        "layup angle is undefined at breakpoint z = " + std::to_string(z));
        }
        return i;
    }

    double angle_at(double z) const { return angles_[interval_index(z)]; }

    friend bool operator==(const StepLaminate&, const StepLaminate&) = default;

private:
    void validate() const {
        if (breakpoints_.size() < 2) {
            throw Error(ErrorCode::InvariantViolation, "breakpoints: need at least 2 entries");
        }
        if (angles_.size() + 1 != breakpoints_.size()) {
            throw Error(ErrorCode::InvariantViolation,
                        "angles: expected " + std::to_string(breakpoints_.size() - 1) +
                            " entries (one per interval), got " + std::to_string(angles_.size()));
        }
        for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
            if (!std::isfinite(breakpoints_[i])) {
                throw Error(ErrorCode::InvariantViolation,
                            "breakpoints[" + std::to_string(i) + "] is not finite");
            }
            if (i > 0 && !(breakpoints_[i] > breakpoints_[i - 1])) {
                throw Error(ErrorCode::InvariantViolation,
                            "breakpoints[" + std::to_string(i) + "] is not strictly increasing");
            }
        }
        if (breakpoints_.front() != -1.0) {
            throw Error(ErrorCode::InvariantViolation, "breakpoints[0] must be -1");
        }
        if (breakpoints_.back() != 1.0) {
            throw Error(ErrorCode::InvariantViolation,
                        "breakpoints[" + std::to_string(breakpoints_.size() - 1) + "] must be 1");
        }
        for (std::size_t i = 0; i < angles_.size(); ++i) {
            if (!std::isfinite(angles_[i])) {
                throw Error(ErrorCode::InvariantViolation,
                            "angles[" + std::to_string(i) + "] is not finite");
            }
        }
    }

    std::vector<double> breakpoints_;
    std::vector<double> angles_;
};

/// Two step functions on a shared partition.
struct RefinedPair {
    std::vector<double> breakpoints;
    std::vector<double> angles1;
    std::vector<double> angles2;

    std::size_t size() const noexcept { return angles1.size(); }
    StepLaminate first() const { return {breakpoints, angles1}; }
    StepLaminate second() const { return {breakpoints, angles2}; }
};

/// Common refinement: union of both breakpoint sets, with points closer than
/// kBreakpointTol merged (the smaller is kept; the endpoints stay exactly -1 and 1).
inline RefinedPair refine(const StepLaminate& t1, const StepLaminate& t2) {
    std::vector<double> all;
    all.reserve(t1.breakpoints().size() + t2.breakpoints().size());
    std::ranges::merge(t1.breakpoints(), t2.breakpoints(), std::back_inserter(all));

    RefinedPair out;
    out.breakpoints.reserve(all.size());
    out.breakpoints.push_back(-1.0);
    for (double z : all) {
        if (z - out.breakpoints.back() >= kBreakpointTol) {
            out.breakpoints.push_back(z);
        }
    }
    // 1.0 may have been swallowed by a point within tolerance below it
    out.breakpoints.back() = 1.0;

    const std::size_t n = out.breakpoints.size() - 1;
    out.angles1.reserve(n);
    out.angles2.reserve(n);
    // both inputs are constant on every refinement interval, so the midpoint
    // of the interval identifies the ply of each input
    std::size_t i1 = 0;
    std::size_t i2 = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double mid = 0.5 * (out.breakpoints[k] + out.breakpoints[k + 1]);
        while (t1.upper(i1) <= mid) ++i1;
        while (t2.upper(i2) <= mid) ++i2;
        out.angles1.push_back(t1.angles()[i1]);
        out.angles2.push_back(t2.angles()[i2]);
    }
    return out;
}

namespace detail {

/// Appends a piece ending at `hi`. Pieces narrower than kBreakpointTol are
/// absorbed into the previous piece (or, at the very start, into the next).
inline void append_piece(std::vector<double>& bps, std::vector<double>& angs, double hi,
                         double angle) {
    if (hi - bps.back() < kBreakpointTol) {
        if (!angs.empty()) bps.back() = hi;
        return;
    }
    bps.push_back(hi);
    angs.push_back(angle);
}

}  // namespace detail

/// Affine map of [raw.front(), raw.back()] onto [-1, 1]; endpoints land exactly.
inline std::vector<double> normalize_breakpoints(std::span<const double> raw) {
    if (raw.size() < 2) {
        throw Error(ErrorCode::InvariantViolation, "breakpoints: need at least 2 entries");
    }
    const double lo = raw.front();
    const double hi = raw.back();
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
        throw Error(ErrorCode::DegenerateInterval, "breakpoint range is empty or not finite");
    }
    std::vector<double> out(raw.size());
    const double scale = 2.0 / (hi - lo);
    for (std::size_t i = 0; i < raw.size(); ++i) {
        out[i] = (raw[i] - lo) * scale - 1.0;
    }
    out.front() = -1.0;
    out.back() = 1.0;
    return out;
}

/// Merges adjacent intervals whose angles differ by less than `tol` radians.
inline StepLaminate simplify(const StepLaminate& t, double tol = kAngleTol) {
    std::vector<double> bps{-1.0};
    std::vector<double> angs{t.angles()[0]};
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (std::abs(t.angles()[i] - angs.back()) < tol) continue;
        bps.push_back(t.lower(i));
        angs.push_back(t.angles()[i]);
    }
    bps.push_back(1.0);
    return {std::move(bps), std::move(angs)};
}

/// theta(z) -> theta(-z): the stacking sequence read from the other face.
inline StepLaminate mirrored(const StepLaminate& t) {
    const auto b = t.breakpoints();
    std::vector<double> bps(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) bps[i] = -b[b.size() - 1 - i];
    std::vector<double> angs(t.angles().rbegin(), t.angles().rend());
    return {std::move(bps), std::move(angs)};
}

}  // namespace lamconvex
