#pragma once

/**
 * @file convexity.hpp
 * @brief Constructive convex combination of two step-function layups.
 *
 * Given step functions theta1, theta2 and a weight alpha in [0, 1], build a
 * step function theta whose lamination parameters are exactly
 * (1 - alpha) xi[theta1] + alpha xi[theta2].
 *
 * On each interval (A, B) of the common refinement, theta1 is placed on a set
 * E = (a, b) u (c, d) with
 *
 *     int_E z^j dz = w int_A^B z^j dz,   j = 0, 1, 2,   w = 1 - alpha,
 *
 * and theta2 on the rest of (A, B). Because every lamination parameter is a
 * linear combination of such z^j moments, matching the three moments on each
 * interval matches every parameter (indeed any integral of f(theta) z^j).
 *
 * The split has a closed form. With equal sub-lengths e = b - a = d - c and
 * centres X < Y:
 *
 *     e    = w (B - A) / 2
 *     Y-X  = beta = (e / sqrt 3) sqrt(4 / w^2 - 1) = ((B - A) / 2) sqrt((4 - w^2) / 3)
 *     X, Y = (A + B -/+ beta) / 2
 *     a, b = X -/+ e/2,   c, d = Y -/+ e/2
 *
 * and A < a < b < c < d < B holds for every w in (0, 1) because
 * w^2 - 3w + 2 = (1 - w)(2 - w) > 0.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "lamconvex/core.hpp"
#include "lamconvex/lamparams.hpp"

namespace lamconvex {

struct IntervalSplit {
    double A = 0.0;
    double B = 0.0;
    double alpha = 0.0;  ///< fraction of every moment carried by E
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
    double e = 0.0;     ///< b - a == d - c
    double beta = 0.0;  ///< Y - X
};

inline IntervalSplit lemma3_split(double A, double B, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw Error(ErrorCode::AlphaOutOfRange,
                    "split weight " + std::to_string(alpha) + " not in (0, 1)");
    }
    if (!std::isfinite(A) || !std::isfinite(B) || !(A < B)) {
        throw Error(ErrorCode::DegenerateInterval, "split interval must satisfy A < B");
    }
    IntervalSplit s;
    s.A = A;
    s.B = B;
    s.alpha = alpha;
    const double half = 0.5 * (B - A);
    const double mid = 0.5 * (A + B);
    s.e = alpha * half;
    // (e/sqrt3) sqrt(4/alpha^2 - 1) with e = alpha (B-A)/2; no division by alpha
    s.beta = half * std::sqrt((4.0 - alpha * alpha) / 3.0);
    const double X = mid - 0.5 * s.beta;
    const double Y = mid + 0.5 * s.beta;
    const double he = 0.5 * s.e;
    s.a = X - he;
    s.b = X + he;
    s.c = Y - he;
    s.d = Y + he;
    return s;
}

/// Moments of E = (a,b) u (c,d) and of its complement (A,a) u (b,c) u (d,B).
inline std::pair<MomentTriple, MomentTriple> split_moments(const IntervalSplit& s) {
    const MomentTriple inside = moments(s.a, s.b) + moments(s.c, s.d);
    const MomentTriple outside = moments(s.A, s.a) + moments(s.b, s.c) + moments(s.d, s.B);
    return {inside, outside};
}

/// Step function with xi = (1 - alpha) xi[t1] + alpha xi[t2]. Returns a copy
/// of t1 (t2) at alpha = 0 (1). Each refinement interval yields at most five
/// pieces; intervals where both inputs agree are emitted unsplit.
inline StepLaminate convex_combine(const StepLaminate& t1, const StepLaminate& t2, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw Error(ErrorCode::AlphaOutOfRange,
                    "alpha " + std::to_string(alpha) + " not in [0, 1]");
    }
    if (alpha == 0.0) return t1;
    if (alpha == 1.0) return t2;

    const RefinedPair ref = refine(t1, t2);
    std::vector<double> bps{-1.0};
    std::vector<double> angs;
    bps.reserve(5 * ref.size() + 1);
    angs.reserve(5 * ref.size());

    for (std::size_t i = 0; i < ref.size(); ++i) {
        const double A = ref.breakpoints[i];
        const double B = ref.breakpoints[i + 1];
        const double th1 = ref.angles1[i];
        const double th2 = ref.angles2[i];
        if (std::abs(th1 - th2) < kAngleTol) {
            detail::append_piece(bps, angs, B, th1);
            continue;
        }
        // theta1 occupies E, which carries the fraction (1 - alpha) of each moment
        const IntervalSplit s = lemma3_split(A, B, 1.0 - alpha);
        detail::append_piece(bps, angs, s.a, th2);
        detail::append_piece(bps, angs, s.b, th1);
        detail::append_piece(bps, angs, s.c, th2);
        detail::append_piece(bps, angs, s.d, th1);
        detail::append_piece(bps, angs, B, th2);
    }
    bps.back() = 1.0;
    return {std::move(bps), std::move(angs)};
}

struct CombinationReport {
    std::array<double, 12> residuals{};
    double max_residual = 0.0;
    double tolerance = 1e-12;
    bool pass = false;
};

/// Residuals |xi_k[result] - ((1 - alpha) xi_k[t1] + alpha xi_k[t2])|.
inline CombinationReport verify_combination(const StepLaminate& t1, const StepLaminate& t2,
                                            double alpha, const StepLaminate& result,
                                            double tolerance = 1e-12) {
    CombinationReport r;
    r.tolerance = tolerance;
    const LamParams target =
        mix(lamination_parameters(t1), lamination_parameters(t2), alpha);
    r.residuals = abs_diff(lamination_parameters(result), target);
    r.max_residual = *std::ranges::max_element(r.residuals);
    r.pass = r.max_residual <= tolerance;
    return r;
}

}  // namespace lamconvex
