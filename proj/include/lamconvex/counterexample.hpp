#pragma once

/**
 * @file counterexample.hpp
 * @brief The interleaving sequence theta^n and why it has no pointwise limit.
 *
 * For n >= 1 the thickness is cut into n equal cells (x_i, x_{i+1}),
 * x_i = -1 + 2i/n. On each cell theta^n equals theta1 on the first fraction
 * alpha, (x_i, x_i + 2 alpha / n), and theta2 on the remainder. With
 * y = (x + 1) / 2 and {t} the fractional part:
 *
 *     theta^n(x) = theta1(x)   if 0     < {n y} < alpha
 *     theta^n(x) = theta2(x)   if alpha < {n y} < 1
 *
 * and theta^n(x) is undefined when {n y} is 0 or alpha.
 *
 * The parameters xi[theta^n] converge to alpha xi[theta1] + (1 - alpha) xi[theta2],
 * yet wherever theta1(x) != theta2(x) the values theta^n(x) keep switching:
 * {n y} visits both (0, alpha) and (alpha, 1) infinitely often (density of
 * {n y} for irrational y; for y = p/q, the residues j/q reached through
 * n p - q i = j). Rational points are additionally partition points for
 * every n = k * 2q.
 *
 * Rational inputs go through exact integer arithmetic.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lamconvex/core.hpp"
#include "lamconvex/lamparams.hpp"

namespace lamconvex {

/// num / den in lowest terms with den >= 1.
class Rational {
public:
    Rational(std::int64_t num = 0, std::int64_t den = 1) : num_(num), den_(den) {
        if (den_ == 0) throw Error(ErrorCode::InvalidArgument, "rational with zero denominator");
        if (num_ > kLimit || num_ < -kLimit || den_ > kLimit || den_ < -kLimit) {
            throw Error(ErrorCode::InvalidArgument, "rational component exceeds 2^62");
        }
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const std::int64_t g = std::gcd(num_, den_);
        num_ /= g;
        den_ /= g;
    }

    /// Parses "p/q" or a plain integer "p".
    static Rational parse(std::string_view text) {
        const auto slash = text.find('/');
        try {
            if (slash == std::string_view::npos) {
                std::size_t used = 0;
                const std::string s(text);
                const long long v = std::stoll(s, &used);
                if (used != s.size()) throw std::invalid_argument("trailing characters");
                return {v, 1};
            }
            const std::string ps(text.substr(0, slash));
            const std::string qs(text.substr(slash + 1));
            std::size_t up = 0;
            std::size_t uq = 0;
            const long long p = std::stoll(ps, &up);
            const long long q = std::stoll(qs, &uq);
            if (up != ps.size() || uq != qs.size()) throw std::invalid_argument("trailing characters");
            return {p, q};
        } catch (const std::logic_error&) {
            throw Error(ErrorCode::ParseError, "not a rational 'p/q': '" + std::string(text) + "'");
        }
    }

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }
    double to_double() const noexcept {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }
    std::string to_string() const { return std::to_string(num_) + "/" + std::to_string(den_); }

    friend bool operator==(const Rational&, const Rational&) = default;

private:
    static constexpr std::int64_t kLimit = std::int64_t{1} << 62;
    std::int64_t num_;
    std::int64_t den_;
};

namespace detail {

__extension__ using int128 = __int128;

inline int sign128(int128 v) { return (v > 0) - (v < 0); }

}  // namespace detail

/// Sign of (r - d), exact whenever the scaled operands fit in 128 bits
/// (always the case for denominators below 2^62 and d in [0, 1] with a short
/// binary expansion); otherwise falls back to long double.
inline int compare(const Rational& r, double d) {
    if (!std::isfinite(d)) throw Error(ErrorCode::InvalidArgument, "non-finite comparison bound");
    if (d == 0.0) return (r.num() > 0) - (r.num() < 0);
    int exp = 0;
    const double frac = std::frexp(d, &exp);  // d = frac * 2^exp, 0.5 <= |frac| < 1
    auto mant = static_cast<std::int64_t>(std::ldexp(frac, 53));
    exp -= 53;
    while ((mant & 1) == 0) {
        mant /= 2;
        ++exp;
    }
    // r.num / r.den  vs  mant * 2^exp
    const detail::int128 num = r.num();
    const detail::int128 den = r.den();
    if (exp >= 0 && exp <= 60) {
        return detail::sign128(num - (static_cast<detail::int128>(mant) * den << exp));
    }
    if (exp < 0 && -exp <= 62) {
        return detail::sign128((num << -exp) - static_cast<detail::int128>(mant) * den);
    }
    const long double lhs = static_cast<long double>(r.num()) / static_cast<long double>(r.den());
    return (lhs > d) - (lhs < d);
}

/// y = (x + 1) / 2 for x = p/q.
inline Rational cell_coordinate(const Rational& x) { return {x.num() + x.den(), 2 * x.den()}; }

/// {n y} for y = P/Q as an exact rational (n P mod Q) / Q.
inline Rational fractional_part(const Rational& y, std::int64_t n) {
    const detail::int128 prod = static_cast<detail::int128>(n) * y.num();
    detail::int128 r = prod % y.den();
    if (r < 0) r += y.den();
    return {static_cast<std::int64_t>(r), y.den()};
}

inline double fractional_part(double v) { return v - std::floor(v); }

namespace detail {

inline void check_alpha_open(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw Error(ErrorCode::AlphaOutOfRange, "alpha " + std::to_string(alpha) + " not in (0, 1)");
    }
}

inline void check_n(std::int64_t n) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1, got " + std::to_string(n));
}

/// Appends t restricted to (lo, hi) to a piece list whose last breakpoint is lo.
inline void append_restricted(std::vector<double>& bps, std::vector<double>& angs,
                              const StepLaminate& t, double lo, double hi) {
    std::size_t j = 0;
    while (t.upper(j) <= lo) ++j;
    while (t.upper(j) < hi) {
        append_piece(bps, angs, t.upper(j), t.angles()[j]);
        ++j;
    }
    append_piece(bps, angs, hi, t.angles()[j]);
}

}  // namespace detail

/// theta^n as an explicit step function.
inline StepLaminate theta_n_build(const StepLaminate& t1, const StepLaminate& t2, double alpha,
                                  std::int64_t n) {
    detail::check_alpha_open(alpha);
    detail::check_n(n);
    const auto nd = static_cast<double>(n);
    std::vector<double> bps{-1.0};
    std::vector<double> angs;
    for (std::int64_t i = 0; i < n; ++i) {
        const double x0 = -1.0 + 2.0 * static_cast<double>(i) / nd;
        const double split = x0 + 2.0 * alpha / nd;
        const double x1 = (i + 1 == n) ? 1.0 : -1.0 + 2.0 * static_cast<double>(i + 1) / nd;
        detail::append_restricted(bps, angs, t1, x0, split);
        detail::append_restricted(bps, angs, t2, split, x1);
    }
    bps.back() = 1.0;
    return {std::move(bps), std::move(angs)};
}

/// Fractional parts closer than this to a region boundary count as on it (float path).
inline constexpr double kFractionTol = 1e-12;

/// theta^n(x) through the fractional-part rule; float path.
inline double theta_n_eval(const StepLaminate& t1, const StepLaminate& t2, double alpha,
                           std::int64_t n, double x) {
    detail::check_alpha_open(alpha);
    detail::check_n(n);
    if (!(x > -1.0 && x < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "x must lie in (-1, 1)");
    }
    const double fr = fractional_part(static_cast<double>(n) * (x + 1.0) * 0.5);
    if (fr < kFractionTol || 1.0 - fr < kFractionTol || std::abs(fr - alpha) < kFractionTol) {
        throw Error(ErrorCode::UndefinedAtBreakpoint,
                    "theta^" + std::to_string(n) + " is undefined at x = " + std::to_string(x));
    }
    return fr < alpha ? t1.angle_at(x) : t2.angle_at(x);
}

/// theta^n(x) for rational x; the region test is exact.
inline double theta_n_eval(const StepLaminate& t1, const StepLaminate& t2, double alpha,
                           std::int64_t n, const Rational& x) {
    detail::check_alpha_open(alpha);
    detail::check_n(n);
    if (!(x.num() > -x.den() && x.num() < x.den())) {
        throw Error(ErrorCode::InvalidArgument, "x must lie in (-1, 1)");
    }
    const Rational fr = fractional_part(cell_coordinate(x), n);
    if (fr.num() == 0 || compare(fr, alpha) == 0) {
        throw Error(ErrorCode::UndefinedAtBreakpoint,
                    "theta^" + std::to_string(n) + " is undefined at x = " + x.to_string());
    }
    const double xd = x.to_double();
    return compare(fr, alpha) < 0 ? t1.angle_at(xd) : t2.angle_at(xd);
}

struct BezoutPair {
    std::int64_t n = 0;
    std::int64_t i = 0;
    friend bool operator==(const BezoutPair&, const BezoutPair&) = default;
};

namespace detail {

inline void check_coprime_pair(std::int64_t p, std::int64_t q) {
    if (!(p > 0 && p < q)) {
        throw Error(ErrorCode::InvalidArgument, "need 0 < p < q, got p=" + std::to_string(p) +
                                                    " q=" + std::to_string(q));
    }
    if (std::gcd(p, q) != 1) {
        throw Error(ErrorCode::NotCoprime,
                    std::to_string(p) + " and " + std::to_string(q) + " share a factor");
    }
}

}  // namespace detail

/// Smallest n0 >= 1 with n0 p - q i0 = 1 (extended Euclid).
inline BezoutPair bezout_solve(std::int64_t p, std::int64_t q) {
    detail::check_coprime_pair(p, q);
    // invariant: old_r = old_s * p (mod q)
    std::int64_t old_r = p, r = q;
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        const std::int64_t k = old_r / r;
        old_r = std::exchange(r, old_r - k * r);
        old_s = std::exchange(s, old_s - k * s);
    }
    std::int64_t n0 = old_s % q;
    if (n0 <= 0) n0 += q;
    return {n0, (n0 * p - 1) / q};
}

/// First `count` solutions of n' p - q i' = j with n' >= 1, in increasing n'.
/// Every such solution also satisfies 0 <= i' <= n' - 1.
inline std::vector<BezoutPair> lemma1_solutions(std::int64_t p, std::int64_t q, std::int64_t j,
                                                std::size_t count) {
    detail::check_coprime_pair(p, q);
    if (j < 1 || j > q - 1) {
        throw Error(ErrorCode::JOutOfRange, "j=" + std::to_string(j) + " not in [1, q-1]");
    }
    if (count < 1) throw Error(ErrorCode::InvalidArgument, "count must be >= 1");
    const BezoutPair base = bezout_solve(p, q);
    std::int64_t n = (j * base.n) % q;  // nonzero: j and n0 are units mod q
    std::vector<BezoutPair> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k, n += q) {
        out.push_back({n, (n * p - j) / q});
    }
    return out;
}

/// The family j * (n0 + k q, i0 + k p), k = 0, 1, ..., obtained by scaling the
/// solutions of n p - q i = 1. For k >= 1 these satisfy n' >= j (q - 1).
inline std::vector<BezoutPair> lemma1_constructive(std::int64_t p, std::int64_t q,
                                                   std::int64_t j, std::size_t count) {
    detail::check_coprime_pair(p, q);
    if (j < 1 || j > q - 1) {
        throw Error(ErrorCode::JOutOfRange, "j=" + std::to_string(j) + " not in [1, q-1]");
    }
    const BezoutPair base = bezout_solve(p, q);
    std::vector<BezoutPair> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const auto kk = static_cast<std::int64_t>(k);
        out.push_back({j * (base.n + kk * q), j * (base.i + kk * p)});
    }
    return out;
}

inline constexpr std::int64_t kDefaultSearchCap = 10'000'000;

namespace detail {

inline void check_region(double lo, double hi) {
    if (!(lo >= 0.0 && lo < hi && hi <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "region must satisfy 0 <= lo < hi <= 1");
    }
}

[[noreturn]] inline void cap_exceeded(double lo, double hi, std::int64_t cap,
                                      const std::string& why) {
    throw Error(ErrorCode::SearchCapExceeded, "no n <= " + std::to_string(cap) + " with " +
                                                  std::to_string(lo) + " < {n y} < " +
                                                  std::to_string(hi) + why);
}

}  // namespace detail

/// Smallest n in [n_min, cap] with lo < {n y} < hi, exact for rational y.
/// {n y} is periodic in n with period den(y); once a full period has been
/// scanned without a hit the search stops early with SearchCapExceeded.
inline std::int64_t find_n_in_region(const Rational& y, double lo, double hi, std::int64_t n_min,
                                     std::int64_t cap = kDefaultSearchCap) {
    detail::check_region(lo, hi);
    const std::int64_t start = std::max<std::int64_t>(n_min, 1);
    const std::int64_t q = y.den();
    detail::int128 r = (static_cast<detail::int128>(start) * y.num()) % q;
    if (r < 0) r += q;
    const std::int64_t step = ((y.num() % q) + q) % q;
    for (std::int64_t n = start; n <= cap; ++n) {
        const Rational fr(static_cast<std::int64_t>(r), q);
        if (compare(fr, lo) > 0 && compare(fr, hi) < 0) return n;
        if (n - start + 1 >= q) {
            detail::cap_exceeded(lo, hi, cap, " (every residue mod " + std::to_string(q) +
                                                  " checked)");
        }
        r += step;
        if (r >= q) r -= q;
    }
    detail::cap_exceeded(lo, hi, cap, "");
}

/// Float-path search; boundaries are excluded with kFractionTol.
inline std::int64_t find_n_in_region(double y, double lo, double hi, std::int64_t n_min,
                                     std::int64_t cap = kDefaultSearchCap) {
    detail::check_region(lo, hi);
    if (!std::isfinite(y)) throw Error(ErrorCode::InvalidArgument, "y must be finite");
    for (std::int64_t n = std::max<std::int64_t>(n_min, 1); n <= cap; ++n) {
        const double fr = fractional_part(static_cast<double>(n) * y);
        if (fr > lo + kFractionTol && fr < hi - kFractionTol) return n;
    }
    detail::cap_exceeded(lo, hi, cap, "");
}

struct WitnessEntry {
    std::int64_t n = 0;
    double fraction = 0.0;               ///< {n y}
    std::optional<Rational> exact;       ///< {n y} when y is rational
};

struct WitnessTable {
    double x = 0.0;
    std::optional<Rational> x_exact;
    double alpha = 0.0;
    std::vector<WitnessEntry> below;     ///< 0 < {n y} < alpha: theta^n(x) = theta1(x)
    std::vector<WitnessEntry> above;     ///< alpha < {n y} < 1: theta^n(x) = theta2(x)
    std::vector<std::int64_t> undefined_at;  ///< n with x a cell boundary x_i^n
    /// Set when the laminates are known; false means the oscillation is vacuous at x.
    std::optional<bool> values_differ;
};

namespace detail {

inline void check_witness_args(double alpha, std::size_t count) {
    check_alpha_open(alpha);
    if (count < 1) throw Error(ErrorCode::InvalidArgument, "count must be >= 1");
}

}  // namespace detail

/// Witnesses for rational x = p/q: `count` indices in each region plus the
/// first `count` indices n = k * 2q at which x is a partition point.
inline WitnessTable oscillation_witness(double alpha, const Rational& x, std::size_t count,
                                        std::int64_t cap = kDefaultSearchCap) {
    detail::check_witness_args(alpha, count);
    if (!(x.num() > -x.den() && x.num() < x.den())) {
        throw Error(ErrorCode::InvalidArgument, "x must lie in (-1, 1)");
    }
    WitnessTable w;
    w.x = x.to_double();
    w.x_exact = x;
    w.alpha = alpha;
    const Rational y = cell_coordinate(x);
    auto collect = [&](double lo, double hi, std::vector<WitnessEntry>& into) {
        std::int64_t n = 0;
        for (std::size_t k = 0; k < count; ++k) {
            n = find_n_in_region(y, lo, hi, n + 1, cap);
            const Rational fr = fractional_part(y, n);
            into.push_back({n, fr.to_double(), fr});
        }
    };
    collect(0.0, alpha, w.below);
    collect(alpha, 1.0, w.above);
    for (std::size_t k = 1; k <= count; ++k) {
        w.undefined_at.push_back(static_cast<std::int64_t>(k) * 2 * x.den());
    }
    return w;
}

/// Float-path witnesses (x treated as irrational: no partition-point list).
inline WitnessTable oscillation_witness(double alpha, double x, std::size_t count,
                                        std::int64_t cap = kDefaultSearchCap) {
    detail::check_witness_args(alpha, count);
    if (!(x > -1.0 && x < 1.0)) throw Error(ErrorCode::InvalidArgument, "x must lie in (-1, 1)");
    WitnessTable w;
    w.x = x;
    w.alpha = alpha;
    const double y = 0.5 * (x + 1.0);
    auto collect = [&](double lo, double hi, std::vector<WitnessEntry>& into) {
        std::int64_t n = 0;
        for (std::size_t k = 0; k < count; ++k) {
            n = find_n_in_region(y, lo, hi, n + 1, cap);
            into.push_back({n, fractional_part(static_cast<double>(n) * y), std::nullopt});
        }
    };
    collect(0.0, alpha, w.below);
    collect(alpha, 1.0, w.above);
    return w;
}

/// Same tables, annotated with whether theta1(x) != theta2(x).
template <typename X>
WitnessTable oscillation_witness(const StepLaminate& t1, const StepLaminate& t2, double alpha,
                                 const X& x, std::size_t count,
                                 std::int64_t cap = kDefaultSearchCap) {
    WitnessTable w = oscillation_witness(alpha, x, count, cap);
    w.values_differ = std::abs(t1.angle_at(w.x) - t2.angle_at(w.x)) >= kAngleTol;
    return w;
}

/// Which convex combination the theta^n parameters are compared against.
enum class LimitOrientation {
    AsConstructed,  ///< alpha xi[t1] + (1 - alpha) xi[t2]: theta1 fills fraction alpha of each cell
    Swapped,        ///< (1 - alpha) xi[t1] + alpha xi[t2]
};

struct ConvergenceRow {
    std::int64_t n = 0;
    LamParams params;
    std::array<double, 12> distance{};
    double max_distance = 0.0;
};

inline LamParams theta_n_limit(const StepLaminate& t1, const StepLaminate& t2, double alpha,
                               LimitOrientation orientation = LimitOrientation::AsConstructed) {
    const double w = orientation == LimitOrientation::AsConstructed ? 1.0 - alpha : alpha;
    return mix(lamination_parameters(t1), lamination_parameters(t2), w);
}

inline std::vector<ConvergenceRow> convergence_table(
    const StepLaminate& t1, const StepLaminate& t2, double alpha,
    const std::vector<std::int64_t>& n_list,
    LimitOrientation orientation = LimitOrientation::AsConstructed) {
    detail::check_alpha_open(alpha);
    const LamParams limit = theta_n_limit(t1, t2, alpha, orientation);
    std::vector<ConvergenceRow> rows;
    rows.reserve(n_list.size());
    for (std::int64_t n : n_list) {
        ConvergenceRow row;
        row.n = n;
        row.params = lamination_parameters(theta_n_build(t1, t2, alpha, n));
        row.distance = abs_diff(row.params, limit);
        row.max_distance = *std::max_element(row.distance.begin(), row.distance.end());
        rows.push_back(row);
    }
    return rows;
}

}  // namespace lamconvex
