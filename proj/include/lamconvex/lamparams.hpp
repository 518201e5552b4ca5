#pragma once

/**
 * @file lamparams.hpp
 * @brief The 12 lamination parameters of a step-function layup.
 *
 *   xiA_k = 1/2 int_{-1}^{1} f_k(theta(z))       dz
 *   xiB_k =     int_{-1}^{1} f_k(theta(z)) z     dz
 *   xiD_k = 3/2 int_{-1}^{1} f_k(theta(z)) z^2   dz
 *
 * with f = [cos 2theta, cos 4theta, sin 2theta, sin 4theta]. For a step
 * function every integral collapses to  sum_i f(theta_i) * m_j(a_i, a_{i+1}),
 * which is what lamination_parameters() evaluates. quadrature_oracle() is an
 * independent midpoint-rule approximation used to cross-check it.
 */

#include <array>
#include <cmath>
#include <cstddef>
#include <string_view>

#include "lamconvex/core.hpp"

namespace lamconvex {

struct LamParams {
    std::array<double, 4> xiA{};
    std::array<double, 4> xiB{};
    std::array<double, 4> xiD{};

    /// Flattened as [xiA1..4, xiB1..4, xiD1..4].
    std::array<double, 12> flat() const {
        std::array<double, 12> out{};
        for (std::size_t k = 0; k < 4; ++k) {
            out[k] = xiA[k];
            out[4 + k] = xiB[k];
            out[8 + k] = xiD[k];
        }
        return out;
    }

    static LamParams from_flat(const std::array<double, 12>& v) {
        LamParams p;
        for (std::size_t k = 0; k < 4; ++k) {
            p.xiA[k] = v[k];
            p.xiB[k] = v[4 + k];
            p.xiD[k] = v[8 + k];
        }
        return p;
    }
};

inline constexpr std::array<std::string_view, 12> kParamNames{
    "xiA1", "xiA2", "xiA3", "xiA4", "xiB1", "xiB2", "xiB3", "xiB4", "xiD1", "xiD2", "xiD3", "xiD4"};

/// Normalization applied to the z^0, z^1, z^2 weighted integrals.
inline constexpr std::array<double, 3> kWeightPrefactor{0.5, 1.0, 1.5};

/// [cos 2theta, cos 4theta, sin 2theta, sin 4theta]
inline std::array<double, 4> trig_family(double theta) {
    return {std::cos(2.0 * theta), std::cos(4.0 * theta), std::sin(2.0 * theta),
            std::sin(4.0 * theta)};
}

/// Exact  (int f(theta) dz, int f(theta) z dz, int f(theta) z^2 dz)  for any scalar f.
template <typename F>
MomentTriple weighted_moments(const StepLaminate& t, F&& f) {
    MomentTriple acc;
    for (std::size_t i = 0; i < t.size(); ++i) {
        acc += static_cast<double>(f(t.angles()[i])) * moments(t.lower(i), t.upper(i));
    }
    return acc;
}

inline LamParams lamination_parameters(const StepLaminate& t) {
    LamParams p;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const MomentTriple m = moments(t.lower(i), t.upper(i));
        const auto f = trig_family(t.angles()[i]);
        for (std::size_t k = 0; k < 4; ++k) {
            p.xiA[k] += f[k] * m.m0;
            p.xiB[k] += f[k] * m.m1;
            p.xiD[k] += f[k] * m.m2;
        }
    }
    for (std::size_t k = 0; k < 4; ++k) {
        p.xiA[k] *= kWeightPrefactor[0];
        p.xiB[k] *= kWeightPrefactor[1];
        p.xiD[k] *= kWeightPrefactor[2];
    }
    return p;
}

/// Composite midpoint rule on each ply separately; theta is sampled at every
/// node through StepLaminate::angle_at, never through the ply table directly.
inline LamParams quadrature_oracle(const StepLaminate& t, std::size_t samples_per_interval) {
    if (samples_per_interval < 1) {
        throw Error(ErrorCode::InvalidArgument, "samples_per_interval must be >= 1");
    }
    std::array<double, 12> acc{};
    double cached_theta = std::nan("");
    std::array<double, 4> f{};
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double A = t.lower(i);
        const double h = (t.upper(i) - A) / static_cast<double>(samples_per_interval);
        std::array<double, 12> ply{};
        for (std::size_t s = 0; s < samples_per_interval; ++s) {
            const double z = A + (static_cast<double>(s) + 0.5) * h;
            const double theta = t.angle_at(z);
            if (theta != cached_theta) {
                f = trig_family(theta);
                cached_theta = theta;
            }
            for (std::size_t k = 0; k < 4; ++k) {
                ply[k] += f[k];
                ply[4 + k] += f[k] * z;
                ply[8 + k] += f[k] * z * z;
            }
        }
        for (std::size_t c = 0; c < 12; ++c) acc[c] += h * ply[c];
    }
    for (std::size_t k = 0; k < 4; ++k) {
        acc[k] *= kWeightPrefactor[0];
        acc[4 + k] *= kWeightPrefactor[1];
        acc[8 + k] *= kWeightPrefactor[2];
    }
    return LamParams::from_flat(acc);
}

/// (1 - w) * a + w * b, componentwise.
inline LamParams mix(const LamParams& a, const LamParams& b, double w) {
    const auto fa = a.flat();
    const auto fb = b.flat();
    std::array<double, 12> out{};
    for (std::size_t c = 0; c < 12; ++c) out[c] = (1.0 - w) * fa[c] + w * fb[c];
    return LamParams::from_flat(out);
}

/// Componentwise |a - b|.
inline std::array<double, 12> abs_diff(const LamParams& a, const LamParams& b) {
    const auto fa = a.flat();
    const auto fb = b.flat();
    std::array<double, 12> out{};
    for (std::size_t c = 0; c < 12; ++c) out[c] = std::abs(fa[c] - fb[c]);
    return out;
}

}  // namespace lamconvex
