#include <gtest/gtest.h>

#include <random>

#include "lamconvex/lamparams.hpp"
#include "test_support.hpp"

using namespace lamconvex;
using lamconvex::testing::kPi;

namespace {

void expect_params(const LamParams& p, std::array<double, 4> a, std::array<double, 4> b,
                   std::array<double, 4> d, double tol) {
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_NEAR(p.xiA[k], a[k], tol) << "xiA" << k + 1;
        EXPECT_NEAR(p.xiB[k], b[k], tol) << "xiB" << k + 1;
        EXPECT_NEAR(p.xiD[k], d[k], tol) << "xiD" << k + 1;
    }
}

double max_diff(const LamParams& a, const LamParams& b) {
    const auto d = abs_diff(a, b);
    return *std::max_element(d.begin(), d.end());
}

}  // namespace

TEST(LaminationParameters, ZeroDegreePly) {
    expect_params(lamination_parameters(StepLaminate::uniform(0.0)), {1, 1, 0, 0}, {0, 0, 0, 0},
                  {1, 1, 0, 0}, 1e-15);
}

TEST(LaminationParameters, FortyFiveDegreePly) {
    expect_params(lamination_parameters(StepLaminate::uniform(kPi / 4)), {0, -1, 1, 0},
                  {0, 0, 0, 0}, {0, -1, 1, 0}, 1e-15);
}

TEST(LaminationParameters, UnsymmetricCrossPly) {
    // hand sum over (-1,0) at 0 and (0,1) at pi/2
    const StepLaminate t({-1.0, 0.0, 1.0}, {0.0, kPi / 2});
    const auto exact = lamination_parameters(t);
    expect_params(exact, {0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 1, 0, 0}, 1e-15);
    EXPECT_LE(max_diff(exact, quadrature_oracle(t, 100'000)), 1e-9);
}

TEST(QuadratureOracle, ConstantLayupIsExactForInPlaneBlock) {
    for (std::size_t samples : {1u, 3u, 17u}) {
        const auto p = quadrature_oracle(StepLaminate::uniform(0.0), samples);
        EXPECT_DOUBLE_EQ(p.xiA[0], 1.0);
        EXPECT_DOUBLE_EQ(p.xiA[1], 1.0);
        EXPECT_DOUBLE_EQ(p.xiA[2], 0.0);
        EXPECT_DOUBLE_EQ(p.xiA[3], 0.0);
    }
    const auto q = quadrature_oracle(StepLaminate::uniform(kPi / 4), 1000);
    EXPECT_LE(max_diff(q, lamination_parameters(StepLaminate::uniform(kPi / 4))), 1e-6);
}

TEST(QuadratureOracle, RejectsZeroSamples) {
    EXPECT_THROW(quadrature_oracle(StepLaminate::uniform(0.0), 0), Error);
}

TEST(QuadratureOracle, MidpointErrorShrinksQuadratically) {
    const StepLaminate t({-1.0, -0.3, 0.4, 1.0}, {0.2, -1.1, 2.5});
    const auto exact = lamination_parameters(t);
    const double e1 = max_diff(exact, quadrature_oracle(t, 100));
    const double e2 = max_diff(exact, quadrature_oracle(t, 200));
    EXPECT_GT(e1, 0.0);
    EXPECT_NEAR(e1 / e2, 4.0, 0.05);
}

TEST(LaminationParameters, RandomLayupsBoundedAndMatchOracle) {
    std::mt19937_64 rng(2024);
    double worst_oracle = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto t = lamconvex::testing::random_laminate(rng, 16);
        const auto p = lamination_parameters(t);
        for (double v : p.flat()) {
            ASSERT_LE(std::abs(v), 1.0 + 1e-12);
        }
        worst_oracle = std::max(worst_oracle, max_diff(p, quadrature_oracle(t, 100'000)));
    }
    EXPECT_LE(worst_oracle, 1e-8);
}

TEST(LaminationParameters, InvariantUnderHalfTurn) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        const auto t = lamconvex::testing::random_laminate(rng, 16);
        std::vector<double> shifted(t.angles().begin(), t.angles().end());
        for (auto& a : shifted) a += kPi;
        const StepLaminate s(std::vector<double>(t.breakpoints().begin(), t.breakpoints().end()),
                             shifted);
        EXPECT_LE(max_diff(lamination_parameters(t), lamination_parameters(s)), 1e-12);
    }
}

TEST(LaminationParameters, MirrorNegatesCouplingOnly) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 500; ++trial) {
        const auto t = lamconvex::testing::random_laminate(rng, 16);
        const auto p = lamination_parameters(t);
        const auto m = lamination_parameters(mirrored(t));
        for (std::size_t k = 0; k < 4; ++k) {
            EXPECT_NEAR(m.xiA[k], p.xiA[k], 1e-12);
            EXPECT_NEAR(m.xiB[k], -p.xiB[k], 1e-12);
            EXPECT_NEAR(m.xiD[k], p.xiD[k], 1e-12);
        }
    }
}

TEST(WeightedMoments, ReproducesTrigFamily) {
    std::mt19937_64 rng(9);
    const auto t = lamconvex::testing::random_laminate(rng, 10);
    const auto p = lamination_parameters(t);
    const auto m = weighted_moments(t, [](double th) { return std::sin(4.0 * th); });
    EXPECT_NEAR(0.5 * m.m0, p.xiA[3], 1e-15);
    EXPECT_NEAR(m.m1, p.xiB[3], 1e-15);
    EXPECT_NEAR(1.5 * m.m2, p.xiD[3], 1e-15);
}

TEST(LamParams, FlatRoundTripAndNames) {
    LamParams p;
    p.xiA = {1, 2, 3, 4};
    p.xiB = {5, 6, 7, 8};
    p.xiD = {9, 10, 11, 12};
    const auto f = p.flat();
    EXPECT_EQ(f[4], 5.0);
    EXPECT_EQ(kParamNames[4], "xiB1");
    const auto back = LamParams::from_flat(f);
    EXPECT_EQ(back.xiD, p.xiD);
}
