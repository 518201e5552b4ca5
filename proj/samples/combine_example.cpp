// Blend a cross-ply with a quasi-isotropic layup and check the result.

#include <cstdio>

#include "lamconvex/lamconvex.hpp"

int main() {
    using namespace lamconvex;
    constexpr double deg = 3.14159265358979323846 / 180.0;

    const StepLaminate cross({-1.0, 0.0, 1.0}, {0.0, 90.0 * deg});
    const StepLaminate quasi({-1.0, -0.5, 0.0, 0.5, 1.0},
                             {0.0, 45.0 * deg, -45.0 * deg, 90.0 * deg});

    const double alpha = 0.3;
    const StepLaminate blend = convex_combine(cross, quasi, alpha);
    const CombinationReport check = verify_combination(cross, quasi, alpha, blend);

    std::printf("pieces: %zu\n", blend.size());
    const auto xi = lamination_parameters(blend).flat();
    for (std::size_t k = 0; k < xi.size(); ++k) {
        std::printf("%s = % .15f  (residual %.2e)\n", kParamNames[k].data(), xi[k],
                    check.residuals[k]);
    }
    return check.pass ? 0 : 1;
}
