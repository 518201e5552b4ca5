// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <nlohmann/json.hpp>

#include "lamconvex/lamconvex.hpp"
#include "test_support.hpp"

using namespace lamconvex;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

/// Largest |xi| seen by any criterion; checked last.
double g_max_abs_param = 0.0;

void track(const LamParams& p) {
    for (double v : p.flat()) g_max_abs_param = std::max(g_max_abs_param, std::abs(v));
}

LamParams tracked(const StepLaminate& t) {
    const LamParams p = lamination_parameters(t);
    track(p);
    return p;
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    std::string name;
    double time_limit_s;
    std::function<Outcome()> run;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double max_of(const std::array<double, 12>& a) { return *std::max_element(a.begin(), a.end()); }

StepLaminate random_degrees_laminate(std::mt19937_64& rng, std::size_t max_plies) {
    return lamconvex::testing::random_laminate(rng, max_plies, deg_to_rad(-180.0),
                                               deg_to_rad(180.0));
}

Outcome convexity_identity() {
    std::mt19937_64 rng(20240901);
    double worst = 0.0;
    std::size_t combos = 0;
    for (int pair = 0; pair < 200; ++pair) {
        const auto t1 = random_degrees_laminate(rng, 8);
        const auto t2 = random_degrees_laminate(rng, 8);
        track(lamination_parameters(t1));
        track(lamination_parameters(t2));
        for (double alpha : {0.1, 0.25, 0.5, 0.75, 0.9}) {
            const auto t = convex_combine(t1, t2, alpha);
            const auto r = verify_combination(t1, t2, alpha, t, 1e-12);
            tracked(t);
            worst = std::max(worst, r.max_residual);
            ++combos;
        }
    }
    return {worst <= 1e-12, std::to_string(combos) + " combinations, max residual " +
                                fmt("%.3e", worst) + " (tol 1e-12)"};
}

Outcome split_moment_matching() {
    std::mt19937_64 rng(20240902);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> w(0.001, 0.999);
    double worst = 0.0;
    double worst_len = 0.0;
    bool ordered = true;
    int trials = 0;
    while (trials < 1000) {
        double A = u(rng);
        double B = u(rng);
        if (A == B) continue;
        if (A > B) std::swap(A, B);
        const double alpha = w(rng);
        const auto s = lemma3_split(A, B, alpha);
        ordered = ordered && A < s.a && s.a < s.b && s.b < s.c && s.c < s.d && s.d < B;
        worst_len = std::max(worst_len, std::abs((s.b - s.a) - (s.d - s.c)));
        const auto [inside, outside] = split_moments(s);
        const auto whole = moments(A, B);
        for (int j = 0; j < 3; ++j) {
            worst = std::max(worst, std::abs(inside[j] - alpha * whole[j]) /
                                        std::max(1.0, std::abs(whole[j])));
        }
        ++trials;
    }
    return {worst <= 1e-12 && ordered && worst_len <= 1e-15,
            "scaled moment error " + fmt("%.3e", worst) + " (tol 1e-12), ordering " +
                (ordered ? "strict" : "VIOLATED") + ", |(b-a)-(d-c)| " + fmt("%.1e", worst_len)};
}

Outcome feasibility_condition() {
    constexpr int kCount = 100'000;
    int bad = 0;
    for (int k = 1; k <= kCount; ++k) {
        const double alpha = static_cast<double>(k) / (kCount + 1);
        const auto s = lemma3_split(-1.0, 1.0, alpha);
        const bool ok = s.beta > s.e && s.beta + s.e < s.B - s.A &&
                        alpha * alpha - 3.0 * alpha + 2.0 > 0.0;
        bad += ok ? 0 : 1;
    }
    return {bad == 0, std::to_string(kCount) + " weights, " + std::to_string(bad) + " violations"};
}

Outcome oracle_equivalence() {
    std::mt19937_64 rng(20240904);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const auto t = lamconvex::testing::random_laminate(rng, 16);
        const auto q = quadrature_oracle(t, 100'000);
        track(q);
        worst = std::max(worst, max_of(abs_diff(tracked(t), q)));
    }
    return {worst <= 1e-8, "max |exact - midpoint(1e5)| " + fmt("%.3e", worst) + " (tol 1e-8)"};
}

Outcome counterexample_oscillation() {
    const Rational x(-1, 2);
    const double alpha = 0.5;
    const auto w = oscillation_witness(alpha, x, 5);
    const Rational y = cell_coordinate(x);
    // independent re-check: {n y} = (n p mod q) / q compared with 1/2 by cross-multiplying
    std::size_t below = 0;
    std::size_t above = 0;
    for (const auto& e : w.below) {
        const std::int64_t r = (e.n * y.num()) % y.den();
        below += (r > 0 && 2 * r < y.den()) ? 1 : 0;
    }
    for (const auto& e : w.above) {
        const std::int64_t r = (e.n * y.num()) % y.den();
        above += (2 * r > y.den() && r < y.den()) ? 1 : 0;
    }
    const auto t1 = StepLaminate::uniform(0.0);
    const auto t2 = StepLaminate::uniform(kPi / 2);
    int undefined = 0;
    for (std::int64_t k = 1; k <= 5; ++k) {
        try {
            theta_n_eval(t1, t2, alpha, k * 2 * x.den(), x);
        } catch (const Error& e) {
            undefined += e.code() == ErrorCode::UndefinedAtBreakpoint ? 1 : 0;
        }
    }
    return {below >= 5 && above >= 5 && undefined == 5,
            std::to_string(below) + " below, " + std::to_string(above) + " above, " +
                std::to_string(undefined) + "/5 undefined at n = 4k"};
}

Outcome bezout_certificates() {
    std::size_t pairs = 0;
    std::size_t bad = 0;
    for (std::int64_t q = 2; q <= 50; ++q) {
        for (std::int64_t p = 1; p < q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            for (std::int64_t j = 1; j < q; ++j) {
                for (const auto& s : lemma1_solutions(p, q, j, 3)) {
                    ++pairs;
                    const bool ok = s.n * p - q * s.i == j && s.i >= 0 && s.i <= s.n - 1;
                    bad += ok ? 0 : 1;
                }
            }
        }
    }
    return {bad == 0 && pairs > 0,
            std::to_string(pairs) + " certificates, " + std::to_string(bad) + " failures"};
}

Outcome theta_n_convergence() {
    const auto t1 = StepLaminate::uniform(0.0);
    const auto t2 = StepLaminate::uniform(kPi / 2);
    std::vector<std::int64_t> ns;
    for (std::int64_t n = 16; n <= 4096; n *= 2) ns.push_back(n);
    const auto rows = convergence_table(t1, t2, 0.5, ns);

    double worst_a = 0.0;
    bool positive = true;
    bool ratios_ok = true;
    double ratio_lo = 1.0;
    double ratio_hi = 0.0;
    double worst_d = 0.0;
    std::vector<double> coupling_bending(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        track(rows[i].params);
        const auto& d = rows[i].distance;
        worst_a = std::max({worst_a, d[0], d[1], d[2], d[3]});
        coupling_bending[i] = *std::max_element(d.begin() + 4, d.end());
        worst_d = std::max({worst_d, d[8], d[9], d[10], d[11]});
        positive = positive && coupling_bending[i] > 0.0;
        if (i > 0 && rows[i].n >= 64) {
            const double ratio = coupling_bending[i] / coupling_bending[i - 1];
            ratio_lo = std::min(ratio_lo, ratio);
            ratio_hi = std::max(ratio_hi, ratio);
            ratios_ok = ratios_ok && ratio >= 0.3 && ratio <= 0.7;
        }
    }
    return {worst_a <= 1e-12 && positive && ratios_ok,
            "xiA dist <= " + fmt("%.1e", worst_a) + ", xiB/xiD dist at n=4096 " +
                fmt("%.3e", coupling_bending.back()) + ", ratios in [" + fmt("%.4f", ratio_lo) +
                ", " + fmt("%.4f", ratio_hi) + "]; xiD block alone max " + fmt("%.1e", worst_d)};
}

struct Run {
    int status = -1;
    std::string out;
};

Run run_cli(const std::string& args) {
    const std::string cmd = std::string(LAMCONVEX_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return r;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

Outcome cli_round_trip() {
    const fs::path dir = fs::temp_directory_path() / "lamconvex_acceptance";
    fs::create_directories(dir);
    std::mt19937_64 rng(20240909);
    double worst = 0.0;
    bool statuses_ok = true;
    for (int k = 0; k < 20; ++k) {
        const auto t = random_degrees_laminate(rng, 12);
        const auto path = (dir / ("rt" + std::to_string(k) + ".json")).string();
        save_laminate(t, path);
        const auto run = run_cli("params " + path + " --json");
        statuses_ok = statuses_ok && run.status == 0;
        if (run.status != 0) continue;
        const auto j = nlohmann::json::parse(run.out)["payload"]["parameters"];
        LamParams got;
        got.xiA = j["xiA"].get<std::array<double, 4>>();
        got.xiB = j["xiB"].get<std::array<double, 4>>();
        got.xiD = j["xiD"].get<std::array<double, 4>>();
        track(got);
        worst = std::max(worst, max_of(abs_diff(got, tracked(t))));
    }
    const auto p0 = (dir / "ply0.json").string();
    const auto p90 = (dir / "ply90.json").string();
    save_laminate(StepLaminate::uniform(0.0), p0);
    save_laminate(StepLaminate::uniform(kPi / 2), p90);
    const auto combine = run_cli("combine " + p0 + " " + p90 + " --alpha 0.5 --json");
    fs::remove_all(dir);
    return {statuses_ok && worst <= 1e-14 && combine.status == 0,
            "params drift " + fmt("%.1e", worst) + " (tol 1e-14), combine exit " +
                std::to_string(combine.status)};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"convexity identity", 5.0, convexity_identity},
        {"split moment matching", 1.0, split_moment_matching},
        {"feasibility condition", 1.0, feasibility_condition},
        {"oracle equivalence", 10.0, oracle_equivalence},
        {"counterexample oscillation", 1.0, counterexample_oscillation},
        {"bezout certificates", 5.0, bezout_certificates},
        {"theta^n parameter convergence", 1.0, theta_n_convergence},
        {"cli round-trip", 30.0, cli_round_trip},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs < c.time_limit_s;
        const bool pass = o.pass && in_time;
        failures += pass ? 0 : 1;
        std::printf("[%s] %-30s %s; %.3f s (limit %.0f s)\n", pass ? "PASS" : "FAIL",
                    c.name.c_str(), o.detail.c_str(), secs, c.time_limit_s);
    }

    const bool bounded = g_max_abs_param <= 1.0 + 1e-12;
    failures += bounded ? 0 : 1;
    std::printf("[%s] %-30s max |xi| over all suites %.17g (limit 1 + 1e-12)\n",
                bounded ? "PASS" : "FAIL", "parameter bounds", g_max_abs_param);

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
