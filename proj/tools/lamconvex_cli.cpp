// lamconvex: lamination parameters, constructive convex combinations and the
// interleaving-sequence counterexample from the command line.
//
// Exit status: 0 all verdicts pass, 1 a verdict failed, 2 usage/parse/IO
// error, 3 numeric-domain error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lamconvex/lamconvex.hpp"

namespace {

using namespace lamconvex;

constexpr int kExitPass = 0;
constexpr int kExitVerdict = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::ParseError:
        case ErrorCode::InvariantViolation:
        case ErrorCode::IOError:
        case ErrorCode::InvalidArgument:
            return kExitUsage;
        case ErrorCode::DegenerateInterval:
        case ErrorCode::AlphaOutOfRange:
        case ErrorCode::UndefinedAtBreakpoint:
        case ErrorCode::NotCoprime:
        case ErrorCode::JOutOfRange:
        case ErrorCode::SearchCapExceeded:
            return kExitDomain;
    }
    return kExitUsage;
}

bool looks_rational(const std::string& s) {
    if (s.find('/') != std::string::npos) return true;
    return s.find_first_not_of("+-0123456789") == std::string::npos;
}

int emit(const Report& r, bool json) {
    if (json) {
        std::cout << r.to_json().dump(2) << "\n";
    } else {
        std::cout << to_text(r);
    }
    return r.pass() ? kExitPass : kExitVerdict;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lamination parameters of step-function layups"};
    app.require_subcommand(1);

    bool json = false;
    bool normalize = false;
    app.add_flag("--json", json, "machine-readable output");
    app.add_flag("--normalize", normalize, "map laminate breakpoints affinely onto [-1, 1]");

    std::string file1;
    std::string file2;
    double alpha = 0.5;
    double tolerance = 1e-12;
    std::string out_path;
    std::vector<std::int64_t> n_list{16, 32, 64, 128, 256, 512, 1024, 2048, 4096};
    std::string orientation = "constructed";
    std::string x_text;
    std::size_t count = 5;
    std::int64_t cap = kDefaultSearchCap;

    auto* params = app.add_subcommand("params", "print the 12 lamination parameters");
    params->add_option("file", file1, "laminate JSON file")->required();

    auto* combine = app.add_subcommand(
        "combine", "build a laminate with xi = (1 - alpha) xi[file1] + alpha xi[file2]");
    combine->add_option("file1", file1)->required();
    combine->add_option("file2", file2)->required();
    combine->add_option("--alpha", alpha, "weight of file2, in [0, 1]")->required();
    combine->add_option("--out", out_path, "write the constructed laminate here");
    combine->add_option("--tolerance", tolerance, "residual tolerance")->capture_default_str();

    auto* gseq = app.add_subcommand("gsequence", "parameter convergence of the interleaving sequence");
    gseq->add_option("file1", file1)->required();
    gseq->add_option("file2", file2)->required();
    gseq->add_option("--alpha", alpha, "fraction of each cell given to file1, in (0, 1)")->required();
    gseq->add_option("--n", n_list, "comma-separated list of n")->delimiter(',');
    gseq->add_option("--orientation", orientation, "limit the distances refer to")
        ->check(CLI::IsMember({"constructed", "swapped"}))
        ->capture_default_str();

    auto* osc = app.add_subcommand("oscillate", "indices n putting x in either sub-cell");
    osc->add_option("--x", x_text, "point in (-1, 1): real or p/q")->required();
    osc->add_option("--alpha", alpha)->required();
    osc->add_option("--count", count, "indices per region")->capture_default_str();
    osc->add_option("--cap", cap, "largest n searched")->capture_default_str();
    osc->add_option("file1", file1, "optional laminate theta1");
    osc->add_option("file2", file2, "optional laminate theta2");

    for (auto* sub : {params, combine, gseq, osc}) {
        sub->add_flag("--json", json, "machine-readable output");
        sub->add_flag("--normalize", normalize, "map laminate breakpoints affinely onto [-1, 1]");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (params->parsed()) {
            Report r = params_report(load_laminate(file1, normalize));
            r.inputs["file"] = file1;
            return emit(r, json);
        }
        if (combine->parsed()) {
            const StepLaminate t1 = load_laminate(file1, normalize);
            const StepLaminate t2 = load_laminate(file2, normalize);
            const StepLaminate result = convex_combine(t1, t2, alpha);
            Report r = combine_report(t1, t2, alpha, result, tolerance);
            r.inputs["file1"] = file1;
            r.inputs["file2"] = file2;
            if (!out_path.empty()) {
                save_laminate(result, out_path);
                r.inputs["out"] = out_path;
            }
            return emit(r, json);
        }
        if (gseq->parsed()) {
            const StepLaminate t1 = load_laminate(file1, normalize);
            const StepLaminate t2 = load_laminate(file2, normalize);
            Report r = gsequence_report(t1, t2, alpha, n_list,
                                        orientation == "swapped" ? LimitOrientation::Swapped
                                                                 : LimitOrientation::AsConstructed);
            r.inputs["file1"] = file1;
            r.inputs["file2"] = file2;
            return emit(r, json);
        }
        if (osc->parsed()) {
            if (file1.empty() != file2.empty()) {
                throw Error(ErrorCode::InvalidArgument, "give both laminate files or neither");
            }
            std::optional<StepLaminate> t1;
            std::optional<StepLaminate> t2;
            if (!file1.empty()) {
                t1 = load_laminate(file1, normalize);
                t2 = load_laminate(file2, normalize);
            }
            WitnessTable w;
            if (looks_rational(x_text)) {
                const Rational x = Rational::parse(x_text);
                w = t1 ? oscillation_witness(*t1, *t2, alpha, x, count, cap)
                       : oscillation_witness(alpha, x, count, cap);
            } else {
                double x = 0.0;
                try {
                    std::size_t used = 0;
                    x = std::stod(x_text, &used);
                    if (used != x_text.size()) throw std::invalid_argument("trailing characters");
                } catch (const std::logic_error&) {
                    throw Error(ErrorCode::ParseError, "--x: not a number: '" + x_text + "'");
                }
                w = t1 ? oscillation_witness(*t1, *t2, alpha, x, count, cap)
                       : oscillation_witness(alpha, x, count, cap);
            }
            return emit(oscillate_report(w, count), json);
        }
    } catch (const Error& e) {
        if (json) {
            ojson j{{"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::cerr << "error: " << e.what() << "\n";
        }
        return exit_code_for(e.code());
    }
    return kExitUsage;
}
