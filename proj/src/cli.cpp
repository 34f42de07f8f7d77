#include "xicor/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "xicor/coefficients.hpp"
#include "xicor/errors.hpp"
#include "xicor/inference.hpp"
#include "xicor/io.hpp"
#include "xicor/power.hpp"
#include "xicor/simulation.hpp"

namespace xicor {

namespace {

constexpr const char* kSeedEnv = "XI_BOOST_SEED";

struct CommonInput {
    std::string path;
    std::optional<std::uint64_t> jitter_seed;
};

struct ReportOutput {
    std::string format = "json";
    std::string path;
};

void add_input(CLI::App* cmd, CommonInput& in) {
    cmd->add_option("file", in.path, "CSV with two numeric columns (x, y)")->required();
    cmd->add_option("--jitter-seed", in.jitter_seed,
                    "Break ties with seeded noise of width 1e-9 x range (off by default)");
}

void add_report_output(CLI::App* cmd, ReportOutput& out) {
    cmd->add_option("--format", out.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->add_option("-o,--output", out.path, "Write the report here instead of stdout");
}

CLI::Option* add_seed(CLI::App* cmd, std::uint64_t& seed) {
    return cmd->add_option("--seed", seed, "Master seed (falls back to $XI_BOOST_SEED)")
        ->envname(kSeedEnv);
}

Sample read_input(const CommonInput& in) {
    Sample s = io::load_sample(in.path);
    return in.jitter_seed ? jitter_ties(s, *in.jitter_seed) : s;
}

void emit_report(const StudyReport& report, const ReportOutput& where, std::ostream& out) {
    const std::string text = where.format == "csv" ? io::to_csv(report) : io::to_json(report) + "\n";
    if (where.path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(where.path, std::ios::binary);
    if (!file) throw Error("cannot write " + where.path);
    file << text;
}

std::vector<StudyMethod> parse_study_methods(const std::vector<std::string>& names) {
    std::vector<StudyMethod> methods;
    for (const auto& name : names) {
        const auto m = parse_study_method(name);
        if (!m) throw ConfigError("unknown method '" + name + "'");
        methods.push_back(*m);
    }
    return methods;
}

std::string format_plot(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// "start:stop:step" -> start, start+step, ... <= stop.
std::vector<double> parse_grid(const std::string& spec) {
    double start = 0.0, stop = 0.0, step = 0.0;
    char c1 = 0, c2 = 0;
    std::istringstream in(spec);
    if (!(in >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' || !(step > 0.0) ||
        stop < start) {
        throw ConfigError("grid must look like start:stop:step with step > 0, got '" + spec + "'");
    }
    std::vector<double> grid;
    for (std::size_t k = 0;; ++k) {
        const double v = start + static_cast<double>(k) * step;
        if (v > stop + step * 1e-9) break;
        grid.push_back(v);
    }
    return grid;
}

} // namespace

int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rank correlation coefficients with M right nearest neighbors and "
                 "distribution-free independence tests"};
    app.name("xicor");
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "INI/TOML file; keys go under a [<subcommand>] section");

    // coef
    auto* coef = app.add_subcommand("coef", "Compute a correlation coefficient");
    CommonInput coef_in;
    std::string coef_method = "xi-nm";
    std::size_t coef_m = 1;
    std::string coef_format = "text";
    coef->add_option("--method", coef_method, "xi, xi-nm, xi-nm-reflected, xi-pm, symmetric-nn, pearson, hoeffding")
        ->capture_default_str();
    coef->add_option("-M", coef_m, "Number of right nearest neighbors")->capture_default_str();
    coef->add_option("--format", coef_format)->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    add_input(coef, coef_in);

    // test
    auto* test = app.add_subcommand("test", "Run an independence test");
    CommonInput test_in;
    std::string test_method = "xi-pm";
    std::size_t test_m = 1;
    std::size_t test_b = 10000;
    double test_alpha = 0.05;
    std::uint64_t test_seed = 0;
    std::size_t test_workers = 1;
    bool exit_on_reject = false;
    bool outside_regime = false;
    test->add_option("--method", test_method, "xi-pm, symmetric-nn, hoeffding, xi-asymptotic, pearson")
        ->capture_default_str();
    test->add_option("-M", test_m, "Number of right nearest neighbors")->capture_default_str();
    test->add_option("-B", test_b, "Permutation replicates")->capture_default_str();
    test->add_option("--alpha", test_alpha, "Significance level")->capture_default_str();
    auto* test_seed_opt = add_seed(test, test_seed);
    test->add_option("--workers", test_workers, "Threads for the replicate loop")->capture_default_str();
    test->add_flag("--exit-on-reject", exit_on_reject, "Exit with status 3 when the null is rejected");
    test->add_flag("--allow-outside-regime", outside_regime, "Run xi-asymptotic even when M^4 > n");
    add_input(test, test_in);

    // power-study
    auto* power = app.add_subcommand("power-study", "Rejection frequencies under Gaussian local alternatives");
    PowerStudyConfig pcfg;
    std::vector<std::string> power_methods{"xi-pm"};
    bool full_scale = false;
    ReportOutput power_out;
    power->add_option("--n", pcfg.n_values, "Sample sizes")->delimiter(',')->capture_default_str();
    power->add_option("-M", pcfg.M_values, "Neighbor counts")->delimiter(',')->capture_default_str();
    power->add_option("--rho0", pcfg.rho0_values, "rho_n = rho0 / sqrt(n)")->delimiter(',')->capture_default_str();
    power->add_option("--methods", power_methods, "xi-pm, symmetric-nn, hoeffding, pearson, xi-asymptotic")
        ->delimiter(',')
        ->capture_default_str();
    power->add_option("--replicates", pcfg.replicates)->capture_default_str();
    power->add_option("-B", pcfg.B, "Permutation replicates per test")->capture_default_str();
    power->add_option("--alpha", pcfg.alpha)->capture_default_str();
    power->add_option("--workers", pcfg.workers)->capture_default_str();
    power->add_flag("--full-scale", full_scale, "1000 replicates and B = 10000");
    add_seed(power, pcfg.master_seed)->required();
    add_report_output(power, power_out);

    // null-calibration
    auto* nullcal = app.add_subcommand("null-calibration", "Null mean, variance and normality of xi_nm");
    std::size_t null_n = 1000, null_m = 20, null_reps = 20000, null_workers = 1;
    std::uint64_t null_seed = 0;
    ReportOutput null_out;
    nullcal->add_option("--n", null_n)->capture_default_str();
    nullcal->add_option("-M", null_m)->capture_default_str();
    nullcal->add_option("--replicates", null_reps)->capture_default_str();
    nullcal->add_option("--workers", null_workers)->capture_default_str();
    add_seed(nullcal, null_seed)->required();
    add_report_output(nullcal, null_out);

    // consistency
    auto* consist = app.add_subcommand("consistency", "Trajectories of xi_nm against the population value");
    std::vector<double> cons_rho{0.0, 0.2, 0.4, 0.6, 0.8};
    std::vector<std::size_t> cons_n{1000, 2000, 5000}, cons_m{1, 20, 100, 200};
    std::size_t cons_reps = 500, cons_workers = 1;
    std::uint64_t cons_seed = 0;
    ReportOutput cons_out;
    consist->add_option("--rho", cons_rho)->delimiter(',')->capture_default_str();
    consist->add_option("--n", cons_n)->delimiter(',')->capture_default_str();
    consist->add_option("-M", cons_m)->delimiter(',')->capture_default_str();
    consist->add_option("--replicates", cons_reps)->capture_default_str();
    consist->add_option("--workers", cons_workers)->capture_default_str();
    add_seed(consist, cons_seed)->required();
    add_report_output(consist, cons_out);

    // timing
    auto* timing = app.add_subcommand("timing", "Median wall time per coefficient evaluation");
    TimingConfig tcfg;
    std::vector<std::string> timing_methods{"xi-pm"};
    ReportOutput timing_out;
    timing->add_option("--n", tcfg.n_values)->delimiter(',')->capture_default_str();
    timing->add_option("-M", tcfg.M_values)->delimiter(',')->capture_default_str();
    timing->add_option("--methods", timing_methods)->delimiter(',')->capture_default_str();
    timing->add_option("--repetitions", tcfg.repetitions)->capture_default_str();
    timing->add_option("--warmups", tcfg.warmups)->capture_default_str();
    add_seed(timing, tcfg.seed)->required();
    add_report_output(timing, timing_out);

    // boundary
    auto* boundary = app.add_subcommand("boundary", "Detection boundary zeta(n, M) or exponent curve beta(gamma) as CSV");
    std::vector<std::size_t> bound_n, bound_m;
    std::string gamma_grid;
    boundary->add_option("--n", bound_n, "Sample sizes")->delimiter(',');
    boundary->add_option("-M", bound_m, "Neighbor counts")->delimiter(',');
    boundary->add_option("--gamma-grid", gamma_grid, "start:stop:step, e.g. 0.01:0.99:0.01");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (coef->parsed()) {
            const auto method = parse_method(coef_method);
            if (!method) {
                err << "unknown method '" << coef_method << "'\n";
                return kExitUsage;
            }
            const Sample s = read_input(coef_in);
            const NeighborCount M{coef_m};
            CoefficientValue v;
            switch (*method) {
            case Method::XiClassic: v = chatterjee_xi(s); break;
            case Method::XiNM: v = xi_nm(s, M); break;
            case Method::XiNMReflected: v = xi_nm_reflected(s, M); break;
            case Method::XiPM: v = xi_pm(s, M); break;
            case Method::SymmetricNN: v = symmetric_nn_sum(s, M); break;
            case Method::Pearson: v = pearson_r(s); break;
            case Method::HoeffdingD: v = hoeffding_d(s); break;
            }
            if (coef_format == "json") {
                out << "{\"method\": \"" << method_name(v.method) << "\", \"value\": " << io::format_real(v.value)
                    << ", \"n\": " << v.n;
                if (v.M) out << ", \"M\": " << *v.M;
                out << "}\n";
            } else {
                out << method_name(v.method) << ' ' << io::format_real(v.value) << " n=" << v.n;
                if (v.M) out << " M=" << *v.M;
                out << '\n';
            }
            return kExitOk;
        }

        if (test->parsed()) {
            const Sample s = read_input(test_in);
            TestResult result;
            if (test_method == "xi-asymptotic") {
                result = asymptotic_test(s, NeighborCount{test_m}, test_alpha, outside_regime);
            } else if (test_method == "pearson") {
                result = pearson_test(s, test_alpha);
            } else {
                PermutationTestConfig cfg;
                if (test_method == "xi-pm") cfg.method = PermutationMethod::XiPM;
                else if (test_method == "symmetric-nn") cfg.method = PermutationMethod::SymmetricNN;
                else if (test_method == "hoeffding") cfg.method = PermutationMethod::HoeffdingD;
                else {
                    err << "unknown test method '" << test_method << "'\n";
                    return kExitUsage;
                }
                if (!*test_seed_opt) throw ConfigError("--seed is required");
                cfg.B = test_b;
                cfg.alpha = test_alpha;
                cfg.M = NeighborCount{test_m};
                cfg.seed = test_seed;
                cfg.workers = test_workers;
                result = permutation_test(s, cfg);
            }
            out << io::to_json(result) << '\n';
            return exit_on_reject && result.reject ? kExitRejected : kExitOk;
        }

        if (power->parsed()) {
            if (full_scale) {
                pcfg.replicates = 1000;
                pcfg.B = 10000;
            }
            pcfg.methods = parse_study_methods(power_methods);
            emit_report(power_study(pcfg), power_out, out);
            return kExitOk;
        }

        if (nullcal->parsed()) {
            emit_report(null_calibration_study(null_n, null_m, null_reps, null_seed, null_workers), null_out, out);
            return kExitOk;
        }

        if (consist->parsed()) {
            emit_report(consistency_study(cons_rho, cons_n, cons_m, cons_reps, cons_seed, cons_workers), cons_out,
                        out);
            return kExitOk;
        }

        if (timing->parsed()) {
            tcfg.methods = parse_study_methods(timing_methods);
            emit_report(timing_study(tcfg), timing_out, out);
            return kExitOk;
        }

        if (boundary->parsed()) {
            if (!gamma_grid.empty()) {
                const auto grid = parse_grid(gamma_grid);
                out << "gamma,beta";
                for (std::size_t n : bound_n) out << ",zeta_exponent_n" << n;
                out << '\n';
                for (double g : grid) {
                    out << format_plot(g) << ',' << format_plot(beta_of_gamma(g));
                    for (std::size_t n : bound_n) {
                        const double nd = static_cast<double>(n);
                        out << ',' << format_plot(-zeta_log_exponent(nd, std::round(std::pow(nd, g))));
                    }
                    out << '\n';
                }
                return kExitOk;
            }
            if (bound_n.empty() || bound_m.empty()) {
                err << "boundary needs --gamma-grid, or --n and -M\n";
                return kExitUsage;
            }
            out << "n,M,zeta\n";
            for (std::size_t n : bound_n) {
                for (std::size_t M : bound_m) {
                    out << n << ',' << M << ',' << format_plot(zeta(n, NeighborCount{M})) << '\n';
                }
            }
            return kExitOk;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomainError;
    }
    return kExitUsage;
}

} // namespace xicor
