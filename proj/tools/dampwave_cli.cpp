// Command-line front end: simulate, classify, atlas, sweep, verify-weights, selftest.
//
// Exit codes: 0 success, 1 invalid input, 2 runtime failure, 3 a check failed.

#include "dampwave/checks.hpp"
#include "dampwave/config.hpp"
#include "dampwave/decay_theory.hpp"
#include "dampwave/errors.hpp"
#include "dampwave/experiment.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

using namespace dampwave;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kRuntime = 2;
constexpr int kCheckFailed = 3;

ExperimentConfig load(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::vector<double> axis(const std::string& list)
{
    std::vector<double> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_real(item));
    return out;
}

std::vector<double> linspace(double lo, double hi, int count)
{
    std::vector<double> out(count);
    for (int k = 0; k < count; ++k) out[k] = lo + (hi - lo) * k / (count - 1);
    return out;
}

int report(const std::vector<CheckResult>& results)
{
    bool ok = true;
    for (const auto& r : results) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
        ok = ok && r.passed;
    }
    return ok ? kOk : kCheckFailed;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Radial damped wave equation with absorbing nonlinearity: simulation and decay classification"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    std::optional<std::uint64_t> seed;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "experiment config (key = value)");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--seed", seed, "seed for randomised checks");
    };

    auto* simulate = app.add_subcommand("simulate", "run one configured experiment");
    add_common(simulate);

    auto* classify = app.add_subcommand("classify", "print the predicted decay rate");
    add_common(classify);
    int n = 3;
    std::string alpha = "0.5", p = "2", lambda = "0", which = "II";
    classify->add_option("--n", n, "space dimension");
    classify->add_option("--alpha", alpha, "damping decay exponent (fractions allowed)");
    classify->add_option("--p", p, "nonlinearity exponent (fractions allowed)");
    classify->add_option("--lambda", lambda, "data weight exponent (fractions allowed)");
    classify->add_option("--case", which, "I or II")->check(CLI::IsMember({"I", "II"}));

    auto* atlas = app.add_subcommand("atlas", "classification CSV over a (p, lambda) grid");
    add_common(atlas);
    std::string p_list, lambda_list;
    atlas->add_option("--n", n, "space dimension");
    atlas->add_option("--alpha", alpha, "damping decay exponent");
    atlas->add_option("--p-list", p_list, "comma-separated p values");
    atlas->add_option("--lambda-list", lambda_list, "comma-separated lambda values");

    auto* sweep_cmd = app.add_subcommand("sweep", "simulate every (p, lambda) cell of the [sweep] axes");
    add_common(sweep_cmd);

    auto* verify = app.add_subcommand("verify-weights", "A_eps and weight inequality battery");
    add_common(verify);

    auto* selftest = app.add_subcommand("selftest", "special-function and energy invariant suites");
    add_common(selftest);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalid;
    }

    try {
        std::optional<ExperimentConfig> config;
        if (!config_path.empty()) config = load(config_path);

        if (simulate->parsed()) {
            if (!config) throw ConfigError("simulate needs --config");
            const std::filesystem::path dir = out_dir.empty() ? config->output.dir : out_dir;
            const auto result = run_experiment(*config, dir);
            std::cout << "wrote " << (dir / config->output.energies).string() << " (" << result.run.records.size()
                      << " records), verdict " << to_string(combined_verdict(result)) << "\n";
            return kOk;
        }

        if (classify->parsed()) {
            ModelParams m;
            DecayCase dc = which == "I" ? DecayCase::I : DecayCase::II;
            if (config) {
                m = config->model;
                if (classify->count("--case") == 0) dc = config->decay_case;
            } else {
                m.n = n;
                m.alpha = parse_real(alpha);
                m.p = parse_real(p);
                m.lambda = parse_real(lambda);
            }
            m.validate();
            const auto pred = predict_decay(m, dc);
            std::cout << "region = " << to_string(pred.region) << "\n"
                      << "figure_region = " << to_string(figure_region(m)) << "\n"
                      << "mu = " << format_real(pred.mu) << "\n"
                      << "log_power = " << pred.log_power << "\n"
                      << "l2_mu = " << format_real(pred.l2_mu) << "\n"
                      << "saturated = " << (pred.saturated ? "true" : "false") << "\n"
                      << "figure_mu = " << format_real(pred.figure_mu) << "\n";
            return kOk;
        }

        if (atlas->parsed()) {
            ModelParams base;
            std::vector<double> ps, lams;
            if (config) {
                base = config->model;
                ps = config->sweep.p;
                lams = config->sweep.lambda;
            } else {
                base.n = n;
                base.alpha = parse_real(alpha);
            }
            if (!p_list.empty()) ps = axis(p_list);
            if (!lambda_list.empty()) lams = axis(lambda_list);
            if (ps.empty()) {
                const double top = base.n >= 3 ? static_cast<double>(base.n) / (base.n - 2) : 3.0;
                ps = linspace(1.0 + (top - 1.0) / 40.0, top, 40);
            }
            if (lams.empty()) lams = linspace(0.0, 12.0, 49);
            if (out_dir.empty()) {
                write_atlas_csv(std::cout, base, ps, lams);
            } else {
                std::filesystem::create_directories(out_dir);
                std::ofstream os(std::filesystem::path(out_dir) / "atlas.csv", std::ios::binary);
                write_atlas_csv(os, base, ps, lams);
            }
            return kOk;
        }

        if (sweep_cmd->parsed()) {
            if (!config) throw ConfigError("sweep needs --config");
            const auto rows = sweep(*config, threads);
            const std::filesystem::path dir = out_dir.empty() ? config->output.dir : out_dir;
            std::filesystem::create_directories(dir);
            std::ofstream os(dir / config->output.summary, std::ios::binary);
            write_summary_csv(os, rows);
            if (!os) throw Error("cannot write " + (dir / config->output.summary).string());
            std::size_t failed = 0;
            for (const auto& r : rows) failed += r.error.empty() ? 0 : 1;
            std::cout << "wrote " << (dir / config->output.summary).string() << " (" << rows.size() << " cells, "
                      << failed << " with errors)\n";
            return kOk;
        }

        if (verify->parsed()) {
            ExperimentConfig c = config.value_or(ExperimentConfig{});
            if (!config) {
                c.model.n = 3;
                c.model.alpha = 0.5;
                c.model.p = 2.0;
                c.r_max = 60.0;
                c.nodes = 4096;
            }
            return report(weight_battery(c.model, c.grid(), c.weights, seed.value_or(c.seed)));
        }

        if (selftest->parsed()) {
            return report({check_kummer_identities(), check_kummer_asymptotic(), check_solver_convergence(),
                           check_energy_monotone()});
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kInvalid;
    } catch (const ValidationError& e) {
        std::cerr << "invalid configuration:\n";
        for (const auto& v : e.violations()) std::cerr << "  " << v << "\n";
        return kInvalid;
    } catch (const ConfigError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kInvalid;
    } catch (const CaseIRangeError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRuntime;
    }
    return kOk;
}
