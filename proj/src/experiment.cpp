#include "dampwave/experiment.hpp"

#include "dampwave/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <thread>
#include <tuple>

namespace dampwave {

namespace {

int severity(Verdict v)
{
    switch (v) {
    case Verdict::BoundViolated: return 2;
    case Verdict::Inconclusive: return 1;
    default: return 0;
    }
}

void write_file(const std::filesystem::path& path, const auto& writer)
{
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open " + path.string() + " for writing");
    writer(os);
    if (!os) throw Error("write to " + path.string() + " failed");
}

} // namespace

std::string format_real(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Verdict combined_verdict(const ExperimentResult& result)
{
    return severity(result.fit_energy.verdict) >= severity(result.fit_al2.verdict) ? result.fit_energy.verdict
                                                                                  : result.fit_al2.verdict;
}

ExperimentResult simulate(const ExperimentConfig& config,
                          std::optional<std::chrono::steady_clock::time_point> deadline)
{
    const auto bad = config.violations();
    if (!bad.empty()) throw ValidationError(bad);

    const RadialGrid grid = config.grid();
    const WeightTable table(config.model, grid, config.weights);

    ExperimentResult out;
    switch (config.family) {
    case FamilyChoice::Psi: out.family = WeightFamily::Psi; break;
    case FamilyChoice::Theta: out.family = WeightFamily::Theta; break;
    default: out.family = default_family(table); break;
    }
    out.nu = table.nu();
    out.prediction = predict_decay(config.model, config.decay_case);
    out.run = run(config.model, grid, config.data, config.run, table, out.family, deadline);
    out.fit_energy = fit_decay(out.run.records, Quantity::Energy, config.weights.t0, out.prediction);
    out.fit_al2 = fit_decay(out.run.records, Quantity::WeightedL2, config.weights.t0, out.prediction);
    return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir)
{
    auto result = simulate(config);
    std::filesystem::create_directories(out_dir);
    write_file(out_dir / config.output.energies, [&](std::ostream& os) { write_energies_csv(os, result.run.records); });
    write_file(out_dir / config.output.prediction,
               [&](std::ostream& os) { write_prediction(os, config, result.prediction); });
    write_file(out_dir / config.output.fit_report, [&](std::ostream& os) { write_fit_report(os, config, result); });
    return result;
}

void write_energies_csv(std::ostream& os, std::span<const EnergyRecord> records)
{
    os << "t,E,aL2,L2,E1,E0,Estar,Etilde,scaled_E,scaled_aL2\n";
    for (const auto& r : records) {
        const double cols[] = {r.t, r.E, r.aL2, r.L2, r.E1, r.E0, r.Estar, r.Etilde, r.scaled_E, r.scaled_aL2};
        for (std::size_t i = 0; i < std::size(cols); ++i) {
            if (i) os << ',';
            os << format_real(cols[i]);
        }
        os << '\n';
    }
}

void write_prediction(std::ostream& os, const ExperimentConfig& config, const DecayPrediction& pred)
{
    const auto& m = config.model;
    os << "n = " << m.n << "\n"
       << "alpha = " << format_real(m.alpha) << "\n"
       << "p = " << format_real(m.p) << "\n"
       << "lambda = " << format_real(m.lambda) << "\n"
       << "case = " << (config.decay_case == DecayCase::I ? "I" : "II") << "\n"
       << "p_subc = " << format_real(p_subc(m.n, m.alpha)) << "\n"
       << "p_F(n-alpha) = " << format_real(p_fujita(m.n - m.alpha)) << "\n"
       << "mu1 = " << format_real(mu_one(m)) << "\n"
       << "mu2 = " << format_real(mu_two(m.p)) << "\n"
       << "region = " << to_string(pred.region) << "\n"
       << "figure_region = " << to_string(figure_region(m)) << "\n"
       << "mu = " << format_real(pred.mu) << "\n"
       << "log_power = " << pred.log_power << "\n"
       << "l2_mu = " << format_real(pred.l2_mu) << "\n"
       << "saturated = " << (pred.saturated ? "true" : "false") << "\n"
       << "figure_mu = " << format_real(pred.figure_mu) << "\n";
}

void write_fit_report(std::ostream& os, const ExperimentConfig& config, const ExperimentResult& result)
{
    os << "steps = " << result.run.steps << "\n"
       << "dt = " << format_real(result.run.dt) << "\n"
       << "records = " << result.run.records.size() << "\n"
       << "family = " << (result.family == WeightFamily::Psi ? "psi" : "theta") << "\n"
       << "nu = " << format_real(result.nu) << "\n"
       << "t0 = " << format_real(config.weights.t0) << "\n"
       << "energy_identity_residual = " << format_real(energy_identity_residual(result.run.records)) << "\n";
    auto block = [&](const char* name, const FitResult& f) {
        os << "[" << name << "]\n"
           << "window = " << format_real(f.t_lo) << " " << format_real(f.t_hi) << "\n"
           << "samples = " << f.samples << "\n"
           << "slope = " << format_real(f.slope) << "\n"
           << "sup_scaled = " << format_real(f.sup_scaled) << "\n"
           << "sup_previous = " << format_real(f.sup_previous) << "\n"
           << "growth = " << format_real(f.growth) << "\n"
           << "verdict = " << to_string(f.verdict) << "\n";
    };
    block("energy", result.fit_energy);
    block("aL2", result.fit_al2);
    os << "verdict = " << to_string(combined_verdict(result)) << "\n";
}

std::vector<SweepRow> sweep(const ExperimentConfig& config, unsigned threads)
{
    if (config.sweep.empty()) throw ConfigError("sweep needs non-empty p and lambda axes");
    std::vector<SweepRow> rows;
    for (double p : config.sweep.p)
        for (double lam : config.sweep.lambda) {
            SweepRow row;
            row.p = p;
            row.lambda = lam;
            rows.push_back(row);
        }
    std::sort(rows.begin(), rows.end(),
              [](const SweepRow& a, const SweepRow& b) { return std::tie(a.p, a.lambda) < std::tie(b.p, b.lambda); });

    auto cell = [&](SweepRow& row) {
        ExperimentConfig c = config;
        c.model.p = row.p;
        c.model.lambda = row.lambda;
        c.sweep = {};
        try {
            c.model.validate();
            row.region = to_string(figure_region(c.model));
            const auto pred = predict_decay(c.model, c.decay_case);
            row.mu_pred = pred.mu;
            row.log_pred = pred.log_power;
            const auto budget = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                std::chrono::duration<double>(config.sweep.budget_seconds));
            const auto result = simulate(c, std::chrono::steady_clock::now() + budget);
            row.slope_fit = result.fit_al2.slope;
            row.verdict = to_string(combined_verdict(result));
        } catch (const std::exception& e) {
            row.error = e.what();
            std::replace(row.error.begin(), row.error.end(), ',', ';');
            std::replace(row.error.begin(), row.error.end(), '\n', ' ');
        }
    };

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < rows.size(); i = next++) cell(rows[i]);
    };
    const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(rows.size())));
    {
        std::vector<std::jthread> pool;
        for (unsigned k = 1; k < count; ++k) pool.emplace_back(worker);
        worker();
    }
    return rows;
}

void write_summary_csv(std::ostream& os, std::span<const SweepRow> rows)
{
    os << "p,lambda,region,mu_pred,log_pred,slope_fit,verdict,error\n";
    for (const auto& r : rows)
        os << format_real(r.p) << ',' << format_real(r.lambda) << ',' << r.region << ',' << format_real(r.mu_pred)
           << ',' << r.log_pred << ',' << format_real(r.slope_fit) << ',' << r.verdict << ',' << r.error << '\n';
}

void write_atlas_csv(std::ostream& os, const ModelParams& base, std::span<const double> p_axis,
                     std::span<const double> lambda_axis)
{
    os << "p,lambda,branch,region,mu,log_power,l2_mu,saturated,figure_mu\n";
    for (double p : p_axis)
        for (double lam : lambda_axis) {
            ModelParams m = base;
            m.p = p;
            m.lambda = lam;
            m.validate();
            const auto pred = predict_decay(m, DecayCase::II);
            os << format_real(p) << ',' << format_real(lam) << ',' << to_string(pred.region) << ','
               << to_string(figure_region(m)) << ',' << format_real(pred.mu) << ',' << pred.log_power << ','
               << format_real(pred.l2_mu) << ',' << (pred.saturated ? "true" : "false") << ','
               << format_real(pred.figure_mu) << '\n';
        }
}

} // namespace dampwave
