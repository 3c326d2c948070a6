#pragma once
/**
 * @file experiment.hpp
 * @brief One configured run end to end (solve, record, classify, fit) and
 *        the (p, λ) sweep built from it.
 */

#include "dampwave/analysis.hpp"
#include "dampwave/config.hpp"
#include "dampwave/decay_theory.hpp"
#include "dampwave/solver.hpp"

#include <chrono>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace dampwave {

struct ExperimentResult {
    RunResult run;
    WeightFamily family = WeightFamily::Theta;
    double nu = 0.0;
    DecayPrediction prediction;
    FitResult fit_energy;
    FitResult fit_al2;
};

/// Worst of the energy and ∫a u² verdicts (violated > inconclusive > holds).
Verdict combined_verdict(const ExperimentResult& result);

ExperimentResult simulate(const ExperimentConfig& config,
                          std::optional<std::chrono::steady_clock::time_point> deadline = std::nullopt);

/// Writes energies.csv, fit_report.txt and prediction.txt into `out_dir`.
ExperimentResult run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir);

void write_energies_csv(std::ostream& os, std::span<const EnergyRecord> records);
void write_prediction(std::ostream& os, const ExperimentConfig& config, const DecayPrediction& prediction);
void write_fit_report(std::ostream& os, const ExperimentConfig& config, const ExperimentResult& result);

struct SweepRow {
    double p = 0.0;
    double lambda = 0.0;
    std::string region;  // phase-diagram label
    double mu_pred = 0.0;
    int log_pred = 0;
    double slope_fit = 0.0;
    std::string verdict;
    std::string error;   // empty when the cell ran
};

/// One row per (p, λ) cell, sorted by (p, λ); cells run on `threads` workers
/// with the per-cell budget from the config.
std::vector<SweepRow> sweep(const ExperimentConfig& config, unsigned threads);

void write_summary_csv(std::ostream& os, std::span<const SweepRow> rows);

/// Classification only, one row per (p, λ) with no simulation.
void write_atlas_csv(std::ostream& os, const ModelParams& base, std::span<const double> p_axis,
                     std::span<const double> lambda_axis);

/// %.17g.
std::string format_real(double x);

} // namespace dampwave
