#pragma once
/**
 * @file config.hpp
 * @brief key = value experiment description.
 *
 * Sections [model] [grid] [run] [weights] [output] [sweep]; `#` starts a
 * comment. Reals may be written as fractions ("7/5"). serialize() emits every
 * key in a fixed order with shortest round-trip numbers, so
 * serialize(parse_config(serialize(c))) == serialize(c).
 */

#include "dampwave/decay_theory.hpp"
#include "dampwave/model_core.hpp"
#include "dampwave/solver.hpp"
#include "dampwave/weights.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dampwave {

enum class FamilyChoice { Auto, Psi, Theta };

struct OutputPaths {
    std::string dir = "out";
    std::string energies = "energies.csv";
    std::string fit_report = "fit_report.txt";
    std::string prediction = "prediction.txt";
    std::string summary = "summary.csv";
};

struct SweepAxes {
    std::vector<double> p;
    std::vector<double> lambda;
    double budget_seconds = 120.0;  // per cell

    bool empty() const { return p.empty() || lambda.empty(); }
};

struct ExperimentConfig {
    ModelParams model;
    double r_max = 60.0;
    std::size_t nodes = 1024;
    RunConfig run;
    InitialData data;
    DecayCase decay_case = DecayCase::II;
    WeightKnobs weights;
    FamilyChoice family = FamilyChoice::Auto;
    std::uint64_t seed = 42;
    OutputPaths output;
    SweepAxes sweep;

    RadialGrid grid() const { return RadialGrid::for_domain(model, r_max, nodes); }

    /// Every violated invariant across all modules.
    std::vector<std::string> violations() const;
};

/// Decimal or fraction "a/b"; throws ConfigError on anything else.
double parse_real(std::string_view text);

/// Throws ParseError (with line number) on syntax, ValidationError listing
/// every violated invariant otherwise.
ExperimentConfig parse_config(std::string_view text);

std::string serialize(const ExperimentConfig& config);

std::string to_string(FamilyChoice family);

} // namespace dampwave
