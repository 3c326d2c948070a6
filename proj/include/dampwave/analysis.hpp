#pragma once
/**
 * @file analysis.hpp
 * @brief Checks a recorded decay against a predicted bound
 *        q(t) ≤ C (t0+t)^{-m} (log(2+t))^ℓ.
 *
 * The bound is one-sided with an unknown constant, so the test is on the
 * scaled quantity q·(t0+t)^m/(log(2+t))^ℓ: the bound is declared violated when
 * its supremum over [T/2, T] exceeds the supremum over [T/4, T/2] by more than
 * the growth factor (3 by default). The log-log slope is informational.
 */

#include "dampwave/decay_theory.hpp"
#include "dampwave/energetics.hpp"

#include <cstddef>
#include <span>
#include <string>

namespace dampwave {

enum class Verdict { BoundHolds, BoundViolated, Inconclusive };

std::string to_string(Verdict verdict);

struct FitOptions {
    double window_fraction = 0.5;  // fit window [window_fraction·T, T]
    double growth_factor = 3.0;
    std::size_t min_records = 20;
};

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double t_lo = 0.0;
    double t_hi = 0.0;
    double sup_scaled = 0.0;    // over [T/2, T]
    double sup_previous = 0.0;  // over [T/4, T/2)
    double growth = 0.0;        // sup_scaled / sup_previous
    std::size_t samples = 0;
    Verdict verdict = Verdict::Inconclusive;
};

/**
 * Series form. `exponent` is the full power m of (t0+t) in the bound.
 * Throws WindowError when the series is empty or t and q differ in length.
 */
FitResult fit_decay(std::span<const double> t, std::span<const double> q, double t0,
                    double exponent, int log_power, const FitOptions& options = {});

/// Record fields a bound can be stated for.
enum class Quantity { Energy, WeightedL2, PlainL2 };

double select(const EnergyRecord& record, Quantity quantity);

/// Power of (t0+t) that the prediction attaches to `quantity`: 1 + mu for the
/// energy, mu for ∫a u², the companion rate for ∫u².
double bound_exponent(Quantity quantity, const DecayPrediction& prediction);

FitResult fit_decay(std::span<const EnergyRecord> records, Quantity quantity, double t0,
                    const DecayPrediction& prediction, const FitOptions& options = {});

} // namespace dampwave
