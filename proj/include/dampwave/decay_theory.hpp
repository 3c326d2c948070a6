#pragma once
/**
 * @file decay_theory.hpp
 * @brief Closed-form decay classification for a(x) ~ <x>^{-α} damping with
 *        absorbing power nonlinearity, the two critical exponents, and the
 *        growth of the nonlinear remainder integral
 *
 *   ∫_0^t ∫ a^{(p+1)/(p-1)} Θ(s,x;t0)^{λ-(p+1)/(p-1)} dx ds.
 *
 * Notation: μ₁ = 4/(2-α) (1/(p-1) - (n-α)/4), μ₂ = 2/(p-1). μ₁ < μ₂ exactly
 * when p > p_subc(n,α).
 */

#include "dampwave/model_core.hpp"

#include <string>

namespace dampwave {

/// 1 + 2α/(n-α).
double p_subc(int n, double alpha);
/// 1 + 2/d.
double p_fujita(double d);

double mu_one(const ModelParams& params);
double mu_two(double p);

/// Relative tie test used by every branch decision (1e-12).
bool ties(double x, double y);

enum class DecayCase { I, II };

enum class DecayRegion {
    CaseI_Rate,
    II_Branch1,  // λ < min{μ₁, μ₂}
    II_Branch2,  // λ = min{μ₁, μ₂}, p ≠ p_subc
    II_Branch3,  // λ = μ₁ = μ₂
    II_Branch4,  // λ > μ₁, p > p_subc
    II_Branch5,  // λ > μ₂, p = p_subc
    II_Branch6   // λ > μ₂, p < p_subc
};

struct DecayPrediction {
    DecayRegion region = DecayRegion::II_Branch1;
    double mu = 0.0;
    int log_power = 0;
    /// Exponent for the unweighted ∫u² bound, same log power.
    double l2_mu = 0.0;
    /// p > p_F(n-α) with λ ≥ (n-α)/(2-α), or μ₁ ≤ 0: the branch rate is
    /// vacuous or beaten by the linear (n-α)/(2-α) rate with δ-loss.
    bool saturated = false;
    /// Rate read off the phase diagram: λ below (n-α)/(2-α), otherwise the
    /// supremum (n-α)/(2-α) (every smaller exponent is available).
    double figure_mu = 0.0;
};

/// Throws CaseIRangeError for case I with λ ≥ (n-α)/(2-α).
DecayPrediction predict_decay(const ModelParams& params, DecayCase which);

/// Labelled zones of the (p, λ) phase diagram.
enum class FigureRegion { Gray, BlueCurve, RedCurve, Yellow, BlueRegion, GreenLine, RedRegion, Saturated };

FigureRegion figure_region(const ModelParams& params);

std::string to_string(DecayRegion region);
std::string to_string(FigureRegion region);

struct Growth {
    double exponent = 0.0;  // of (t0+t)
    int log_power = 0;      // of log(t0+t)
};

/// Growth row of the remainder integral (constants suppressed).
Growth badterm_growth(const ModelParams& params);

/**
 * Numerical value of the remainder integral up to time t. Space: Simpson on
 * [r_in, r_in+1] and in log r beyond, closed by the exact power-law tail;
 * time: Simpson in log(t0+s). Returns +inf when the spatial integral diverges
 * ((2-α)λ too large for the dimension).
 */
double badterm_quadrature(const ModelParams& params, double t0, double t);

} // namespace dampwave
