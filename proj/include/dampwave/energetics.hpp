#pragma once
/**
 * @file energetics.hpp
 * @brief Integral functionals of a radial solution snapshot: the energy E[u],
 *        weighted and plain L², the data norm I0 and the two weighted energy
 *        families (Ψ/Φ-weighted and Θ-weighted).
 *
 * Every functional takes the displacement u and the velocity v = ∂_t u at the
 * same time level as node arrays; all quadratures use RadialOperator weights.
 */

#include "dampwave/model_core.hpp"
#include "dampwave/radial_ops.hpp"
#include "dampwave/weights.hpp"

#include <span>
#include <vector>

namespace dampwave {

enum class WeightFamily { Psi, Theta };

struct EnergyRecord {
    double t = 0.0;
    double E = 0.0;
    double aL2 = 0.0;
    double L2 = 0.0;
    double E1 = 0.0;
    double E0 = 0.0;
    double Estar = 0.0;
    double Etilde = 0.0;
    double scaled_E = 0.0;    // (t0+t)^{1+λ} E
    double scaled_aL2 = 0.0;  // (t0+t)^λ ∫ a u²
    double dissipated = 0.0;  // ∫_0^t ∫ a |∂_t u|² (trapezoid over every step)
    double estar_slack = 0.0; // Estar - E1/2 - (ν/2) ∫ a u² W^λ
};

/// ½∫(v² + |∂_r u|²) + 1/(p+1) ∫|u|^{p+1}.
double energy_E(const RadialOperator& op, const ModelParams& params,
                std::span<const double> u, std::span<const double> v);

/// ∫ a u².
double weighted_l2(const RadialOperator& op, const ModelParams& params, std::span<const double> u);

/// ∫ u².
double plain_l2(const RadialOperator& op, std::span<const double> u);

/// ∫ a v², the instantaneous dissipation rate.
double dissipation_rate(const RadialOperator& op, const ModelParams& params, std::span<const double> v);

struct I0Result {
    double value = 0.0;
    bool divergent_tail = false;  // integrand·r^n not decaying near r_max
};

I0Result i0_norm(std::span<const double> u0, std::span<const double> u1,
                 const ModelParams& params, const RadialGrid& grid);

struct FamilyValues {
    double E1 = 0.0;
    double E0 = 0.0;
    double Estar = 0.0;
    double Etilde = 0.0;
    double estar_slack = 0.0;
};

FamilyValues energy_family(std::span<const double> u, std::span<const double> v, double t,
                           const WeightTable& table, WeightFamily family);

/// Psi when λ < (1-2δ)γ_ε, Theta otherwise.
WeightFamily default_family(const WeightTable& table);

/// Assembles one record; `dissipated` is left for the caller.
EnergyRecord make_record(double t, std::span<const double> u, std::span<const double> v,
                         const WeightTable& table, WeightFamily family);

/// max_k |E(t_k) - E(t_0) + D(t_k) - D(t_0)| over a run's records.
double energy_identity_residual(std::span<const EnergyRecord> records);

} // namespace dampwave
