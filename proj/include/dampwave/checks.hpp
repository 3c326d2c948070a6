#pragma once
/**
 * @file checks.hpp
 * @brief Verification batteries shared by the CLI (selftest, verify-weights)
 *        and the acceptance gate. Each returns pass/fail plus a one-line
 *        summary of the measured numbers.
 */

#include "dampwave/model_core.hpp"
#include "dampwave/weights.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dampwave {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

/// M(b,b;s) = e^s, the φ ODE, the β-recurrence, closed-form derivatives.
CheckResult check_kummer_identities();
/// M(1,2;200)·200·e^{-200} against its limit 1.
CheckResult check_kummer_asymptotic();
/// (A1)-(A3) for (n,α,ε) = (3, 1/2, 0.1) on [0,60] and the O(h²) behaviour of Δ_h A_ε.
CheckResult check_weight_construction();
/// a∂_tΦ - ΔΦ ≥ c a Ψ^{-β-1} node-wise and ∂_tΦ = -βΦ_{β+1}.
CheckResult check_supersolution();
/// The Φ^{-1+2δ} integration-by-parts inequality on seeded random bumps.
CheckResult check_delta_phi_battery(std::uint64_t seed = 42, int samples = 100);
/// d'Alembert oracle convergence and energy-identity refinement.
CheckResult check_solver_convergence();
/// E non-increasing across domain × α × p.
CheckResult check_energy_monotone();
/// Mass outside the light cone.
CheckResult check_finite_propagation();
/// Scaled energy and ∫a u² stay bounded on long runs.
CheckResult check_bound_runs();
/// predict_decay against a frozen exact-arithmetic table and the phase-diagram labels.
CheckResult check_classifier_table();
/// Log-log slope of the remainder integral against its growth row.
CheckResult check_badterm_growth();

/**
 * Per-inequality battery for one weight table: (A1), (A2), (A3), the
 * supersolution bound, the ∂_tΦ identity and the integration-by-parts
 * inequality on `samples` random bumps drawn from `seed`.
 */
std::vector<CheckResult> weight_battery(const ModelParams& params, const RadialGrid& grid,
                                        const WeightKnobs& knobs, std::uint64_t seed, int samples = 100);

/// All eleven, in order.
std::vector<CheckResult> acceptance_suite();

} // namespace dampwave
