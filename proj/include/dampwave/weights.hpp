#pragma once
/**
 * @file weights.hpp
 * @brief The approximate Poisson solution A_ε (ΔA_ε ≈ a) and the space-time
 *        weights built on it:
 *
 *   Ψ(r,t)       = t0 + t + A_ε(r)
 *   Θ(r,t)       = t0 + t + <r>^{2-α}
 *   Φ_{β,ε}(r,t) = (t0+t)^{-β} φ_{β,ε}(γ̃_ε A_ε(r) / (t0+t))
 *
 * A_ε = A0 + a0/((n-α)(2-α)) <r>^{2-α} + w, where Δw = η_ε b2 with
 * b2 = a - Δ(a0/((n-α)(2-α)) <r>^{2-α}) and η_ε a C² cutoff equal to 1 on
 * [0, R_ε] and 0 beyond 2R_ε. w is obtained from the discrete Gauss law on
 * the grid, so Δ_h w = η_ε b2 holds node-wise up to rounding.
 */

#include "dampwave/kummer.hpp"
#include "dampwave/model_core.hpp"
#include "dampwave/radial_ops.hpp"

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

namespace dampwave {

struct AEpsilon {
    double epsilon = 0.1;
    double A0 = 1.0;
    double R_eps = 0.0;
    std::vector<double> values;  // A_ε(r_i)
    std::vector<double> grad;    // ∂_r A_ε(r_i)
    std::vector<double> lap;     // Δ_h A_ε(r_i)
};

/// Cutoff used in the construction: 1 on [0,R], 0 on [2R,∞), quintic smoothstep between.
double cutoff_eta(double r, double R);

/// b1 = Δ(a0/((n-α)(2-α)) <r>^{2-α}) = a0 <r>^{-α} + a0 α/(n-α) <r>^{-α-2}.
double newton_b1(const ModelParams& params, double r);

/**
 * Builds A_ε on the grid. A0 starts at 1 and doubles until (A3) holds at
 * every node; throws ConstructionFailure past 2^40 or when the cutoff
 * support does not fit in the grid.
 */
AEpsilon build_A_eps(const ModelParams& params, const RadialGrid& grid, double epsilon);

struct WeightKnobs {
    double epsilon = 0.1;
    double delta = 0.2;
    double t0 = 10.0;
    double nu = 0.0;  // <= 0 selects the default coupling
};

/// Node-wise check results for (A1)-(A3).
struct AInvariantReport {
    double a1_min_ratio = 0.0;  // min ΔA/a over interior nodes
    double a1_max_ratio = 0.0;  // max ΔA/a over interior nodes
    bool a1_holds = false;
    double a2_c = 0.0;          // min A/<r>^{2-α}
    double a2_C = 0.0;          // max A/<r>^{2-α}
    bool a2_holds = false;
    double a3_max = 0.0;        // max |∇A|²/(aA)
    double a3_bound = 0.0;      // (2-α)/(n-α) + ε
    bool a3_holds = false;

    bool all_hold() const { return a1_holds && a2_holds && a3_holds; }
};

/**
 * @brief Immutable evaluator context for Ψ, Θ and Φ_{β,ε} on one grid.
 */
class WeightTable {
public:
    WeightTable(const ModelParams& params, const RadialGrid& grid, const WeightKnobs& knobs);

    const ModelParams& params() const { return params_; }
    const RadialGrid& grid() const { return op_.grid(); }
    const RadialOperator& op() const { return op_; }
    const AEpsilon& A() const { return A_; }
    const PhiParams& phi_params() const { return phi_; }

    double epsilon() const { return knobs_.epsilon; }
    double delta() const { return knobs_.delta; }
    double t0() const { return knobs_.t0; }
    double beta() const { return phi_.beta; }
    double nu() const { return nu_; }
    /// True when λ < (1-2δ)γ_ε, the range where the Φ-weighted energies apply.
    bool psi_family_admissible() const;

    /// Linear interpolation of A_ε between nodes.
    double A_at(double r) const;

    double psi(double r, double t) const { return knobs_.t0 + t + A_at(r); }
    double psi_node(std::size_t i, double t) const { return knobs_.t0 + t + A_.values[i]; }
    double theta(double r, double t) const;

    /// Φ_{β,ε} with the table's ε and an arbitrary β.
    double phi_weight(double r, double t, double beta) const;
    double phi_weight(double r, double t) const { return phi_weight(r, t, phi_.beta); }
    double phi_weight_node(std::size_t i, double t, double beta) const;
    std::vector<double> phi_weight_nodes(double t, double beta) const;

    AInvariantReport check_A_invariants() const;

    /// Writes r, A, ΔA, (A3) ratio as CSV.
    void dump_csv(std::ostream& os) const;

private:
    ModelParams params_;
    RadialOperator op_;
    WeightKnobs knobs_;
    AEpsilon A_;
    PhiParams phi_;
    double nu_;
};

/// Θ without a table.
double theta_eval(const ModelParams& params, double t0, double r, double t);

/// 0.01 · min_i a(r_i) · min(1, t0^{-α/(2-α)}).
double default_nu(const ModelParams& params, const RadialGrid& grid, double t0);

/**
 * [a ∂_tΦ - Δ_hΦ] / [a Ψ^{-β-1}] at every node with a full stencil; other
 * nodes are NaN. ∂_tΦ uses the closed form -βΦ_{β+1}.
 */
std::vector<double> supersolution_residual(const WeightTable& table, double t, double beta);

struct DeltaPhiCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double margin() const { return rhs - lhs; }
};

/**
 * Discrete form of
 *   ∫ u Δu Φ^{-1+2δ} <= -δ/(1-δ) ∫|∇u|² Φ^{-1+2δ} + (1-2δ)/2 ∫ u² ΔΦ Φ^{-2+2δ}.
 * Throws SupportError when u is nonzero within two nodes of either end.
 */
DeltaPhiCheck delta_phi_inequality_check(const WeightTable& table, std::span<const double> u,
                                         double t, double beta, double delta);

/// Random C² bump supported strictly inside the grid, for the inequality battery.
std::vector<double> random_compact_bump(const RadialGrid& grid, std::uint64_t seed);

} // namespace dampwave
