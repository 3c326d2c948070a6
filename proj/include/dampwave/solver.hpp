#pragma once
/**
 * @file solver.hpp
 * @brief Explicit leapfrog integration of u_tt - Δu + a u_t + |u|^{p-1}u = 0
 *        on a radial grid with homogeneous Dirichlet data at the exterior
 *        boundary and at the truncation radius.
 *
 * Update (damping centred in time, nonlinearity explicit):
 *
 *   u^{k+1} = [2u^k - (1 - a dt/2) u^{k-1} + dt² (Δ_h u^k - |u^k|^{p-1}u^k)] / (1 + a dt/2)
 *
 * The first step is the second-order Taylor start
 *   u^1 = u0 + dt u1 + dt²/2 (Δ_h u0 - a u1 - |u0|^{p-1}u0).
 */

#include "dampwave/energetics.hpp"
#include "dampwave/model_core.hpp"
#include "dampwave/radial_ops.hpp"
#include "dampwave/weights.hpp"

#include <chrono>
#include <optional>
#include <span>
#include <vector>

namespace dampwave {

inline constexpr double kBlowupThreshold = 1e12;

struct WaveState {
    std::vector<double> u;
    std::vector<double> u_prev;
    double t = 0.0;
    long k = 0;
    double dt = 0.0;
};

struct RunConfig {
    double T_final = 10.0;
    double cfl = 0.5;
    int record_every = 1;
    double cone_margin = 0.5;
    bool require_cone = false;   // ConfigError unless r_max clears the light cone
    int snapshot_every = 0;      // 0: no snapshots
    // Verification switches: a ≡ 0 and/or linear equation.
    bool damping = true;
    bool nonlinear = true;
};

struct Snapshot {
    double t = 0.0;
    std::vector<double> u;
    std::vector<double> v;
};

struct RunResult {
    double dt = 0.0;
    long steps = 0;
    std::vector<EnergyRecord> records;
    std::vector<Snapshot> snapshots;
};

/// Courant factor below which leapfrog is stable for this operator (Gershgorin
/// bound on the symmetrised Laplacian; the origin row dominates for n >= 3).
double max_stable_cfl(const RadialOperator& op);

class WaveSolver {
public:
    WaveSolver(const ModelParams& params, const RadialGrid& grid, bool damping = true,
               bool nonlinear = true);

    const RadialOperator& op() const { return op_; }
    std::span<const double> damping() const { return a_; }

    /// u^1 from (u0, u1) by the Taylor start; u_prev holds u0.
    WaveState start(std::span<const double> u0, std::span<const double> u1, double dt) const;

    /// One leapfrog step. Throws BlowupError when max|u| exceeds 1e12.
    WaveState step(const WaveState& state) const;
    /// In-place variant used by run(): writes u^{k+1} into `next`.
    void advance(std::span<const double> u_prev, std::span<const double> u, double dt,
                 std::span<double> next) const;

private:
    double forcing(double u) const;

    ModelParams params_;
    RadialOperator op_;
    std::vector<double> a_;
    bool nonlinear_;
};

/// Number of steps and step size reaching T_final exactly with dt <= cfl·h.
std::pair<long, double> time_stepping(const RunConfig& config, const RadialGrid& grid);

/**
 * Advances to T_final, recording every `record_every` steps (record count
 * floor(steps/record_every) + 1). `table` supplies the weights for the
 * weighted families; `deadline` aborts with BudgetExceeded.
 */
RunResult run(const ModelParams& params, const RadialGrid& grid, const InitialData& data,
              const RunConfig& config, const WeightTable& table, WeightFamily family,
              std::optional<std::chrono::steady_clock::time_point> deadline = std::nullopt);

/// Same with precomputed node samples (u0, u1).
RunResult run(const ModelParams& params, const RadialGrid& grid, std::span<const double> u0,
              std::span<const double> u1, const RunConfig& config, const WeightTable& table,
              WeightFamily family,
              std::optional<std::chrono::steady_clock::time_point> deadline = std::nullopt);

/**
 * max over snapshots of ∫_{r > R0 + t + margin} u² dμ (mass outside the light
 * cone of data supported in B_{R0}).
 */
double finite_propagation_check(std::span<const Snapshot> series, const ModelParams& params,
                                const RadialGrid& grid, double support_radius, double margin);

} // namespace dampwave
