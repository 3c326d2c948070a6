#include "dampwave/solver.hpp"

#include "dampwave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dampwave {

double max_stable_cfl(const RadialOperator& op)
{
    const auto V = op.volumes();
    const auto F = op.face_areas();
    const double h = op.grid().h();
    double bound = 0.0;
    for (std::size_t i = op.first_free(); i <= op.last_free(); ++i) {
        const double in = (i == 0) ? 0.0 : F[i - 1];
        double row = (in + F[i]) / (h * V[i]);
        if (i > 0 && i - 1 >= op.first_free()) row += F[i - 1] / (h * std::sqrt(V[i - 1] * V[i]));
        if (i + 1 <= op.last_free()) row += F[i] / (h * std::sqrt(V[i] * V[i + 1]));
        bound = std::max(bound, row);
    }
    return 2.0 / (h * std::sqrt(bound));
}

WaveSolver::WaveSolver(const ModelParams& params, const RadialGrid& grid, bool damping, bool nonlinear)
    : params_(params), op_(RadialOperator::for_params(grid, params)), a_(grid.size(), 0.0),
      nonlinear_(nonlinear)
{
    params.validate();
    if (damping)
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] = damping_at(params, grid.r(i));
}

double WaveSolver::forcing(double u) const
{
    if (!nonlinear_ || u == 0.0) return 0.0;
    return std::pow(std::abs(u), params_.p - 1.0) * u;
}

WaveState WaveSolver::start(std::span<const double> u0, std::span<const double> u1, double dt) const
{
    const std::size_t N = op_.size();
    WaveState s;
    s.u_prev.assign(u0.begin(), u0.end());
    s.u.assign(N, 0.0);
    s.dt = dt;
    s.t = dt;
    s.k = 1;
    for (std::size_t i = op_.first_free(); i <= op_.last_free(); ++i) {
        const double lap = op_.laplacian_at(u0, i);
        s.u[i] = u0[i] + dt * u1[i] + 0.5 * dt * dt * (lap - a_[i] * u1[i] - forcing(u0[i]));
    }
    return s;
}

void WaveSolver::advance(std::span<const double> u_prev, std::span<const double> u, double dt,
                         std::span<double> next) const
{
    const std::size_t N = op_.size();
    const double dt2 = dt * dt;
    double peak = 0.0;
    for (std::size_t i = op_.first_free(); i <= op_.last_free(); ++i) {
        const double half = 0.5 * a_[i] * dt;
        const double rhs = 2.0 * u[i] - (1.0 - half) * u_prev[i]
                           + dt2 * (op_.laplacian_at(u, i) - forcing(u[i]));
        next[i] = rhs / (1.0 + half);
        peak = std::max(peak, std::abs(next[i]));
    }
    if (!op_.origin_is_node()) next[0] = 0.0;
    next[N - 1] = 0.0;
    if (!(peak <= kBlowupThreshold)) {
        std::ostringstream msg;
        msg << "leapfrog blow-up: max|u| = " << peak << " exceeds " << kBlowupThreshold;
        throw BlowupError(msg.str());
    }
}

WaveState WaveSolver::step(const WaveState& state) const
{
    WaveState out;
    out.u.assign(op_.size(), 0.0);
    advance(state.u_prev, state.u, state.dt, out.u);
    out.u_prev = state.u;
    out.dt = state.dt;
    out.k = state.k + 1;
    out.t = static_cast<double>(out.k) * state.dt;
    return out;
}

std::pair<long, double> time_stepping(const RunConfig& config, const RadialGrid& grid)
{
    const double target = config.cfl * grid.h();
    if (config.T_final <= 0.0) return {0L, target};
    const long steps = static_cast<long>(std::ceil(config.T_final / target - 1e-9));
    return {steps, config.T_final / static_cast<double>(steps)};
}

RunResult run(const ModelParams& params, const RadialGrid& grid, const InitialData& data,
              const RunConfig& config, const WeightTable& table, WeightFamily family,
              std::optional<std::chrono::steady_clock::time_point> deadline)
{
    if (config.require_cone) {
        const double need = data.support_radius() + config.T_final + config.cone_margin;
        if (grid.r_max() < need) {
            std::ostringstream msg;
            msg << "r_max = " << grid.r_max() << " is inside the light cone; need >= " << need;
            throw ConfigError(msg.str());
        }
    }
    const auto sampled = sample_initial_data(data, grid, params);
    return run(params, grid, sampled.u0, sampled.u1, config, table, family, deadline);
}

RunResult run(const ModelParams& params, const RadialGrid& grid, std::span<const double> u0,
              std::span<const double> u1, const RunConfig& config, const WeightTable& table,
              WeightFamily family, std::optional<std::chrono::steady_clock::time_point> deadline)
{
    const WaveSolver solver(params, grid, config.damping, config.nonlinear);
    const auto& op = solver.op();
    if (!(config.cfl > 0.0 && config.cfl <= 0.9))
        throw ConfigError("cfl must lie in (0, 0.9]");
    if (config.cfl >= max_stable_cfl(op)) {
        std::ostringstream msg;
        msg << "cfl = " << config.cfl << " exceeds the stability limit " << max_stable_cfl(op)
            << " of the radial stencil";
        throw ConfigError(msg.str());
    }
    if (config.record_every < 1) throw ConfigError("record_every must be >= 1");

    const auto [steps, dt] = time_stepping(config, grid);
    const std::size_t N = grid.size();

    RunResult result;
    result.dt = dt;
    result.steps = steps;

    std::vector<double> prev(u0.begin(), u0.end());
    std::vector<double> cur = solver.start(u0, u1, dt).u;
    std::vector<double> next(N, 0.0);
    std::vector<double> vel(u1.begin(), u1.end());

    double dissipated = 0.0;
    auto rate_of = [&](std::span<const double> v) {
        CompensatedSum acc;
        const auto a = solver.damping();
        const auto V = op.volumes();
        for (std::size_t i = 0; i < N; ++i) acc.add(V[i] * a[i] * v[i] * v[i]);
        return acc.value();
    };
    double rate_prev = rate_of(vel);

    auto emit = [&](long k, std::span<const double> u, std::span<const double> v) {
        const double t = static_cast<double>(k) * dt;
        if (k % config.record_every == 0) {
            auto rec = make_record(t, u, v, table, family);
            rec.dissipated = dissipated;
            result.records.push_back(rec);
        }
        if (config.snapshot_every > 0 && k % config.snapshot_every == 0)
            result.snapshots.push_back({t, std::vector<double>(u.begin(), u.end()),
                                        std::vector<double>(v.begin(), v.end())});
    };
    emit(0, prev, vel);

    for (long k = 1; k <= steps; ++k) {
        solver.advance(prev, cur, dt, next);
        for (std::size_t i = 0; i < N; ++i) vel[i] = (next[i] - prev[i]) / (2.0 * dt);
        const double rate = rate_of(vel);
        dissipated += 0.5 * dt * (rate_prev + rate);
        rate_prev = rate;
        emit(k, cur, vel);
        std::swap(prev, cur);
        std::swap(cur, next);
        if (deadline && (k & 63) == 0 && std::chrono::steady_clock::now() > *deadline)
            throw BudgetExceeded("run exceeded its time budget");
    }
    return result;
}

double finite_propagation_check(std::span<const Snapshot> series, const ModelParams& params,
                                const RadialGrid& grid, double support_radius, double margin)
{
    const RadialOperator op = RadialOperator::for_params(grid, params);
    double worst = 0.0;
    for (const auto& snap : series) {
        const double edge = support_radius + snap.t + margin;
        std::vector<double> outside(grid.size(), 0.0);
        for (std::size_t i = 0; i < grid.size(); ++i)
            if (grid.r(i) > edge) outside[i] = snap.u[i] * snap.u[i];
        worst = std::max(worst, op.integrate(outside));
    }
    return worst;
}

} // namespace dampwave
