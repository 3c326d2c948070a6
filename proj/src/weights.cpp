#include "dampwave/weights.hpp"

#include "dampwave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

namespace dampwave {

namespace {

double base_coefficient(const ModelParams& params)
{
    return params.a0 / ((params.n - params.alpha) * (2.0 - params.alpha));
}

double b2_at(const ModelParams& params, double r)
{
    return damping_at(params, r) - newton_b1(params, r);
}

} // namespace

double cutoff_eta(double r, double R)
{
    if (R <= 0.0 || r >= 2.0 * R) return 0.0;
    if (r <= R) return 1.0;
    const double x = (r - R) / R;
    return 1.0 - x * x * x * (10.0 - 15.0 * x + 6.0 * x * x);
}

double newton_b1(const ModelParams& params, double r)
{
    const double a0 = params.a0;
    const double al = params.alpha;
    const double q = 1.0 + r * r;
    return a0 * std::pow(q, -0.5 * al) + a0 * al / (params.n - al) * std::pow(q, -0.5 * al - 1.0);
}

AEpsilon build_A_eps(const ModelParams& params, const RadialGrid& grid, double epsilon)
{
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("build_A_eps: epsilon outside (0, 1)");
    if (!(params.alpha < std::min(2.0, static_cast<double>(params.n))))
        throw DomainError("build_A_eps: alpha must be below min(2, n)");

    const RadialOperator op = RadialOperator::for_params(grid, params);
    const std::size_t N = grid.size();
    const int n = params.n;
    const double h = grid.h();
    const double omega = sphere_area(n);
    const double c = base_coefficient(params);
    const double al = params.alpha;

    AEpsilon out;
    out.epsilon = epsilon;

    // R_ε: smallest node radius beyond which |b2| <= ε a everywhere on the grid.
    std::size_t first_ok = N;
    for (std::size_t i = N; i-- > 0;) {
        const double r = grid.r(i);
        if (std::abs(b2_at(params, r)) <= epsilon * damping_at(params, r))
            first_ok = i;
        else
            break;
    }
    if (first_ok == N) throw ConstructionFailure("build_A_eps: |b2| <= eps*a fails at the outer edge");
    out.R_eps = (first_ok == 0 && grid.r_min() == 0.0) ? 0.0 : grid.r(first_ok);
    const double R = out.R_eps;
    if (2.0 * R >= grid.r_max() - h) {
        std::ostringstream msg;
        msg << "build_A_eps: cutoff support 2R_eps = " << 2.0 * R << " does not fit below r_max";
        throw ConstructionFailure(msg.str());
    }

    // Discrete Gauss law for Δw = η b2: flux through face i+1/2 equals the
    // source content of nodes 0..i (plus the ball inside r_min).
    std::vector<double> source(N);
    for (std::size_t i = 0; i < N; ++i) {
        const double r = grid.r(i);
        source[i] = cutoff_eta(r, R) * b2_at(params, r);
    }
    const double inner = op.inner_ball_integral(
        [&](double r) { return cutoff_eta(r, R) * b2_at(params, r); });

    std::vector<double> flux(N - 1);
    {
        CompensatedSum acc;
        acc.add(inner);
        for (std::size_t i = 0; i + 1 < N; ++i) {
            acc.add(op.volumes()[i] * source[i]);
            flux[i] = acc.value();
        }
    }
    std::vector<double> w(N, 0.0);
    for (std::size_t i = 0; i + 1 < N; ++i) w[i + 1] = w[i] + h * flux[i] / op.face_areas()[i];
    if (n >= 3) {
        // Normalise w(∞) = 0; the flux is constant beyond 2R_ε.
        const double rN = grid.r_max();
        const double w_inf = w[N - 1] + flux[N - 2] * std::pow(rN, 2 - n) / (omega * (n - 2));
        for (auto& v : w) v -= w_inf;
    }

    std::vector<double> base(N);
    out.grad.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        const double r = grid.r(i);
        base[i] = c * std::pow(1.0 + r * r, 0.5 * (2.0 - al)) + w[i];
        double enclosed;
        if (i == 0)
            enclosed = inner;
        else if (i + 1 == N)
            enclosed = flux[N - 2];
        else
            enclosed = 0.5 * (flux[i - 1] + flux[i]);
        const double dw = (r > 0.0) ? enclosed / (omega * std::pow(r, n - 1)) : 0.0;
        out.grad[i] = c * (2.0 - al) * r * std::pow(1.0 + r * r, -0.5 * al) + dw;
    }

    const double bound = (2.0 - al) / (n - al) + epsilon;
    auto admissible = [&](double A0) {
        for (std::size_t i = 0; i < N; ++i) {
            const double A = A0 + base[i];
            if (!(A > 0.0)) return false;
            const double g = out.grad[i];
            if (g * g / (damping_at(params, grid.r(i)) * A) > bound) return false;
        }
        return true;
    };
    double A0 = 1.0;
    const double cap = std::ldexp(1.0, 40);
    while (!admissible(A0)) {
        A0 *= 2.0;
        if (A0 > cap) throw ConstructionFailure("build_A_eps: A0 doubling reached 2^40 without (A3)");
    }
    out.A0 = A0;
    out.values.resize(N);
    for (std::size_t i = 0; i < N; ++i) out.values[i] = A0 + base[i];
    out.lap = op.laplacian(out.values);
    return out;
}

WeightTable::WeightTable(const ModelParams& params, const RadialGrid& grid, const WeightKnobs& knobs)
    : params_(params), op_(RadialOperator::for_params(grid, params)), knobs_(knobs)
{
    std::vector<std::string> bad;
    if (!(knobs.delta > 0.0 && knobs.delta < 0.5)) bad.push_back("delta must lie in (0, 1/2)");
    if (!(knobs.t0 >= 1.0)) bad.push_back("t0 must be >= 1");
    if (!(knobs.epsilon > 0.0 && knobs.epsilon < 0.5)) bad.push_back("epsilon must lie in (0, 1/2)");
    if (!bad.empty()) throw ValidationError(std::move(bad));

    A_ = build_A_eps(params, grid, knobs.epsilon);
    phi_ = PhiParams::make(params.n, params.alpha, knobs.epsilon,
                           params.lambda / (1.0 - 2.0 * knobs.delta));
    nu_ = knobs.nu > 0.0 ? knobs.nu : default_nu(params, grid, knobs.t0);
}

bool WeightTable::psi_family_admissible() const
{
    return params_.lambda < (1.0 - 2.0 * knobs_.delta) * phi_.gamma;
}

double WeightTable::A_at(double r) const
{
    const auto& g = grid();
    const double x = (r - g.r_min()) / g.h();
    if (x <= 0.0) return A_.values.front();
    const auto i = static_cast<std::size_t>(x);
    if (i + 1 >= g.size()) return A_.values.back();
    const double f = x - static_cast<double>(i);
    return (1.0 - f) * A_.values[i] + f * A_.values[i + 1];
}

double WeightTable::theta(double r, double t) const { return theta_eval(params_, knobs_.t0, r, t); }

double WeightTable::phi_weight(double r, double t, double beta) const
{
    const double T = knobs_.t0 + t;
    return std::pow(T, -beta) * phi(phi_.with_beta(beta), phi_.gamma_tilde * A_at(r) / T);
}

double WeightTable::phi_weight_node(std::size_t i, double t, double beta) const
{
    const double T = knobs_.t0 + t;
    return std::pow(T, -beta) * phi(phi_.with_beta(beta), phi_.gamma_tilde * A_.values[i] / T);
}

std::vector<double> WeightTable::phi_weight_nodes(double t, double beta) const
{
    std::vector<double> out(A_.values.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = phi_weight_node(i, t, beta);
    return out;
}

AInvariantReport WeightTable::check_A_invariants() const
{
    AInvariantReport rep;
    const auto& g = grid();
    const double eps = knobs_.epsilon;
    rep.a1_min_ratio = std::numeric_limits<double>::infinity();
    rep.a1_max_ratio = -std::numeric_limits<double>::infinity();
    for (std::size_t i = op_.first_free(); i <= op_.last_free(); ++i) {
        const double ratio = A_.lap[i] / damping_at(params_, g.r(i));
        rep.a1_min_ratio = std::min(rep.a1_min_ratio, ratio);
        rep.a1_max_ratio = std::max(rep.a1_max_ratio, ratio);
    }
    rep.a1_holds = rep.a1_min_ratio >= 1.0 - eps && rep.a1_max_ratio <= 1.0 + eps;

    rep.a2_c = std::numeric_limits<double>::infinity();
    rep.a2_C = 0.0;
    rep.a3_max = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double r = g.r(i);
        const double ratio = A_.values[i] / std::pow(1.0 + r * r, 0.5 * (2.0 - params_.alpha));
        rep.a2_c = std::min(rep.a2_c, ratio);
        rep.a2_C = std::max(rep.a2_C, ratio);
        const double gr = A_.grad[i];
        rep.a3_max = std::max(rep.a3_max, gr * gr / (damping_at(params_, r) * A_.values[i]));
    }
    rep.a2_holds = rep.a2_c > 0.0 && std::isfinite(rep.a2_C);
    rep.a3_bound = (2.0 - params_.alpha) / (params_.n - params_.alpha) + eps;
    rep.a3_holds = rep.a3_max <= rep.a3_bound;
    return rep;
}

void WeightTable::dump_csv(std::ostream& os) const
{
    const auto& g = grid();
    os << "r,A,lapA,a3_ratio\n" << std::setprecision(17);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double r = g.r(i);
        const double gr = A_.grad[i];
        os << r << ',' << A_.values[i] << ',' << A_.lap[i] << ','
           << gr * gr / (damping_at(params_, r) * A_.values[i]) << '\n';
    }
}

double theta_eval(const ModelParams& params, double t0, double r, double t)
{
    return t0 + t + std::pow(1.0 + r * r, 0.5 * (2.0 - params.alpha));
}

double default_nu(const ModelParams& params, const RadialGrid& grid, double t0)
{
    double amin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) amin = std::min(amin, damping_at(params, grid.r(i)));
    const double tfac = std::min(1.0, std::pow(t0, -params.alpha / (2.0 - params.alpha)));
    return 0.01 * amin * tfac;
}

std::vector<double> supersolution_residual(const WeightTable& table, double t, double beta)
{
    if (!(beta > 0.0)) throw DomainError("supersolution_residual: beta must be positive");
    const auto& op = table.op();
    const auto& g = table.grid();
    const std::size_t N = g.size();
    const auto Phi = table.phi_weight_nodes(t, beta);
    std::vector<double> out(N, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = op.first_free(); i <= op.last_free(); ++i) {
        const double a = damping_at(table.params(), g.r(i));
        const double dt_phi = -beta * table.phi_weight_node(i, t, beta + 1.0);
        const double lap = op.laplacian_at(Phi, i);
        out[i] = (a * dt_phi - lap) / (a * std::pow(table.psi_node(i, t), -beta - 1.0));
    }
    return out;
}

DeltaPhiCheck delta_phi_inequality_check(const WeightTable& table, std::span<const double> u,
                                         double t, double beta, double delta)
{
    const auto& op = table.op();
    const std::size_t N = op.size();
    if (u.size() != N) throw SupportError("delta_phi_inequality_check: size mismatch");
    const bool check_inner = !op.origin_is_node();
    for (std::size_t k = 0; k < 2; ++k) {
        if (u[N - 1 - k] != 0.0 || (check_inner && u[k] != 0.0))
            throw SupportError("delta_phi_inequality_check: u must vanish within two nodes of the boundary");
    }

    const auto Phi = table.phi_weight_nodes(t, beta);
    std::vector<double> W(N), pot(N);
    const auto lap_u = op.laplacian(u);
    const auto lap_phi = op.laplacian(Phi);
    std::vector<double> lhs_dens(N);
    for (std::size_t i = 0; i < N; ++i) {
        W[i] = std::pow(Phi[i], -1.0 + 2.0 * delta);
        lhs_dens[i] = u[i] * lap_u[i] * W[i];
        pot[i] = u[i] * u[i] * lap_phi[i] * std::pow(Phi[i], -2.0 + 2.0 * delta);
    }
    DeltaPhiCheck out;
    out.lhs = op.integrate(lhs_dens);
    out.rhs = -delta / (1.0 - delta) * op.gradient_energy(u, W)
              + 0.5 * (1.0 - 2.0 * delta) * op.integrate(pot);
    return out;
}

std::vector<double> random_compact_bump(const RadialGrid& grid, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double lo = grid.r_min() + 3.0 * grid.h();
    const double hi = grid.r_max() - 3.0 * grid.h();
    const double L = hi - lo;
    const int bumps = 1 + static_cast<int>(unit(rng) * 3.0);
    std::vector<double> u(grid.size(), 0.0);
    for (int b = 0; b < bumps; ++b) {
        const double center = lo + L * (0.1 + 0.5 * unit(rng));
        const double max_w = std::min({center - lo, hi - center, 0.25 * L});
        const CompactBump bump{center, max_w * (0.2 + 0.8 * unit(rng)), 4.0 * unit(rng) - 2.0};
        for (std::size_t i = 0; i < u.size(); ++i) u[i] += profile_value(bump, grid.r(i));
    }
    return u;
}

} // namespace dampwave
