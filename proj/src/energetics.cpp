#include "dampwave/energetics.hpp"

#include <algorithm>
#include <cmath>

namespace dampwave {

namespace {

double potential(double u, double p) { return std::pow(std::abs(u), p + 1.0) / (p + 1.0); }

std::vector<double> damping_nodes(const RadialOperator& op, const ModelParams& params)
{
    std::vector<double> a(op.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = damping_at(params, op.grid().r(i));
    return a;
}

// ∫ [½v² + |u|^{p+1}/(p+1)] w + ½ ∫ |∂_r u|² w.
double weighted_energy(const RadialOperator& op, double p, std::span<const double> u,
                       std::span<const double> v, std::span<const double> w)
{
    std::vector<double> dens(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) dens[i] = (0.5 * v[i] * v[i] + potential(u[i], p)) * w[i];
    return op.integrate(dens) + 0.5 * op.gradient_energy(u, w);
}

} // namespace

double energy_E(const RadialOperator& op, const ModelParams& params,
                std::span<const double> u, std::span<const double> v)
{
    std::vector<double> dens(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) dens[i] = 0.5 * v[i] * v[i] + potential(u[i], params.p);
    return op.integrate(dens) + 0.5 * op.gradient_energy(u);
}

double weighted_l2(const RadialOperator& op, const ModelParams& params, std::span<const double> u)
{
    std::vector<double> dens(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) dens[i] = damping_at(params, op.grid().r(i)) * u[i] * u[i];
    return op.integrate(dens);
}

double plain_l2(const RadialOperator& op, std::span<const double> u) { return op.integrate_product(u, u); }

double dissipation_rate(const RadialOperator& op, const ModelParams& params, std::span<const double> v)
{
    return weighted_l2(op, params, v);
}

I0Result i0_norm(std::span<const double> u0, std::span<const double> u1,
                 const ModelParams& params, const RadialGrid& grid)
{
    const RadialOperator op = RadialOperator::for_params(grid, params);
    const std::size_t N = grid.size();
    const double al = params.alpha;
    const double lam_w = params.lambda * (2.0 - al);

    std::vector<double> dens(N), grad_w(N);
    for (std::size_t i = 0; i < N; ++i) {
        const double b = bracket(grid.r(i));
        const double w = std::pow(b, lam_w);
        dens[i] = ((u1[i] * u1[i] + std::pow(std::abs(u0[i]), params.p + 1.0)) * std::pow(b, al)
                   + u0[i] * u0[i] * std::pow(b, -al)) * w;
        grad_w[i] = std::pow(b, al) * w;
    }
    I0Result out;
    out.value = op.integrate(dens) + op.gradient_energy(u0, grad_w);

    // Tail test on r * density * r^{n-1} (the integrand in d log r), away
    // from the truncation node.
    const std::size_t i1 = N / 2;
    const std::size_t i2 = N - 3;
    auto tail = [&](std::size_t i) {
        const double r = grid.r(i);
        const double h = grid.h();
        const double du = (u0[i + 1] - u0[i - 1]) / (2.0 * h);
        const double full = dens[i] + du * du * grad_w[i];
        return full * std::pow(r, params.n);
    };
    const double f1 = tail(i1);
    const double f2 = tail(i2);
    if (f1 > 0.0 && f2 > 0.0) out.divergent_tail = f2 >= f1;
    return out;
}

FamilyValues energy_family(std::span<const double> u, std::span<const double> v, double t,
                           const WeightTable& table, WeightFamily family)
{
    const auto& op = table.op();
    const auto& params = table.params();
    const auto& g = table.grid();
    const std::size_t N = g.size();
    const double lam = params.lambda;
    const double sigma = params.alpha / (2.0 - params.alpha);
    const double delta = table.delta();

    std::vector<double> scale(N);
    for (std::size_t i = 0; i < N; ++i)
        scale[i] = (family == WeightFamily::Psi) ? table.psi_node(i, t) : table.theta(g.r(i), t);

    std::vector<double> w1(N), wl(N), w0(N);
    for (std::size_t i = 0; i < N; ++i) {
        w1[i] = std::pow(scale[i], lam + sigma);
        wl[i] = std::pow(scale[i], lam);
    }
    if (family == WeightFamily::Psi) {
        const auto Phi = table.phi_weight_nodes(t, table.beta());
        for (std::size_t i = 0; i < N; ++i) w0[i] = std::pow(Phi[i], -1.0 + 2.0 * delta);
    } else {
        w0 = wl;
    }

    const auto a = damping_nodes(op, params);
    std::vector<double> e0(N), au2(N);
    for (std::size_t i = 0; i < N; ++i) {
        e0[i] = (2.0 * u[i] * v[i] + a[i] * u[i] * u[i]) * w0[i];
        au2[i] = a[i] * u[i] * u[i] * wl[i];
    }

    FamilyValues out;
    out.E1 = weighted_energy(op, params.p, u, v, w1);
    out.E0 = op.integrate(e0);
    out.Estar = out.E1 + table.nu() * out.E0;
    out.Etilde = (table.t0() + t) * weighted_energy(op, params.p, u, v, wl);
    out.estar_slack = out.Estar - 0.5 * out.E1 - 0.5 * table.nu() * op.integrate(au2);
    return out;
}

WeightFamily default_family(const WeightTable& table)
{
    return table.psi_family_admissible() ? WeightFamily::Psi : WeightFamily::Theta;
}

EnergyRecord make_record(double t, std::span<const double> u, std::span<const double> v,
                         const WeightTable& table, WeightFamily family)
{
    const auto& op = table.op();
    const auto& params = table.params();
    EnergyRecord rec;
    rec.t = t;
    rec.E = energy_E(op, params, u, v);
    rec.aL2 = weighted_l2(op, params, u);
    rec.L2 = plain_l2(op, u);
    const auto fam = energy_family(u, v, t, table, family);
    rec.E1 = fam.E1;
    rec.E0 = fam.E0;
    rec.Estar = fam.Estar;
    rec.Etilde = fam.Etilde;
    rec.estar_slack = fam.estar_slack;
    const double T = table.t0() + t;
    rec.scaled_E = std::pow(T, 1.0 + params.lambda) * rec.E;
    rec.scaled_aL2 = std::pow(T, params.lambda) * rec.aL2;
    return rec;
}

double energy_identity_residual(std::span<const EnergyRecord> records)
{
    double worst = 0.0;
    if (records.empty()) return worst;
    const auto& first = records.front();
    for (const auto& r : records)
        worst = std::max(worst, std::abs(r.E - first.E + r.dissipated - first.dissipated));
    return worst;
}

} // namespace dampwave
