#include "dampwave/radial_ops.hpp"

#include <cassert>
#include <cmath>

namespace dampwave {

RadialOperator::RadialOperator(const RadialGrid& grid, int n, bool origin_is_node)
    : grid_(grid), n_(n), origin_(origin_is_node && grid.r_min() == 0.0)
{
    const std::size_t N = grid_.size();
    const double h = grid_.h();
    const double omega = sphere_area(n_);
    auto shell = [this, omega](double lo, double hi) {
        return omega * (std::pow(hi, n_) - std::pow(lo, n_)) / n_;
    };

    volume_.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        const double lo = (i == 0) ? grid_.r_min() : grid_.r(i) - 0.5 * h;
        const double hi = (i + 1 == N) ? grid_.r_max() : grid_.r(i) + 0.5 * h;
        volume_[i] = shell(lo, hi);
    }
    face_.resize(N - 1);
    for (std::size_t i = 0; i + 1 < N; ++i)
        face_[i] = omega * std::pow(grid_.r(i) + 0.5 * h, n_ - 1);
}

RadialOperator RadialOperator::for_params(const RadialGrid& grid, const ModelParams& params)
{
    return RadialOperator(grid, params.n, !params.domain.is_exterior());
}

double RadialOperator::integrate(std::span<const double> f) const
{
    assert(f.size() == size());
    CompensatedSum acc;
    for (std::size_t i = 0; i < f.size(); ++i) acc.add(volume_[i] * f[i]);
    return acc.value();
}

double RadialOperator::integrate_product(std::span<const double> f, std::span<const double> g) const
{
    CompensatedSum acc;
    for (std::size_t i = 0; i < f.size(); ++i) acc.add(volume_[i] * f[i] * g[i]);
    return acc.value();
}

double RadialOperator::gradient_energy(std::span<const double> u, std::span<const double> w) const
{
    const double h = grid_.h();
    CompensatedSum acc;
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
        const double du = (u[i + 1] - u[i]) / h;
        const double wf = w.empty() ? 1.0 : 0.5 * (w[i] + w[i + 1]);
        acc.add(face_[i] * h * du * du * wf);
    }
    return acc.value();
}

double RadialOperator::laplacian_at(std::span<const double> u, std::size_t i) const
{
    const double h = grid_.h();
    const double out_flux = face_[i] * (u[i + 1] - u[i]);
    // Symmetry at the origin: no flux through r = 0.
    const double in_flux = (i == 0) ? 0.0 : face_[i - 1] * (u[i] - u[i - 1]);
    return (out_flux - in_flux) / (h * volume_[i]);
}

void RadialOperator::laplacian(std::span<const double> u, std::span<double> out) const
{
    const std::size_t N = size();
    const double h = grid_.h();
    const std::size_t lo = origin_ ? 0 : 1;
    for (std::size_t i = lo; i + 1 < N; ++i) out[i] = laplacian_at(u, i);

    // One-sided u'' + (n-1)/r u' at boundary nodes.
    auto one_sided = [&](std::size_t i, int dir) {
        const auto at = [&](int k) { return u[static_cast<std::size_t>(static_cast<long>(i) + dir * k)]; };
        const double d2 = (2.0 * at(0) - 5.0 * at(1) + 4.0 * at(2) - at(3)) / (h * h);
        const double d1 = dir * (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * h);
        const double r = grid_.r(i);
        return d2 + (r > 0.0 ? (n_ - 1) / r * d1 : 0.0);
    };
    if (!origin_) out[0] = one_sided(0, +1);
    out[N - 1] = one_sided(N - 1, -1);
}

std::vector<double> RadialOperator::laplacian(std::span<const double> u) const
{
    std::vector<double> out(u.size());
    laplacian(u, out);
    return out;
}

} // namespace dampwave
