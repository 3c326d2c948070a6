#include "dampwave/model_core.hpp"

#include "dampwave/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace dampwave {

std::vector<std::string> ModelParams::violations() const
{
    std::vector<std::string> out;
    auto fail = [&out](const std::string& s) { out.push_back(s); };

    if (n < 1) fail("n must be a positive integer");
    if (!(alpha >= 0.0 && alpha < 1.0)) fail("alpha must lie in [0, 1)");
    if (!(a0 > 0.0)) fail("a0 must be positive");
    if (!(a1 >= a0)) fail("a1 must be >= a0");
    if (!(lambda >= 0.0)) fail("lambda must be >= 0");
    if (!(p > 1.0) || !std::isfinite(p)) {
        fail("condition (p): p must satisfy 1 < p < inf");
    } else if (n >= 3 && p > static_cast<double>(n) / (n - 2)) {
        std::ostringstream msg;
        msg << "condition (p): 1 < p <= n/(n-2) = " << static_cast<double>(n) / (n - 2)
            << " for n = " << n << ", got p = " << p;
        fail(msg.str());
    }
    if (domain.is_exterior()) {
        if (n < 2) fail("ExteriorBall requires n >= 2");
        if (!(domain.r0 > 0.0)) fail("ExteriorBall requires r0 > 0");
    }
    if (damping == DampingProfile::Constant && alpha != 0.0)
        fail("Constant damping forces alpha = 0");
    return out;
}

void ModelParams::validate() const
{
    auto v = violations();
    if (!v.empty()) throw ValidationError(std::move(v));
}

double bracket(double r) { return std::sqrt(1.0 + r * r); }

double sphere_area(int n)
{
    const double half = 0.5 * n;
    return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

double damping_at(const ModelParams& params, double r)
{
    if (params.damping == DampingProfile::Constant || params.alpha == 0.0) return params.a0;
    return params.a0 * std::pow(1.0 + r * r, -0.5 * params.alpha);
}

RadialGrid::RadialGrid(double r_min, double r_max, std::size_t nodes)
    : r_min_(r_min), r_max_(r_max), nodes_(nodes)
{
    if (!(r_min >= 0.0) || !(r_max > r_min))
        throw ConfigError("radial grid needs r_max > r_min >= 0");
    if (nodes < 16) throw ConfigError("radial grid needs at least 16 nodes");
    h_ = (r_max - r_min) / static_cast<double>(nodes - 1);
}

RadialGrid RadialGrid::for_domain(const ModelParams& params, double r_max, std::size_t nodes)
{
    const double r_min = params.domain.is_exterior() ? params.domain.r0 : 0.0;
    return RadialGrid(r_min, r_max, nodes);
}

std::vector<double> RadialGrid::radii() const
{
    std::vector<double> out(nodes_);
    for (std::size_t i = 0; i < nodes_; ++i) out[i] = r(i);
    return out;
}

namespace {

struct ProfileEval {
    double r;
    double operator()(const ZeroProfile&) const { return 0.0; }
    double operator()(const CompactBump& b) const
    {
        const double x = (r - b.center) / b.width;
        if (std::abs(x) >= 1.0) return 0.0;
        const double s = 1.0 - x * x;
        return b.amplitude * s * s * s;
    }
    double operator()(const PolyDecay& d) const
    {
        return d.amplitude * std::pow(1.0 + r * r, -0.5 * d.q);
    }
};

struct SupportEval {
    double operator()(const ZeroProfile&) const { return 0.0; }
    double operator()(const CompactBump& b) const { return b.center + b.width; }
    double operator()(const PolyDecay&) const { return std::numeric_limits<double>::infinity(); }
};

} // namespace

double profile_value(const Profile& profile, double r) { return std::visit(ProfileEval{r}, profile); }

double profile_support_radius(const Profile& profile) { return std::visit(SupportEval{}, profile); }

double InitialData::support_radius() const
{
    return std::max(profile_support_radius(u0), profile_support_radius(u1));
}

bool poly_decay_admissible(double q, DataRole role, const ModelParams& params)
{
    // Tail exponents of the I0 integrand in r, including the r^{n-1} Jacobian:
    // integrable iff every exponent is below -1.
    const double n = params.n;
    const double weight = params.lambda * (2.0 - params.alpha);
    if (role == DataRole::Velocity) return 2.0 * q > n + params.alpha + weight;
    const bool l2_part = 2.0 * q > n - params.alpha + weight;
    const bool grad_part = 2.0 * q + 2.0 > n + params.alpha + weight;
    const bool pot_part = q * (params.p + 1.0) > n + params.alpha + weight;
    return l2_part && grad_part && pot_part;
}

SampledData sample_initial_data(const InitialData& data, const RadialGrid& grid,
                                const ModelParams& params)
{
    auto check = [&](const Profile& prof, DataRole role, const char* name) {
        if (const auto* d = std::get_if<PolyDecay>(&prof)) {
            if (!poly_decay_admissible(d->q, role, params)) {
                std::ostringstream msg;
                msg << name << ": PolyDecay q = " << d->q
                    << " makes I0 diverge for lambda = " << params.lambda;
                throw ProfileUnsupported(msg.str());
            }
        }
    };
    check(data.u0, DataRole::Displacement, "u0");
    check(data.u1, DataRole::Velocity, "u1");

    SampledData out{std::vector<double>(grid.size()), std::vector<double>(grid.size())};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out.u0[i] = profile_value(data.u0, grid.r(i));
        out.u1[i] = profile_value(data.u1, grid.r(i));
    }
    if (params.domain.is_exterior()) {
        out.u0.front() = 0.0;
        out.u1.front() = 0.0;
    }
    out.u0.back() = 0.0;
    out.u1.back() = 0.0;
    return out;
}

} // namespace dampwave
