#include "dampwave/errors.hpp"
#include "dampwave/weights.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace dampwave;

namespace {

ModelParams model(int n, double alpha, double lambda = 0.0)
{
    ModelParams m;
    m.n = n;
    m.alpha = alpha;
    m.p = 2.0;
    m.lambda = lambda;
    return m;
}

} // namespace

TEST_CASE("cutoff is 1 inside R, 0 beyond 2R, monotone between")
{
    CHECK(cutoff_eta(0.5, 2.0) == 1.0);
    CHECK(cutoff_eta(2.0, 2.0) == 1.0);
    CHECK(cutoff_eta(4.0, 2.0) == 0.0);
    CHECK(cutoff_eta(3.0, 2.0) == doctest::Approx(0.5));
    double prev = 1.0;
    for (double r = 2.0; r <= 4.0; r += 0.01) {
        CHECK(cutoff_eta(r, 2.0) <= prev + 1e-15);
        prev = cutoff_eta(r, 2.0);
    }
    CHECK(cutoff_eta(1.0, 0.0) == 0.0);
}

TEST_CASE("Newton term b1 is the Laplacian of the power profile")
{
    const auto m = model(3, 0.5);
    const double c = m.a0 / ((m.n - m.alpha) * (2.0 - m.alpha));
    auto f = [&](double r) { return c * std::pow(1.0 + r * r, 0.5 * (2.0 - m.alpha)); };
    for (double r : {0.5, 2.0, 7.0}) {
        const double h = 1e-3;
        const double lap = (f(r + h) - 2 * f(r) + f(r - h)) / (h * h) + (m.n - 1) / r * (f(r + h) - f(r - h)) / (2 * h);
        CHECK(lap == doctest::Approx(newton_b1(m, r)).epsilon(1e-6));
    }
}

TEST_CASE("discrete Laplacian of A_eps matches b1 + eta b2")
{
    const auto m = model(3, 0.5);
    const RadialGrid g(0.0, 60.0, 4096);
    const auto A = build_A_eps(m, g, 0.1);
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        const double r = g.r(i);
        const double b1 = newton_b1(m, r);
        const double b2 = damping_at(m, r) - b1;
        worst = std::max(worst, std::abs(A.lap[i] - (b1 + cutoff_eta(r, A.R_eps) * b2)) / damping_at(m, r));
    }
    CHECK(worst < 1e-3);
    CHECK(A.A0 >= 1.0);
}

TEST_CASE("A_eps satisfies the three structural bounds")
{
    for (int n : {1, 2, 3}) {
        CAPTURE(n);
        const auto m = model(n, n == 1 ? 0.5 : 0.25);
        const WeightTable table(m, RadialGrid(0.0, 60.0, 4096), WeightKnobs{});
        const auto rep = table.check_A_invariants();
        CHECK(rep.a1_holds);
        CHECK(rep.a2_holds);
        CHECK(rep.a3_holds);
        CHECK(rep.a3_max <= rep.a3_bound);
    }
}

TEST_CASE("exterior domain construction")
{
    auto m = model(3, 0.5);
    m.domain = Domain::exterior_ball(1.0);
    const WeightTable table(m, RadialGrid::for_domain(m, 60.0, 4096), WeightKnobs{});
    CHECK(table.check_A_invariants().all_hold());
}

TEST_CASE("invalid knobs are all reported")
{
    const auto m = model(3, 0.5);
    WeightKnobs k;
    k.delta = 0.7;
    k.t0 = 0.5;
    k.epsilon = 0.6;
    try {
        WeightTable t(m, RadialGrid(0.0, 60.0, 512), k);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.violations().size() == 3);
    }
    CHECK_THROWS_AS(build_A_eps(m, RadialGrid(0.0, 60.0, 512), 0.0), DomainError);
}

TEST_CASE("lambda = 0 gives the trivial weight")
{
    const WeightTable table(model(3, 0.5), RadialGrid(0.0, 40.0, 1024), WeightKnobs{});
    CHECK(table.beta() == 0.0);
    for (double r : {0.0, 3.0, 30.0})
        for (double t : {0.0, 5.0}) CHECK(table.phi_weight(r, t) == 1.0);
}

TEST_CASE("weight exponent and family admissibility")
{
    WeightKnobs k;
    k.delta = 0.25;
    const WeightTable low(model(3, 0.5, 0.2), RadialGrid(0.0, 40.0, 1024), k);
    CHECK(low.beta() == doctest::Approx(0.4));
    CHECK(low.psi_family_admissible());
    const WeightTable high(model(3, 0.5, 5.0), RadialGrid(0.0, 40.0, 1024), k);
    CHECK_FALSE(high.psi_family_admissible());
}

TEST_CASE("Phi weight is comparable to Psi^-beta")
{
    const WeightTable table(model(3, 0.5, 0.3), RadialGrid(0.0, 60.0, 2048), WeightKnobs{});
    double lo = 1e300, hi = 0.0;
    for (double t : {0.0, 10.0, 100.0})
        for (std::size_t i = 0; i < table.grid().size(); i += 16) {
            const double ratio = table.phi_weight_node(i, t, table.beta()) * std::pow(table.psi_node(i, t), table.beta());
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
    CHECK(lo > 0.1);
    CHECK(hi < 10.0);
}

TEST_CASE("supersolution residual is positive and rejects beta <= 0")
{
    const WeightTable table(model(3, 0.5, 0.3), RadialGrid(0.0, 60.0, 4096), WeightKnobs{});
    const auto res = supersolution_residual(table, 5.0, table.beta());
    double lo = 1e300;
    for (std::size_t i = 0; i + 1 < res.size(); ++i) lo = std::min(lo, res[i]);
    CHECK(lo > 0.0);
    CHECK_THROWS_AS(supersolution_residual(table, 5.0, 0.0), DomainError);
}

TEST_CASE("integration-by-parts inequality on bumps and support errors")
{
    const WeightTable table(model(3, 0.5, 0.3), RadialGrid(0.0, 60.0, 4096), WeightKnobs{});
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto u = random_compact_bump(table.grid(), seed);
        const auto chk = delta_phi_inequality_check(table, u, 3.0, table.beta(), table.delta());
        CHECK(chk.margin() >= 0.0);
    }
    std::vector<double> bad(table.grid().size(), 1.0);
    CHECK_THROWS_AS(delta_phi_inequality_check(table, bad, 0.0, 0.3, 0.2), SupportError);
    std::vector<double> short_u(10, 0.0);
    CHECK_THROWS_AS(delta_phi_inequality_check(table, short_u, 0.0, 0.3, 0.2), SupportError);
}

TEST_CASE("bumps are deterministic per seed and vanish near the edges")
{
    const RadialGrid g(0.0, 20.0, 512);
    const auto a = random_compact_bump(g, 7);
    const auto b = random_compact_bump(g, 7);
    const auto c = random_compact_bump(g, 8);
    CHECK(a == b);
    CHECK(a != c);
    for (std::size_t k = 0; k < 3; ++k) CHECK(a[g.size() - 1 - k] == 0.0);
}

TEST_CASE("theta and default coupling")
{
    const auto m = model(3, 0.5);
    CHECK(theta_eval(m, 10.0, 0.0, 2.0) == doctest::Approx(13.0));
    const RadialGrid g(0.0, 10.0, 101);
    const double amin = damping_at(m, 10.0);
    CHECK(default_nu(m, g, 1.0) == doctest::Approx(0.01 * amin));
    CHECK(default_nu(m, g, 8.0) == doctest::Approx(0.01 * amin * std::pow(8.0, -1.0 / 3.0)));
}
