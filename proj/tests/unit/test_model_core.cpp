#include "dampwave/errors.hpp"
#include "dampwave/model_core.hpp"
#include "dampwave/radial_ops.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace dampwave;

TEST_CASE("default parameters are admissible")
{
    ModelParams m;
    CHECK(m.violations().empty());
    CHECK_NOTHROW(m.validate());
}

TEST_CASE("p above n/(n-2) is rejected with the admissible range")
{
    ModelParams m;
    m.n = 3;
    m.p = 4.0;
    const auto v = m.violations();
    REQUIRE(v.size() == 1);
    CHECK(v[0].find("n/(n-2) = 3") != std::string::npos);
    m.p = 3.0;
    CHECK(m.violations().empty());
}

TEST_CASE("every violation is listed")
{
    ModelParams m;
    m.n = 1;
    m.alpha = 1.5;
    m.a0 = -1.0;
    m.p = 0.5;
    m.lambda = -1.0;
    m.domain = Domain::exterior_ball(0.0);
    CHECK(m.violations().size() == 6);
    try {
        m.validate();
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.violations().size() == 6);
    }
}

TEST_CASE("constant damping forces alpha = 0")
{
    ModelParams m;
    m.damping = DampingProfile::Constant;
    m.alpha = 0.5;
    CHECK_FALSE(m.violations().empty());
    m.alpha = 0.0;
    CHECK(m.violations().empty());
    CHECK(damping_at(m, 5.0) == 1.0);
}

TEST_CASE("sphere areas")
{
    CHECK(sphere_area(1) == doctest::Approx(2.0));
    CHECK(sphere_area(2) == doctest::Approx(2.0 * std::numbers::pi));
    CHECK(sphere_area(3) == doctest::Approx(4.0 * std::numbers::pi));
}

TEST_CASE("damping profile a0 <r>^-alpha")
{
    ModelParams m;
    m.alpha = 0.5;
    m.a0 = 2.0;
    CHECK(damping_at(m, 0.0) == doctest::Approx(2.0));
    CHECK(damping_at(m, std::sqrt(3.0)) == doctest::Approx(2.0 * std::pow(2.0, -0.5)));
}

TEST_CASE("grid geometry and refinement")
{
    const RadialGrid g(1.0, 5.0, 17);
    CHECK(g.h() == doctest::Approx(0.25));
    CHECK(g.r(16) == doctest::Approx(5.0));
    const auto f = g.refined();
    CHECK(f.size() == 33);
    CHECK(f.r(2) == doctest::Approx(g.r(1)));
    CHECK_THROWS_AS(RadialGrid(0.0, 1.0, 8), ConfigError);
    CHECK_THROWS_AS(RadialGrid(2.0, 1.0, 32), ConfigError);
}

TEST_CASE("profiles and support")
{
    const CompactBump b{3.0, 2.0, 1.5};
    CHECK(profile_value(b, 3.0) == doctest::Approx(1.5));
    CHECK(profile_value(b, 5.0) == 0.0);
    CHECK(profile_value(b, 0.5) == 0.0);
    CHECK(profile_support_radius(b) == 5.0);
    CHECK(std::isinf(profile_support_radius(PolyDecay{})));
    CHECK(profile_value(PolyDecay{2.0, 1.0}, 1.0) == doctest::Approx(0.5));
    InitialData d{ZeroProfile{}, b};
    CHECK(d.support_radius() == 5.0);
}

TEST_CASE("polynomial data admissibility tracks lambda")
{
    ModelParams m;
    m.n = 3;
    m.alpha = 0.5;
    m.p = 2.0;
    CHECK(poly_decay_admissible(2.0, DataRole::Velocity, m));   // 4 > 3.5
    CHECK_FALSE(poly_decay_admissible(1.7, DataRole::Velocity, m));
    m.lambda = 1.0;                                              // weight 1.5
    CHECK_FALSE(poly_decay_admissible(2.0, DataRole::Velocity, m));
    CHECK(poly_decay_admissible(2.6, DataRole::Velocity, m));
    CHECK(poly_decay_admissible(2.6, DataRole::Displacement, m));
    CHECK_FALSE(poly_decay_admissible(1.9, DataRole::Displacement, m));
}

TEST_CASE("sampling zeroes Dirichlet nodes and rejects divergent data")
{
    ModelParams m;
    m.n = 3;
    m.p = 2.0;
    m.domain = Domain::exterior_ball(1.0);
    const auto g = RadialGrid::for_domain(m, 10.0, 64);
    CHECK(g.r_min() == 1.0);
    InitialData d{PolyDecay{3.0, 1.0}, PolyDecay{3.0, 1.0}};
    const auto s = sample_initial_data(d, g, m);
    CHECK(s.u0.front() == 0.0);
    CHECK(s.u1.back() == 0.0);
    CHECK(s.u0[5] == doctest::Approx(std::pow(1.0 + g.r(5) * g.r(5), -1.5)));
    d.u1 = PolyDecay{1.0, 1.0};
    CHECK_THROWS_AS(sample_initial_data(d, g, m), ProfileUnsupported);
}

TEST_CASE("radial quadrature reproduces ball volumes")
{
    for (int n : {1, 2, 3}) {
        const RadialGrid g(0.0, 2.0, 201);
        const RadialOperator op(g, n, true);
        const std::vector<double> one(g.size(), 1.0);
        const double exact = sphere_area(n) * std::pow(2.0, n) / n;
        CHECK(op.integrate(one) == doctest::Approx(exact).epsilon(1e-12));
    }
}

TEST_CASE("flux Laplacian is exact on quadratics, including the origin row")
{
    for (int n : {1, 2, 3, 5}) {
        const RadialGrid g(0.0, 4.0, 81);
        const RadialOperator op(g, n, true);
        std::vector<double> u(g.size());
        for (std::size_t i = 0; i < u.size(); ++i) u[i] = 3.0 + 0.5 * g.r(i) * g.r(i);
        for (std::size_t i = 0; i + 1 < u.size(); ++i)
            CHECK(op.laplacian_at(u, i) == doctest::Approx(static_cast<double>(n)).epsilon(1e-10));
    }
}

TEST_CASE("summation by parts: integral of u lap u equals minus the gradient energy")
{
    const RadialGrid g(1.0, 9.0, 257);
    const RadialOperator op(g, 3, false);
    std::vector<double> u(g.size(), 0.0);
    for (std::size_t i = 1; i + 1 < u.size(); ++i) u[i] = std::sin(0.7 * g.r(i)) * (g.r(i) - 1.0) * (9.0 - g.r(i));
    std::vector<double> dens(u.size(), 0.0);
    for (std::size_t i = op.first_free(); i <= op.last_free(); ++i) dens[i] = u[i] * op.laplacian_at(u, i);
    CHECK(op.integrate(dens) == doctest::Approx(-op.gradient_energy(u)).epsilon(1e-12));
}

TEST_CASE("Laplacian converges at second order on smooth radial functions")
{
    auto err = [](std::size_t N) {
        const RadialGrid g(0.0, 3.0, N);
        const RadialOperator op(g, 3, true);
        std::vector<double> u(N);
        for (std::size_t i = 0; i < N; ++i) u[i] = std::exp(-g.r(i) * g.r(i));
        double worst = 0.0;
        for (std::size_t i = 0; i + 1 < N; ++i) {
            const double r = g.r(i);
            const double exact = (4.0 * r * r - 6.0) * std::exp(-r * r);
            worst = std::max(worst, std::abs(op.laplacian_at(u, i) - exact));
        }
        return worst;
    };
    CHECK(err(257) / err(513) > 3.5);
}

TEST_CASE("compensated sum")
{
    CompensatedSum s;
    s.add(1.0);
    for (int i = 0; i < 1000; ++i) s.add(1e-16);
    s.add(-1.0);
    CHECK(s.value() == doctest::Approx(1e-13).epsilon(1e-6));
}
