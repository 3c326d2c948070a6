#include "dampwave/errors.hpp"
#include "dampwave/solver.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace dampwave;

namespace {

ModelParams model(int n = 3)
{
    ModelParams m;
    m.n = n;
    m.alpha = 0.5;
    m.p = 2.0;
    return m;
}

} // namespace

TEST_CASE("stability limit of the origin row")
{
    const RadialGrid g(0.0, 10.0, 1001);
    const double c1 = max_stable_cfl(RadialOperator(g, 1, true));
    const double c3 = max_stable_cfl(RadialOperator(g, 3, true));
    CHECK(c1 > 0.9);
    CHECK(c1 <= 1.0);
    CHECK(c3 < 0.9);
    CHECK(c3 > 0.7);
}

TEST_CASE("time stepping lands on T_final")
{
    RunConfig rc;
    rc.T_final = 1.0;
    rc.cfl = 0.3;
    const RadialGrid g(0.0, 1.6, 17);
    const auto [steps, dt] = time_stepping(rc, g);
    CHECK(steps == 34);
    CHECK(dt * steps == doctest::Approx(1.0));
    CHECK(dt <= 0.3 * g.h());
}

TEST_CASE("record count and first record")
{
    const auto m = model();
    const RadialGrid g(0.0, 30.0, 512);
    const WeightTable table(m, g, WeightKnobs{});
    RunConfig rc;
    rc.T_final = 5.0;
    rc.cfl = 0.5;
    rc.record_every = 7;
    const InitialData d{CompactBump{5.0, 2.0, 1.0}, CompactBump{5.0, 2.0, 0.5}};
    const auto res = run(m, g, d, rc, table, WeightFamily::Theta);
    CHECK(res.records.size() == static_cast<std::size_t>(res.steps / 7 + 1));
    CHECK(res.records.front().t == 0.0);
    const auto s = sample_initial_data(d, g, m);
    CHECK(res.records.front().E == doctest::Approx(energy_E(table.op(), m, s.u0, s.u1)).epsilon(1e-14));
}

TEST_CASE("zero data stays exactly zero")
{
    const auto m = model();
    const RadialGrid g(0.0, 20.0, 256);
    const WeightTable table(m, g, WeightKnobs{});
    RunConfig rc;
    rc.T_final = 3.0;
    const auto res = run(m, g, InitialData{}, rc, table, WeightFamily::Theta);
    for (const auto& r : res.records) {
        CHECK(r.E == 0.0);
        CHECK(r.aL2 == 0.0);
    }
}

TEST_CASE("invalid run settings")
{
    const auto m = model();
    const RadialGrid g(0.0, 20.0, 256);
    const WeightTable table(m, g, WeightKnobs{});
    const InitialData d{CompactBump{5.0, 2.0, 1.0}, ZeroProfile{}};
    RunConfig rc;
    rc.T_final = 1.0;
    rc.cfl = 0.95;
    CHECK_THROWS_AS(run(m, g, d, rc, table, WeightFamily::Theta), ConfigError);
    rc.cfl = 0.8;  // above the n = 3 limit
    CHECK_THROWS_AS(run(m, g, d, rc, table, WeightFamily::Theta), ConfigError);
    rc.cfl = 0.5;
    rc.record_every = 0;
    CHECK_THROWS_AS(run(m, g, d, rc, table, WeightFamily::Theta), ConfigError);
    rc.record_every = 1;
    rc.require_cone = true;
    rc.T_final = 30.0;
    CHECK_THROWS_AS(run(m, g, d, rc, table, WeightFamily::Theta), ConfigError);
}

TEST_CASE("blowup is reported")
{
    const auto m = model();
    const RadialGrid g(0.0, 20.0, 256);
    const WaveSolver solver(m, g, false, false);
    std::vector<double> u0(g.size(), 0.0), u1(g.size(), 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) u0[i] = profile_value(CompactBump{8.0, 3.0, 2e12}, g.r(i));
    const auto st = solver.start(u0, u1, 0.5 * g.h());
    CHECK_THROWS_AS(solver.step(st), BlowupError);
}

TEST_CASE("Taylor start local error shrinks like dt^4 for zero velocity")
{
    const auto m = model(1);
    const RadialGrid g(0.0, 20.0, 8001);
    const WaveSolver solver(m, g, false, false);
    std::vector<double> u0(g.size()), u1(g.size(), 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) u0[i] = std::exp(-g.r(i) * g.r(i));
    // Exact solution of the 1-D wave equation with even data: (f(r-t) + f(r+t))/2.
    auto err = [&](double dt) {
        const auto st = solver.start(u0, u1, dt);
        double worst = 0.0;
        for (std::size_t i = 0; i < 4000; ++i) {
            const double r = g.r(i);
            const double exact = 0.5 * (std::exp(-(r - dt) * (r - dt)) + std::exp(-(r + dt) * (r + dt)));
            worst = std::max(worst, std::abs(st.u[i] - exact));
        }
        return worst;
    };
    const double e1 = err(0.016), e2 = err(0.008);
    CHECK(e1 / e2 > 8.0);
}

TEST_CASE("damping off conserves energy to leapfrog accuracy")
{
    const auto m = model();
    const RadialGrid g(0.0, 40.0, 2048);
    const WeightTable table(m, g, WeightKnobs{});
    RunConfig rc;
    rc.T_final = 10.0;
    rc.cfl = 0.4;
    rc.damping = false;
    const auto res = run(m, g, InitialData{CompactBump{10.0, 3.0, 1.0}, ZeroProfile{}}, rc, table, WeightFamily::Theta);
    const double E0 = res.records.front().E;
    double drift = 0.0;
    for (const auto& r : res.records) drift = std::max(drift, std::abs(r.E - E0));
    CHECK(drift < 1e-3 * E0);
    CHECK(res.records.back().dissipated == 0.0);
}

TEST_CASE("snapshots and finite propagation")
{
    const auto m = model();
    const RadialGrid g(0.0, 40.0, 2048);
    const WeightTable table(m, g, WeightKnobs{});
    RunConfig rc;
    rc.T_final = 10.0;
    rc.cfl = 0.4;
    rc.snapshot_every = 50;
    const auto res = run(m, g, InitialData{CompactBump{8.0, 2.0, 1.0}, ZeroProfile{}}, rc, table, WeightFamily::Theta);
    REQUIRE(res.snapshots.size() >= 2);
    CHECK(finite_propagation_check(res.snapshots, m, g, 10.0, 1.0) < 1e-20);
}

TEST_CASE("budget deadline in the past aborts the run")
{
    const auto m = model();
    const RadialGrid g(0.0, 20.0, 256);
    const WeightTable table(m, g, WeightKnobs{});
    RunConfig rc;
    rc.T_final = 20.0;
    const auto past = std::chrono::steady_clock::now() - std::chrono::seconds(1);
    CHECK_THROWS_AS(run(m, g, InitialData{CompactBump{5.0, 2.0, 1.0}, ZeroProfile{}}, rc, table, WeightFamily::Theta, past),
                    BudgetExceeded);
}
