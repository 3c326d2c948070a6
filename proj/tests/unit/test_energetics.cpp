#include "dampwave/energetics.hpp"
#include "dampwave/solver.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace dampwave;

namespace {

ModelParams model()
{
    ModelParams m;
    m.n = 3;
    m.alpha = 0.5;
    m.p = 2.0;
    return m;
}

std::vector<double> sample(const RadialGrid& g, const Profile& prof)
{
    std::vector<double> out(g.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = profile_value(prof, g.r(i));
    return out;
}

} // namespace

TEST_CASE("zero state has zero energy in every functional")
{
    const auto m = model();
    const WeightTable table(m, RadialGrid(0.0, 40.0, 1024), WeightKnobs{});
    const std::vector<double> z(table.grid().size(), 0.0);
    for (auto fam : {WeightFamily::Psi, WeightFamily::Theta}) {
        const auto rec = make_record(2.0, z, z, table, fam);
        CHECK(rec.E == 0.0);
        CHECK(rec.aL2 == 0.0);
        CHECK(rec.L2 == 0.0);
        CHECK(rec.E1 == 0.0);
        CHECK(rec.E0 == 0.0);
        CHECK(rec.Estar == 0.0);
        CHECK(rec.Etilde == 0.0);
        CHECK(rec.scaled_E == 0.0);
    }
}

TEST_CASE("energy of a pure velocity field and a constant displacement")
{
    const auto m = model();
    const RadialGrid g(0.0, 3.0, 301);
    const RadialOperator op(g, 3, true);
    const std::vector<double> zero(g.size(), 0.0), one(g.size(), 1.0);
    const double ball = 4.0 / 3.0 * std::numbers::pi * 27.0;
    CHECK(energy_E(op, m, zero, one) == doctest::Approx(0.5 * ball).epsilon(1e-12));
    CHECK(energy_E(op, m, one, zero) == doctest::Approx(ball / 3.0).epsilon(1e-12));
    CHECK(plain_l2(op, one) == doctest::Approx(ball).epsilon(1e-12));
    CHECK(dissipation_rate(op, m, one) == doctest::Approx(weighted_l2(op, m, one)));
}

TEST_CASE("scaled columns use (t0+t) powers")
{
    auto m = model();
    m.lambda = 0.3;
    const WeightTable table(m, RadialGrid(0.0, 40.0, 1024), WeightKnobs{});
    const auto u = sample(table.grid(), CompactBump{5.0, 2.0, 1.0});
    const auto rec = make_record(6.0, u, u, table, default_family(table));
    CHECK(rec.scaled_E == doctest::Approx(std::pow(16.0, 1.3) * rec.E));
    CHECK(rec.scaled_aL2 == doctest::Approx(std::pow(16.0, 0.3) * rec.aL2));
}

TEST_CASE("Estar slack matches its definition")
{
    auto m = model();
    m.lambda = 0.3;
    const WeightTable table(m, RadialGrid(0.0, 40.0, 1024), WeightKnobs{});
    const auto& g = table.grid();
    const auto u = sample(g, CompactBump{6.0, 3.0, 0.7});
    const auto v = sample(g, CompactBump{5.0, 2.0, -0.4});
    const double t = 3.0;
    const auto fam = energy_family(u, v, t, table, WeightFamily::Psi);
    std::vector<double> dens(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        dens[i] = damping_at(m, g.r(i)) * u[i] * u[i] * std::pow(table.psi_node(i, t), m.lambda);
    const double expected = fam.Estar - 0.5 * fam.E1 - 0.5 * table.nu() * table.op().integrate(dens);
    CHECK(fam.estar_slack == doctest::Approx(expected).epsilon(1e-12));
    CHECK(fam.estar_slack >= 0.0);
    CHECK(fam.Estar == doctest::Approx(fam.E1 + table.nu() * fam.E0));
}

TEST_CASE("default family switches at the Psi admissibility threshold")
{
    auto m = model();
    m.lambda = 0.1;
    CHECK(default_family(WeightTable(m, RadialGrid(0.0, 40.0, 512), WeightKnobs{})) == WeightFamily::Psi);
    m.lambda = 4.0;
    CHECK(default_family(WeightTable(m, RadialGrid(0.0, 40.0, 512), WeightKnobs{})) == WeightFamily::Theta);
}

TEST_CASE("I0 norm flags slowly decaying data")
{
    const auto m = model();
    const RadialGrid g(0.0, 200.0, 4001);
    const auto bump = sample(g, CompactBump{3.0, 2.0, 1.0});
    const std::vector<double> z(g.size(), 0.0);
    const auto compact = i0_norm(bump, z, m, g);
    CHECK(compact.value > 0.0);
    CHECK_FALSE(compact.divergent_tail);
    const auto slow = i0_norm(z, sample(g, PolyDecay{1.0, 1.0}), m, g);
    CHECK(slow.divergent_tail);
    const auto fast = i0_norm(z, sample(g, PolyDecay{3.0, 1.0}), m, g);
    CHECK_FALSE(fast.divergent_tail);
}

TEST_CASE("energy identity residual over a damped run")
{
    const auto m = model();
    const RadialGrid g(0.0, 30.0, 1024);
    const WeightTable table(m, g, WeightKnobs{});
    RunConfig rc;
    rc.T_final = 8.0;
    rc.cfl = 0.4;
    const auto res = run(m, g, InitialData{CompactBump{6.0, 3.0, 1.0}, ZeroProfile{}}, rc, table, WeightFamily::Theta);
    const double E0 = res.records.front().E;
    CHECK(res.records.back().dissipated > 0.0);
    CHECK(energy_identity_residual(res.records) < 1e-2 * E0);
    CHECK(energy_identity_residual(std::span<const EnergyRecord>{}) == 0.0);
}
