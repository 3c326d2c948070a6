// Reference values: tests/oracles/kummer_values.py (mpmath, 50 digits).

#include "dampwave/errors.hpp"
#include "dampwave/kummer.hpp"

#include <doctest.h>

#include <cmath>

using namespace dampwave;

namespace {

bool rel_close(double x, double ref, double tol)
{
    return std::abs(x - ref) <= tol * std::abs(ref);
}

} // namespace

TEST_CASE("gamma pair")
{
    const auto g = gamma_pair(3, 0.5, 0.25);
    CHECK(rel_close(g.gamma_tilde, 0.90909090909090909091, 1e-15));
    CHECK(rel_close(g.gamma, 0.45454545454545454545, 1e-15));
    const auto g1 = gamma_pair(1, 0.0, 0.1);
    CHECK(rel_close(g1.gamma_tilde, 0.45454545454545454545, 1e-15));
    CHECK(rel_close(g1.gamma, 0.36363636363636363636, 1e-15));
    CHECK_THROWS_AS(gamma_pair(3, 0.5, 0.5), DomainError);
    CHECK_THROWS_AS(gamma_pair(3, 0.5, 0.0), DomainError);
    CHECK_THROWS_AS(gamma_pair(1, 1.0, 0.1), DomainError);
}

TEST_CASE("M against high-precision values, both sides of the series/asymptotic switch")
{
    struct Ref {
        double b, c, s, m, scaled;
    };
    const Ref refs[] = {
        {1.0, 2.0, 1.0, 1.7182818284590452354, 0.0},
        {0.5, 1.5, 10.0, 1168.2304635794389296, 0.053037580992901644848},
        {0.3, 0.7, 45.0, 3327587250159840685.1, 0.095252803319818072176},
        {2.5, 1.25, 3.0, 88.610638554489497921, 4.4116639198324492268},
        {-0.7, 0.45, 20.0, -7952437.9643402301575, -0.01639119631741777615},
    };
    for (const auto& r : refs) {
        CAPTURE(r.b);
        CAPTURE(r.s);
        CHECK(rel_close(kummer_m(r.b, r.c, r.s), r.m, 1e-12));
        if (r.scaled != 0.0) CHECK(rel_close(kummer_m_scaled(r.b, r.c, r.s), r.scaled, 1e-12));
    }
    CHECK(rel_close(kummer_m_scaled(0.0545, 0.4545, 120.0), 0.016160350171294421983, 1e-12));
    CHECK(rel_close(kummer_m_scaled(-2.3, 0.8, 60.0), -2.9680101347689072477e-6, 1e-9));
}

TEST_CASE("M(1,2;s) = (e^s - 1)/s and the large-s ratio")
{
    for (double s : {0.5, 5.0, 30.0, 59.9, 60.1, 100.0})
        CHECK(rel_close(kummer_m_scaled(1.0, 2.0, s), (1.0 - std::exp(-s)) / s, 1e-12));
    CHECK(kummer_m_scaled(1.0, 2.0, 200.0) * 200.0 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("polynomial case b = -m is exact")
{
    // M(-2, c; s) = 1 - 2s/c + s²/(c(c+1)).
    const double c = 0.7, s = 90.0;
    const double exact = 1.0 - 2.0 * s / c + s * s / (c * (c + 1.0));
    CHECK(rel_close(kummer_m(-2.0, c, s), exact, 1e-13));
    CHECK(rel_close(kummer_m_scaled(-2.0, c, 700.0),
                    (1.0 - 1400.0 / c + 490000.0 / (c * (c + 1.0))) * std::exp(-700.0), 1e-12));
}

TEST_CASE("poles, domain and overflow")
{
    CHECK_THROWS_AS(kummer_m(1.0, 0.0, 1.0), PoleError);
    CHECK_THROWS_AS(kummer_m(1.0, -3.0, 1.0), PoleError);
    CHECK_THROWS_AS(kummer_m(1.0, 2.0, -1.0), DomainError);
    CHECK_THROWS_AS(kummer_m(1.0, 2.0, 800.0), OverflowError);
    CHECK(std::isfinite(kummer_m_scaled(1.0, 2.0, 800.0)));
}

TEST_CASE("Pochhammer")
{
    CHECK(pochhammer(3.0, 0) == 1.0);
    CHECK(pochhammer(3.0, 4) == 3.0 * 4 * 5 * 6);
    CHECK(pochhammer(-2.0, 3) == 0.0);
}

TEST_CASE("profile and closed-form derivatives")
{
    const auto g = gamma_pair(3, 0.5, 0.25);
    const PhiParams P{0.4, g.gamma_tilde, g.gamma, 0.25};
    CHECK(rel_close(phi(P, 1.0), 0.43369132106409286367, 1e-13));
    CHECK(rel_close(phi_prime(P, 1.0), -0.33910252848663816176, 1e-13));
    CHECK(rel_close(phi_second(P, 1.0), 0.31976351300947290799, 1e-13));
    CHECK(phi(P.with_beta(0.0), 123.0) == 1.0);
    CHECK(phi(P, 0.0) == 1.0);
}

TEST_CASE("profile ODE and recurrence hold past the switch")
{
    const auto base = PhiParams::make(2, 0.25, 0.1, 0.0);
    for (double beta : {0.2, 0.5 * base.gamma, 2.5}) {
        const auto P = base.with_beta(beta);
        for (double s : {0.1, 10.0, 59.0, 61.0, 250.0}) {
            const double f = phi(P, s), f1 = phi_prime(P, s), f2 = phi_second(P, s);
            const double scale = std::abs(s * f2) + std::abs((P.gamma + s) * f1) + std::abs(beta * f);
            CHECK(std::abs(s * f2 + (P.gamma + s) * f1 + beta * f) <= 1e-11 * scale);
            const double f_next = phi(base.with_beta(beta + 1.0), s);
            CHECK(std::abs(beta * f + s * f1 - beta * f_next) <= 1e-11 * (std::abs(beta * f) + std::abs(s * f1)));
        }
    }
}

TEST_CASE("profile decays like (1+s)^-beta for beta below gamma")
{
    const auto P = PhiParams::make(3, 0.5, 0.1, 0.3);
    const double ratio_far = phi(P, 1e4) * std::pow(1.0 + 1e4, P.beta);
    const double ratio_farther = phi(P, 1e5) * std::pow(1.0 + 1e5, P.beta);
    CHECK(ratio_far > 0.0);
    CHECK(ratio_farther / ratio_far == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(phi_prime(P, 50.0) < 0.0);
    CHECK(phi_second(P, 50.0) > 0.0);
}
