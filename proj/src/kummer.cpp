#include "dampwave/kummer.hpp"

#include "dampwave/errors.hpp"

#include <cmath>
#include <sstream>

namespace dampwave {

namespace {

constexpr double kMaxExpArg = 709.78;

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

void check_pole(double c)
{
    if (is_nonpositive_integer(c)) {
        std::ostringstream msg;
        msg << "Kummer M: c = " << c << " is a non-positive integer";
        throw PoleError(msg.str());
    }
}

// Taylor series Σ (b)_k/(c)_k s^k/k!. Stops once the terms are decreasing
// (k > s) and three consecutive terms fall below 1e-16 of the partial sum.
double taylor_series(double b, double c, double s)
{
    double term = 1.0;
    double sum = 1.0;
    int small_run = 0;
    for (int k = 0; k < 100000; ++k) {
        term *= (b + k) / (c + k) * s / (k + 1);
        sum += term;
        if (term == 0.0) break;  // b a non-positive integer: polynomial
        if (k > s && std::abs(term) < 1e-16 * std::abs(sum)) {
            if (++small_run == 3) break;
        } else {
            small_run = 0;
        }
    }
    return sum;
}

// Σ_k (c-b)_k (1-b)_k / (k! s^k), truncated at the smallest term.
double asymptotic_sum(double b, double c, double s)
{
    double term = 1.0;
    double sum = 1.0;
    double prev = 1.0;
    for (int k = 0; k < 1000; ++k) {
        const double next = term * (c - b + k) * (1.0 - b + k) / ((k + 1) * s);
        if (std::abs(next) > std::abs(prev) && k > 0) break;  // divergence sets in
        term = next;
        sum += term;
        if (term == 0.0 || std::abs(term) < 1e-17 * std::abs(sum)) break;
        prev = term;
    }
    return sum;
}

// Polynomial case b = -m: e^{-s} Σ_{k<=m} (b)_k/(c)_k s^k/k!.
double polynomial_scaled(double b, double c, double s)
{
    const int m = static_cast<int>(-b);
    double term = 1.0;
    double sum = 1.0;
    for (int k = 0; k < m; ++k) {
        term *= (b + k) / (c + k) * s / (k + 1);
        sum += term;
    }
    return std::exp(-s) * sum;
}

} // namespace

GammaPair gamma_pair(int n, double alpha, double epsilon)
{
    if (!(epsilon > 0.0 && epsilon < 0.5)) {
        std::ostringstream msg;
        msg << "gamma_pair: epsilon = " << epsilon << " outside (0, 1/2)";
        throw DomainError(msg.str());
    }
    if (!(alpha >= 0.0 && alpha < std::min(2.0, static_cast<double>(n))))
        throw DomainError("gamma_pair: alpha outside [0, min(2, n))");
    const double gt = 1.0 / ((2.0 - alpha) / (n - alpha) + 2.0 * epsilon);
    return {gt, (1.0 - 2.0 * epsilon) * gt};
}

PhiParams PhiParams::make(int n, double alpha, double epsilon, double beta)
{
    const auto g = gamma_pair(n, alpha, epsilon);
    return {beta, g.gamma_tilde, g.gamma, epsilon};
}

double pochhammer(double d, int m)
{
    double out = 1.0;
    for (int k = 0; k < m; ++k) out *= d + k;
    return out;
}

double kummer_m_scaled(double b, double c, double s)
{
    check_pole(c);
    if (!(s >= 0.0)) throw DomainError("Kummer M: s must be >= 0");
    if (b == c) return 1.0;
    if (is_nonpositive_integer(b)) return polynomial_scaled(b, c, s);
    if (s <= kAsymptoticSwitch) return std::exp(-s) * taylor_series(b, c, s);
    // Γ(c)/Γ(b) via log-gamma to stay finite for large arguments.
    const double log_ratio = std::lgamma(c) - std::lgamma(b);
    const double sign = std::copysign(1.0, std::tgamma(c)) * std::copysign(1.0, std::tgamma(b));
    return sign * std::exp(log_ratio + (b - c) * std::log(s)) * asymptotic_sum(b, c, s);
}

double kummer_m(double b, double c, double s)
{
    check_pole(c);
    if (!(s >= 0.0)) throw DomainError("Kummer M: s must be >= 0");
    if (s <= kAsymptoticSwitch) return taylor_series(b, c, s);
    if (s > kMaxExpArg) {
        std::ostringstream msg;
        msg << "Kummer M: e^s overflows for s = " << s;
        throw OverflowError(msg.str());
    }
    return kummer_m_scaled(b, c, s) * std::exp(s);
}

double phi(const PhiParams& params, double s)
{
    if (params.beta == 0.0) return 1.0;
    return kummer_m_scaled(params.gamma - params.beta, params.gamma, s);
}

double phi_prime(const PhiParams& params, double s)
{
    if (params.beta == 0.0) return 0.0;
    return -(params.beta / params.gamma)
           * kummer_m_scaled(params.gamma - params.beta, params.gamma + 1.0, s);
}

double phi_second(const PhiParams& params, double s)
{
    const double b = params.beta;
    if (b == 0.0) return 0.0;
    const double g = params.gamma;
    return b * (b + 1.0) / (g * (g + 1.0)) * kummer_m_scaled(g - b, g + 2.0, s);
}

} // namespace dampwave
