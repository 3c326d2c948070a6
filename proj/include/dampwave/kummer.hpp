#pragma once
/**
 * @file kummer.hpp
 * @brief Kummer's confluent hypergeometric function M(b, c; s) and the
 *        self-similar profiles φ_{β,ε}(s) = e^{-s} M(γ_ε - β, γ_ε; s).
 *
 * M is summed as its Taylor series for s <= kAsymptoticSwitch and from the
 * optimally truncated large-s expansion
 *
 *     M(b,c;s) ~ Γ(c)/Γ(b) e^s s^{b-c} Σ_k (c-b)_k (1-b)_k / (k! s^k)
 *
 * beyond it. The profiles only ever need the scaled value e^{-s} M, which is
 * finite for every s >= 0; the unscaled M overflows past s ≈ 709.
 */

namespace dampwave {

/// Series/asymptotic switch point in s.
inline constexpr double kAsymptoticSwitch = 60.0;

struct GammaPair {
    double gamma_tilde;  // ((2-α)/(n-α) + 2ε)^{-1}
    double gamma;        // (1-2ε) γ̃
};

/// Throws DomainError unless 0 < ε < 1/2 and 0 <= α < min(2, n).
GammaPair gamma_pair(int n, double alpha, double epsilon);

struct PhiParams {
    double beta = 0.0;
    double gamma_tilde = 1.0;
    double gamma = 1.0;
    double epsilon = 0.25;

    static PhiParams make(int n, double alpha, double epsilon, double beta);
    PhiParams with_beta(double b) const
    {
        PhiParams out = *this;
        out.beta = b;
        return out;
    }
};

/// M(b, c; s). Throws PoleError for c ∈ {0,-1,-2,...}, OverflowError past e^s range.
double kummer_m(double b, double c, double s);

/// e^{-s} M(b, c; s); never overflows.
double kummer_m_scaled(double b, double c, double s);

/// (d)_m = d (d+1) ... (d+m-1).
double pochhammer(double d, int m);

/// φ_{β,ε}(s); exactly 1 when β = 0.
double phi(const PhiParams& params, double s);
/// φ'(s) = -(β/γ) e^{-s} M(γ-β, γ+1; s).
double phi_prime(const PhiParams& params, double s);
/// φ''(s) = β(β+1)/(γ(γ+1)) e^{-s} M(γ-β, γ+2; s).
double phi_second(const PhiParams& params, double s);

} // namespace dampwave
