#pragma once
/**
 * @file model_core.hpp
 * @brief Problem instance, radial grid and initial data for the damped wave
 *        equation  u_tt - Δu + a(x) u_t + |u|^{p-1} u = 0  under radial symmetry.
 */

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace dampwave {

enum class DomainKind { WholeSpace, ExteriorBall };

struct Domain {
    DomainKind kind = DomainKind::WholeSpace;
    double r0 = 0.0;  // inner radius, ExteriorBall only

    static Domain whole_space() { return {}; }
    static Domain exterior_ball(double r0) { return {DomainKind::ExteriorBall, r0}; }
    bool is_exterior() const { return kind == DomainKind::ExteriorBall; }
};

enum class DampingProfile {
    PowerLaw,  // a(r) = a0 <r>^{-alpha}
    Constant   // a(r) = a0, requires alpha = 0
};

/**
 * @brief Parameters of one problem instance.
 *
 * a1 only enters the two-sided damping assumption a0<x>^{-α} ≤ a ≤ a1<x>^{-α};
 * the profiles implemented here always realise a = a0<x>^{-α}.
 */
struct ModelParams {
    int n = 1;
    double alpha = 0.0;
    double a0 = 1.0;
    double a1 = 1.0;
    double p = 3.0;
    double lambda = 0.0;
    Domain domain;
    DampingProfile damping = DampingProfile::PowerLaw;

    /// Every violated invariant, empty when the instance is admissible.
    std::vector<std::string> violations() const;
    /// Throws ValidationError listing all violations.
    void validate() const;
};

/// Japanese bracket <r> = sqrt(1 + r^2).
double bracket(double r);

/// Surface area of the unit sphere in R^n (2 for n = 1).
double sphere_area(int n);

double damping_at(const ModelParams& params, double r);

/// Uniform radial grid, node i at r_min + i*h.
class RadialGrid {
public:
    RadialGrid(double r_min, double r_max, std::size_t nodes);

    /// Grid over [inner radius of the domain, r_max].
    static RadialGrid for_domain(const ModelParams& params, double r_max, std::size_t nodes);

    std::size_t size() const { return nodes_; }
    double r_min() const { return r_min_; }
    double r_max() const { return r_max_; }
    double h() const { return h_; }
    double r(std::size_t i) const { return r_min_ + static_cast<double>(i) * h_; }
    std::vector<double> radii() const;

    /// Same interval, node count 2N-1 (every old node kept, spacing halved).
    RadialGrid refined() const { return RadialGrid(r_min_, r_max_, 2 * nodes_ - 1); }

private:
    double r_min_;
    double r_max_;
    std::size_t nodes_;
    double h_;
};

/// C^2 bump amplitude * (1 - ((r - center)/width)^2)^3 on |r - center| < width.
struct CompactBump {
    double center = 0.0;
    double width = 1.0;
    double amplitude = 1.0;
};

/// amplitude * <r>^{-q}.
struct PolyDecay {
    double q = 2.0;
    double amplitude = 1.0;
};

struct ZeroProfile {};

using Profile = std::variant<ZeroProfile, CompactBump, PolyDecay>;

double profile_value(const Profile& profile, double r);

/// Largest radius where the profile may be nonzero; +inf for PolyDecay.
double profile_support_radius(const Profile& profile);

struct InitialData {
    Profile u0 = ZeroProfile{};
    Profile u1 = ZeroProfile{};

    double support_radius() const;
};

/// Which datum a profile is used for; the I0 weights differ between the two.
enum class DataRole { Displacement, Velocity };

/**
 * True when a PolyDecay profile with exponent q keeps I0[u0,u1] finite for
 * the instance's (n, α, p, λ).
 */
bool poly_decay_admissible(double q, DataRole role, const ModelParams& params);

struct SampledData {
    std::vector<double> u0;
    std::vector<double> u1;
};

/// Node-wise samples; the exterior Dirichlet trace and the truncation node are zero.
SampledData sample_initial_data(const InitialData& data, const RadialGrid& grid,
                                const ModelParams& params);

} // namespace dampwave
