#pragma once
/**
 * @file radial_ops.hpp
 * @brief Finite-volume discretisation of radial integrals and of the radial
 *        Laplacian  ∂_r² + (n-1)/r ∂_r  on a RadialGrid.
 *
 * Node i owns the shell [r_{i-1/2}, r_{i+1/2}] clipped to [r_min, r_max]; its
 * volume V_i (sphere area included) is the quadrature weight of every node
 * integral. Gradients live on cell faces r_{i+1/2}. With these choices
 *
 *     sum_i V_i u_i (Δ_h v)_i = - sum_faces F_{i+1/2} (u_{i+1}-u_i)(v_{i+1}-v_i) / h
 *
 * whenever u vanishes on the Dirichlet nodes, which gives the scheme an exact
 * discrete energy balance.
 */

#include "dampwave/model_core.hpp"

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace dampwave {

/// Neumaier compensated summation; deterministic for a fixed input order.
class CompensatedSum {
public:
    void add(double x)
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class RadialOperator {
public:
    RadialOperator(const RadialGrid& grid, int n, bool origin_is_node);

    /// Operator matching the domain: the origin is a symmetry node for WholeSpace.
    static RadialOperator for_params(const RadialGrid& grid, const ModelParams& params);

    const RadialGrid& grid() const { return grid_; }
    int dimension() const { return n_; }
    std::size_t size() const { return grid_.size(); }
    bool origin_is_node() const { return origin_; }

    /// First and last node updated by the time stepper (others are Dirichlet).
    std::size_t first_free() const { return origin_ ? 0 : 1; }
    std::size_t last_free() const { return size() - 2; }

    std::span<const double> volumes() const { return volume_; }
    /// Face areas F_{i+1/2} = ω_n r_{i+1/2}^{n-1}, i = 0..N-2.
    std::span<const double> face_areas() const { return face_; }

    /// ∫ f dμ using node values.
    double integrate(std::span<const double> f) const;
    /// ∫ f g dμ.
    double integrate_product(std::span<const double> f, std::span<const double> g) const;
    /// ∫ |∂_r u|² w dμ, w given at nodes and averaged onto faces (w empty means 1).
    double gradient_energy(std::span<const double> u, std::span<const double> w = {}) const;

    /**
     * Δ_h u at every node. Nodes with a full stencil use the conservative
     * flux form; Dirichlet boundary nodes get a one-sided second-order
     * estimate so diagnostics are defined everywhere.
     */
    std::vector<double> laplacian(std::span<const double> u) const;
    void laplacian(std::span<const double> u, std::span<double> out) const;

    /// Δ_h u at a single node with a full stencil.
    double laplacian_at(std::span<const double> u, std::size_t i) const;

    /// Integral over the ball of radius r_min, ∫_{B_{r_min}} f, by composite Simpson.
    template <class F>
    double inner_ball_integral(F&& f, int panels = 2000) const;

private:
    RadialGrid grid_;
    int n_;
    bool origin_;
    std::vector<double> volume_;
    std::vector<double> face_;
};

template <class F>
double RadialOperator::inner_ball_integral(F&& f, int panels) const
{
    const double R = grid_.r_min();
    if (R <= 0.0) return 0.0;
    if (panels % 2) ++panels;
    const double dr = R / panels;
    const double omega = sphere_area(n_);
    auto g = [&](double r) { return f(r) * std::pow(r, n_ - 1); };
    double acc = g(0.0) + g(R);
    for (int k = 1; k < panels; ++k) acc += (k % 2 ? 4.0 : 2.0) * g(k * dr);
    return omega * acc * dr / 3.0;
}

} // namespace dampwave
