#pragma once

#include <string>
#include <vector>

#include "schrowave/evolve.hpp"
#include "schrowave/formulations.hpp"

namespace schrowave {

/// Classical reference run: same spatial operator, conventional time stepping,
/// no extended dimension.
DenseVec classical_solve(const LinearODESystem& sys, const EvolutionConfig& cfg);

/// Closed-form solution triple of the 1-D hyperbolic benchmark on [0, 1]:
///   xi  = -4 pi sin(4 pi t) sin(4 pi x) + cos(8 pi t) sin(8 pi x)
///   eps = 2 mu (4 pi cos(4 pi t) cos(4 pi x) + sin(8 pi t) cos(8 pi x))
///   p   = lambda eps / (2 mu)
/// Requires rho = lambda + 2 mu.
struct ExactHyperbolicSolution {
    double mu = 0.35;
    double lambda = 0.71;

    ExactHyperbolicSolution(double mu_, double lambda_);
    double rho() const { return lambda + 2.0 * mu; }

    double xi(double x, double t) const;
    double eps(double x, double t) const;
    double p(double x, double t) const;
    double xi_t(double x, double t) const;
    double eps_t(double x, double t) const;
    double p_t(double x, double t) const;

    /// Samples of (xi, eps, p) stacked component-major on the grid nodes.
    DenseVec sample(const Grid1D& grid, double t) const;
    /// Max-norm residual of the semi-discrete system dw/dt = B dw/dx under
    /// spectral differentiation of the sampled triple.
    double spectral_residual(const Grid1D& grid, double t) const;
};

struct ComponentError {
    std::string name;
    double l2_abs = 0.0;
    double l2_rel = 0.0;
    double linf_abs = 0.0;
    double linf_rel = 0.0;
    bool rel_defined = true;
};

struct ErrorReport {
    std::vector<ComponentError> components;
    double cell_volume = 1.0;  // quadrature weight of the discrete L2 norm

    const ComponentError& component(const std::string& name) const;
    double max_l2_rel() const;
    double max_linf_rel() const;
};

/// Discrete norms with cell-volume weighting: ||u||^2 = vol * sum |u_j|^2.
/// Both fields are component-major with `ncomp` equal blocks.
ErrorReport error_norms(const DenseVec& u, const DenseVec& ref, const std::vector<std::string>& names,
                        double cell_volume);

}  // namespace schrowave
