#include "schrowave/reference.hpp"

#include <cmath>
#include <stdexcept>

namespace schrowave {

DenseVec classical_solve(const LinearODESystem& sys, const EvolutionConfig& cfg) {
    const DenseVec* src = (sys.b.size() > 0 && sys.b.cwiseAbs().maxCoeff() > 0.0) ? &sys.b : nullptr;
    return evolve(sys.A, sys.u0, cfg, /*hamiltonian=*/false, src).state;
}

ExactHyperbolicSolution::ExactHyperbolicSolution(double mu_, double lambda_) : mu(mu_), lambda(lambda_) {
    if (mu <= 0.0) throw std::invalid_argument("ExactHyperbolicSolution: mu must be positive");
}

namespace {
constexpr double pi4 = 4.0 * M_PI;
constexpr double pi8 = 8.0 * M_PI;
}  // namespace

double ExactHyperbolicSolution::xi(double x, double t) const {
    return -pi4 * std::sin(pi4 * t) * std::sin(pi4 * x) + std::cos(pi8 * t) * std::sin(pi8 * x);
}

double ExactHyperbolicSolution::eps(double x, double t) const {
    return 2.0 * mu * (pi4 * std::cos(pi4 * t) * std::cos(pi4 * x) +
                       std::sin(pi8 * t) * std::cos(pi8 * x));
}

double ExactHyperbolicSolution::p(double x, double t) const { return lambda * eps(x, t) / (2.0 * mu); }

double ExactHyperbolicSolution::xi_t(double x, double t) const {
    return -pi4 * pi4 * std::cos(pi4 * t) * std::sin(pi4 * x) -
           pi8 * std::sin(pi8 * t) * std::sin(pi8 * x);
}

double ExactHyperbolicSolution::eps_t(double x, double t) const {
    return 2.0 * mu * (-pi4 * pi4 * std::sin(pi4 * t) * std::cos(pi4 * x) +
                       pi8 * std::cos(pi8 * t) * std::cos(pi8 * x));
}

double ExactHyperbolicSolution::p_t(double x, double t) const {
    return lambda * eps_t(x, t) / (2.0 * mu);
}

DenseVec ExactHyperbolicSolution::sample(const Grid1D& grid, double t) const {
    const int M = grid.M;
    DenseVec w(3 * M);
    for (int j = 0; j < M; ++j) {
        const double x = grid.node(j);
        w[j] = xi(x, t);
        w[M + j] = eps(x, t);
        w[2 * M + j] = p(x, t);
    }
    return w;
}

double ExactHyperbolicSolution::spectral_residual(const Grid1D& grid, double t) const {
    const int M = grid.M;
    const auto ops = spectral_operators(grid);
    // d/dx = i * Pmu on nodal samples
    const DenseMat ddx = imag_unit * ops.Pmu;
    DenseVec xi_s(M), eps_s(M), p_s(M), xi_dt(M), eps_dt(M), p_dt(M);
    for (int j = 0; j < M; ++j) {
        const double x = grid.node(j);
        xi_s[j] = xi(x, t);
        eps_s[j] = eps(x, t);
        p_s[j] = p(x, t);
        xi_dt[j] = xi_t(x, t);
        eps_dt[j] = eps_t(x, t);
        p_dt[j] = p_t(x, t);
    }
    const double r = rho();
    DenseVec r1 = xi_dt - (ddx * eps_s + ddx * p_s) / r;
    DenseVec r2 = eps_dt - 2.0 * mu * (ddx * xi_s);
    DenseVec r3 = p_dt - lambda * (ddx * xi_s);
    return std::max({r1.cwiseAbs().maxCoeff(), r2.cwiseAbs().maxCoeff(), r3.cwiseAbs().maxCoeff()});
}

const ComponentError& ErrorReport::component(const std::string& name) const {
    for (const auto& c : components)
        if (c.name == name) return c;
    throw std::out_of_range("ErrorReport: no component named " + name);
}

double ErrorReport::max_l2_rel() const {
    double m = 0.0;
    for (const auto& c : components)
        if (c.rel_defined) m = std::max(m, c.l2_rel);
    return m;
}

double ErrorReport::max_linf_rel() const {
    double m = 0.0;
    for (const auto& c : components)
        if (c.rel_defined) m = std::max(m, c.linf_rel);
    return m;
}

ErrorReport error_norms(const DenseVec& u, const DenseVec& ref, const std::vector<std::string>& names,
                        double cell_volume) {
    if (u.size() != ref.size()) throw std::invalid_argument("error_norms: layout mismatch");
    const int ncomp = static_cast<int>(names.size());
    if (ncomp == 0 || u.size() % ncomp != 0)
        throw std::invalid_argument("error_norms: component count does not divide layout");
    const Eigen::Index n = u.size() / ncomp;
    ErrorReport rep;
    rep.cell_volume = cell_volume;
    for (int c = 0; c < ncomp; ++c) {
        ComponentError ce;
        ce.name = names[c];
        const auto du = (u.segment(c * n, n) - ref.segment(c * n, n)).eval();
        const auto rf = ref.segment(c * n, n);
        ce.l2_abs = std::sqrt(cell_volume) * du.norm();
        ce.linf_abs = du.cwiseAbs().maxCoeff();
        const double ref_l2 = std::sqrt(cell_volume) * rf.norm();
        const double ref_linf = rf.cwiseAbs().maxCoeff();
        if (ref_l2 > 0.0 && ref_linf > 0.0) {
            ce.l2_rel = ce.l2_abs / ref_l2;
            ce.linf_rel = ce.linf_abs / ref_linf;
        } else {
            ce.rel_defined = false;
        }
        rep.components.push_back(std::move(ce));
    }
    return rep;
}

}  // namespace schrowave
