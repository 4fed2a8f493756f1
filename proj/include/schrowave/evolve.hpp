#pragma once

#include <vector>

#include "schrowave/operator.hpp"
#include "schrowave/schrodingerize.hpp"

namespace schrowave {

enum class TimeScheme { crank_nicolson, implicit_euler, exact_exponential };

struct EvolutionConfig {
    TimeScheme scheme = TimeScheme::crank_nicolson;
    double dt = 1e-2;
    double T = 1.0;
    bool store_trajectory = false;

    int steps() const;
    void validate() const;
};

struct EvolutionResult {
    DenseVec state;
    std::vector<double> norms;  // per-step norms when a trajectory is requested
};

/// Time integration of either du/dt = A u + b (hamiltonian = false) or
/// dc/dt = -i H c (hamiltonian = true). Crank-Nicolson applies the Cayley step
/// for Hermitian H; implicit step factorizations are reused across steps.
/// Throws on a singular step matrix. exact_exponential densifies and is
/// limited to dimension 4096.
EvolutionResult evolve(const Operator& A_or_H, const DenseVec& state0, const EvolutionConfig& cfg,
                       bool hamiltonian, const DenseVec* source = nullptr);

/// Evolution of the Schrodingerized system. Exactly equivalent to
/// evolve(hs(), c0, cfg, true): H_s is block diagonal over p-frequencies, so
/// each block mu_l*H1 - H2 is stepped independently.
DenseVec evolve_schrodingerized(const SchrodingerizedSystem& sys, const EvolutionConfig& cfg);

/// Inverse of the p-space change of variables: v_h = (I (x) Phi_p) c.
DenseVec qft_p(const DenseVec& c, Eigen::Index n_aug, const PGrid& pgrid);

enum class RecoveryMode { point, integral };

struct RecoveryPlan {
    RecoveryMode mode = RecoveryMode::point;
    double p_star = 0.0;
    int p1_index = 0;  // first grid index with p_j >= p_star in point mode

    static RecoveryPlan point_at(const PGrid& pgrid, double p_star);
    static RecoveryPlan integral_from(double p_star);
};

/// u = e^{p_j*} v_h[:, j*]; valid for any node at or above p*.
DenseVec recover_point(const DenseVec& v_h, const PGrid& pgrid, const RecoveryPlan& plan);

/// u = e^{p*} * sum_{p_j >= p*} v_h[:, j] dp (left Riemann sum of the tail
/// integral, normalized so that t = 0 reproduces u0).
DenseVec recover_integral(const DenseVec& v_h, const PGrid& pgrid, const RecoveryPlan& plan);

}  // namespace schrowave
