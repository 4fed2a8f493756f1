#pragma once

#include <functional>
#include <optional>

#include "schrowave/formulations.hpp"
#include "schrowave/grid.hpp"
#include "schrowave/operator.hpp"

namespace schrowave {

/// Hermitian decomposition A = H1 + i H2 with H1 = (A + A^dagger)/2,
/// H2 = (A - A^dagger)/(2i).
struct HermitianPair {
    Operator H1;
    Operator H2;

    /// max-norm of A - (H1 + i H2); zero in exact arithmetic.
    double reconstruction_error(const Operator& A) const;
};

HermitianPair hermitian_split(const Operator& A);

/// Warp profile g(p): e^{-p} on p > 0, with either the kinked e^{-|p|} left
/// branch or a caller-supplied smooth branch h of declared smoothness order k.
struct WarpFunction {
    enum class Tag { exact_kink, smooth };
    Tag tag = Tag::exact_kink;
    int smoothness = 0;
    std::function<double(double)> g;

    static WarpFunction exact_kink();
    /// Built-in C^k left branch (exponential-sum matching e^{-p} to order k at 0).
    static WarpFunction smooth(int k);
    static WarpFunction smooth_custom(int k, std::function<double(double)> left_branch);
};

struct HomogenizeResult {
    LinearODESystem system;
    Eigen::Index n_base = 0;  // original dimension before augmentation
    Eigen::Index n_aug = 0;   // dimension after augmentation and padding
    int pad = 0;              // ones-padding rows appended
    double c_scale = 1.0;
    bool augmented = false;
};

/// Source elimination: A_aug = [[A, diag(b)/c], [0, 0]], u0_aug = (u0, c*1),
/// then ones-padding to the next power of two. A zero source returns the
/// system unchanged. An absent c_scale selects c = ||b||_inf; an explicit
/// non-positive c_scale is an error.
HomogenizeResult homogenize(const LinearODESystem& sys,
                            std::optional<double> c_scale = std::nullopt);

/// Hamiltonian system in the extended (base x p) space.
struct SchrodingerizedSystem {
    Operator H1;
    Operator H2;
    PGrid pgrid;
    DenseVec c0;            // (I x Phi_p^{-1}) (u0 x g(p_j))
    Eigen::Index n_aug = 0;
    int pad = 0;
    /// Optional (rows, cols) split marking H1, H2 as block anti-diagonal
    /// [[0, K], [K^dagger, 0]]; enables the Schur evolution fast path.
    std::optional<Eigen::Index> anti_diagonal_split;

    /// Materialized Hamiltonian H_s = H1 (x) D_p - H2 (x) I (dimension n_aug * N).
    Operator hs() const;
    /// Exact sparsity of H_s without materializing it.
    int hs_sparsity() const;
    double hs_max_norm() const;
};

/// dc/dt = -i H_s c with H_s = H1 (x) D_p - H2 (x) I and
/// c(0) = u0 (x) (Phi_p^{-1} g-samples). Throws on dimension mismatch.
SchrodingerizedSystem schrodingerize(const HermitianPair& pair, const DenseVec& u0_aug,
                                     const PGrid& pgrid, const WarpFunction& warp);

/// Recovery threshold p* = max(lambda_max(H1) * T, 0).
double pstar(const Operator& H1, double T);

/// Refined threshold: lambda_max of H1 restricted to the smallest invariant
/// subspace of {H1, H2} containing u0 (the only modes the dynamics can
/// populate). Falls back to the full-spectrum bound when the closure exceeds
/// `cap` basis vectors. Never exceeds pstar(H1, T).
double pstar_subspace(const HermitianPair& pair, const DenseVec& u0, double T, int cap = 512);

/// Largest eigenvalue of a Hermitian operator: dense solve below `dense_cap`,
/// Lanczos iteration above it.
double largest_eigenvalue(const Operator& H, Eigen::Index dense_cap = 4096, double tol = 1e-8);

}  // namespace schrowave
