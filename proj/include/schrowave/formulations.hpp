#pragma once

#include <functional>
#include <vector>

#include "schrowave/discrete_operators.hpp"
#include "schrowave/grid.hpp"
#include "schrowave/medium.hpp"
#include "schrowave/operator.hpp"

namespace schrowave {

using FieldFn = std::function<double(double, double, double)>;

/// Linear constant-coefficient ODE system du/dt = A u + b after spatial discretization.
struct LinearODESystem {
    Operator A;
    DenseVec b;
    DenseVec u0;
};

/// Similarity data of the symmetric-form velocity-stress system (3-D):
/// Lambda = eigenvalues of rho*C^{-1}, P = orthonormal eigenvector rows,
/// Mhalf = P^T Lambda^{-1/2} P.
struct SmfTransform {
    RealVec Lambda;  // 6 entries
    RealMat P;       // 6 x 6
    RealMat Mhalf;   // 6 x 6
};

/// Throws when 3*c_p^2 - 4*c_s^2 <= 0.
SmfTransform smf_transform(const IsotropicMedium& medium);

/// rho*C^{-1} assembled directly from the a, b, c entries (3-D, 6x6).
RealMat rho_cinv_matrix(const IsotropicMedium& medium);

/// Symmetrized coefficient matrices A_x = M Atilde_x M (and y, z analogues), 9x9.
struct SmfCoefficients {
    RealMat Ax, Ay, Az;
};
SmfCoefficients smf_coefficient_matrices(const IsotropicMedium& medium);

/// Pre-symmetrization coefficient matrix for one axis (0-based), 9x9 block form.
RealMat smf_coefficient_tilde(int axis);

/// Semi-discrete symmetric-form system in the x-Fourier (hat) basis.
/// Component count: 2 (d=1), 5 (d=2), 9 (d=3); components are ordered
/// (transformed stresses..., velocities...).
struct SmfSystem {
    std::vector<RealMat> Acoef;  // per-axis symmetric coefficient matrices, ncomp x ncomp
    Operator A;                  // i * sum_axis Acoef[axis] (x) D_axis
    DenseVec fhat;               // hat-transformed source
    DenseVec U0hat;              // hat-transformed initial state
    int d = 1;
    int ncomp = 2;
    Grid1D grid;
    RealMat Mhalf;               // full symmetrizer incl. velocity identity block
    double rho = 1.0;
    double cp = 1.0;
};

/// force: one entry per velocity component (body force f_i); empty means zero.
/// init_stress / init_velocity: physical fields per component; empty means zero.
SmfSystem assemble_smf(const Grid1D& grid, const IsotropicMedium& medium, int d,
                       const std::vector<FieldFn>& force = {},
                       const std::vector<FieldFn>& init_stress = {},
                       const std::vector<FieldFn>& init_velocity = {});

/// Staggered-grid velocity-stress system for variable media (physical space).
struct StaggeredVSSystem {
    std::vector<RealVec> R;   // density samples per velocity component (diagonal of R)
    Operator C;               // stiffness at stress locations
    Operator Lv;              // staggered divergence
    Operator AH;              // [[0, Ric*Lv], [-C*Lv^T, 0]]
    DenseVec u0;              // (v(0), sigma(0))
    int d = 2;
    Grid1D grid;
    Eigen::Index nv = 0, ns = 0;  // velocity / stress sub-dimensions
};

StaggeredVSSystem assemble_staggered_vs(const Grid1D& grid, const IsotropicMedium& medium, int d,
                                        const std::vector<FieldFn>& init_stress = {},
                                        const std::vector<FieldFn>& init_velocity = {});

enum class SpatialScheme { spectral, central };

/// First-order hyperbolic displacement system dw/dt = -L w - F.
/// d = 3: w = (xi(3), zeta1(3), zeta2(3), p); d = 1: w = (xi, eps, p).
/// Spectral assemblies live in the hat basis, central in the physical basis.
struct DisplacementSystem {
    Operator L;        // dispersion operator
    DenseVec F;        // source vector (already in the stored basis)
    DenseVec w0;       // initial state (already in the stored basis)
    SpatialScheme scheme = SpatialScheme::spectral;
    int d = 1;
    int ncomp = 3;
    Grid1D grid;
    bool hat_basis = true;  // true for spectral assemblies
};

DisplacementSystem assemble_displacement(const Grid1D& grid, const IsotropicMedium& medium,
                                         SpatialScheme scheme, int d,
                                         const std::vector<FieldFn>& force = {},
                                         const std::vector<FieldFn>& init = {});

/// Views of each formulation as the generic ODE triple (A, b, u0).
LinearODESystem to_linear_system(const SmfSystem& s);
LinearODESystem to_linear_system(const StaggeredVSSystem& s);
LinearODESystem to_linear_system(const DisplacementSystem& s);

/// Unnormalized analysis DFT on one axis: hat = Phi^dagger * nodal values
/// (a constant field of value v maps to M*v on the zero mode).
DenseMat hat_analysis_matrix(const Grid1D& grid);

/// Apply a 1-D matrix along one axis (1-based, axis 1 slowest) of a length-M^d vector.
DenseVec apply_axis(const DenseMat& m1d, const DenseVec& v, int M, int axis, int d);

/// Hat transform / inverse over all d axes of a (ncomp * M^d) component-major vector.
DenseVec hat_forward(const Grid1D& grid, int d, int ncomp, const DenseVec& physical);
DenseVec hat_inverse(const Grid1D& grid, int d, int ncomp, const DenseVec& hat);

/// Nodal samples of a scalar field, component-major layout helpers.
RealVec sample_scalar_field(const Grid1D& grid, int d, const FieldFn& f, double offset = 0.0);

}  // namespace schrowave
