#pragma once

#include "schrowave/grid.hpp"
#include "schrowave/operator.hpp"

namespace schrowave {

/// Fourier synthesis matrix Phi[j][l] = exp(i*mu_l*(x_j - a)), its inverse
/// (= Phi^dagger / M on a uniform grid), the frequency diagonal D_mu, and the
/// nodal differentiation matrix P_mu = Phi D_mu Phi^{-1} (the discrete -i d/dx).
struct SpectralOperators {
    DenseMat Phi;
    DenseMat PhiInv;
    RealVec Dmu;
    DenseMat Pmu;
};

SpectralOperators spectral_operators(const Grid1D& grid);

/// Synthesis/analysis pair for a PGrid window (same construction as above).
SpectralOperators spectral_operators(const PGrid& pgrid);

/// Periodic antisymmetric central difference with 1/(2h) scaling:
/// D[i][i+1] = 1/(2h), D[i+1][i] = -1/(2h), wrap entries D[0][M-1] = -1/(2h),
/// D[M-1][0] = 1/(2h). For M = 2 the interior and wrap entries cancel exactly.
Operator central_difference_matrix(const Grid1D& grid);

/// Periodic forward difference at half-grid offset:
/// S = (1/h) * (sum_i |i><i+1| + |M-1><0| - I).
Operator staggered_forward_difference(const Grid1D& grid);

/// Staggered divergence block matrix acting from stresses to velocities.
/// d = 3: 3M^3 x 6M^3 with stress order (s11, s22, s33, s12, s13, s23);
/// d = 2: 2M^2 x 3M^2 with stress order (s11, s22, s12).
Operator staggered_divergence(int d, const Grid1D& grid);

}  // namespace schrowave
