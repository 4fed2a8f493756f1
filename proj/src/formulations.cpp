#include "schrowave/formulations.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace schrowave {

namespace {

RealMat orthonormal_p6() {
    RealMat P = RealMat::Zero(6, 6);
    const double s3 = 1.0 / std::sqrt(3.0), s2 = 1.0 / std::sqrt(2.0), s6 = 1.0 / std::sqrt(6.0);
    P.row(0) << s3, s3, s3, 0, 0, 0;
    P.row(1) << s2, -s2, 0, 0, 0, 0;
    P.row(2) << s6, s6, -2.0 * s6, 0, 0, 0;
    P(3, 3) = P(4, 4) = P(5, 5) = 1.0;
    return P;
}

RealMat l_matrix_3d(int axis) {
    RealMat L = RealMat::Zero(3, 6);
    switch (axis) {
        case 0:
            L(0, 0) = 1;
            L(1, 3) = 1;
            L(2, 4) = 1;
            break;
        case 1:
            L(0, 3) = 1;
            L(1, 1) = 1;
            L(2, 5) = 1;
            break;
        case 2:
            L(0, 4) = 1;
            L(1, 5) = 1;
            L(2, 2) = 1;
            break;
        default:
            throw std::invalid_argument("l_matrix_3d: axis must be 0..2");
    }
    return L;
}

RealMat l_matrix_2d(int axis) {
    // stress order (s11, s22, s12); velocity rows (v1, v2)
    RealMat L = RealMat::Zero(2, 3);
    if (axis == 0) {
        L(0, 0) = 1;
        L(1, 2) = 1;
    } else {
        L(0, 2) = 1;
        L(1, 1) = 1;
    }
    return L;
}

RealMat tilde_block(const RealMat& L) {
    const int ns = static_cast<int>(L.cols());
    const int nv = static_cast<int>(L.rows());
    RealMat A = RealMat::Zero(ns + nv, ns + nv);
    A.block(0, ns, ns, nv) = L.transpose();
    A.block(ns, 0, nv, ns) = L;
    return A;
}

/// Symmetrizer M = P^T Lambda^{-1/2} P for the stress block, extended by the
/// identity on velocities, for the d-dimensional reduction.
struct SmfBasis {
    RealMat Mhalf;      // full (ncomp x ncomp)
    RealMat Mhalf_inv;  // P^T Lambda^{1/2} P extended by identity
    std::vector<RealMat> Acoef;
    int ncomp;
    int nstress;
};

SmfBasis smf_basis(const IsotropicMedium& medium, int d) {
    medium.validate_constants();
    const double cp2 = medium.cp() * medium.cp();
    const double cs2 = medium.cs() * medium.cs();
    SmfBasis basis;
    RealMat P;
    RealVec Lam;
    std::vector<RealMat> Ls;
    if (d == 3) {
        if (3.0 * cp2 - 4.0 * cs2 <= 0.0)
            throw std::invalid_argument("smf: 3*cp^2 - 4*cs^2 must be positive");
        P = orthonormal_p6();
        Lam.resize(6);
        Lam << 1.0 / (3.0 * cp2 - 4.0 * cs2), 1.0 / (2.0 * cs2), 1.0 / (2.0 * cs2), 1.0 / cs2,
            1.0 / cs2, 1.0 / cs2;
        Ls = {l_matrix_3d(0), l_matrix_3d(1), l_matrix_3d(2)};
        basis.nstress = 6;
    } else if (d == 2) {
        P = RealMat::Zero(3, 3);
        const double s2 = 1.0 / std::sqrt(2.0);
        P.row(0) << s2, s2, 0;
        P.row(1) << s2, -s2, 0;
        P(2, 2) = 1.0;
        Lam.resize(3);
        Lam << 1.0 / (2.0 * cp2 - 2.0 * cs2), 1.0 / (2.0 * cs2), 1.0 / cs2;
        Ls = {l_matrix_2d(0), l_matrix_2d(1)};
        basis.nstress = 3;
    } else if (d == 1) {
        P = RealMat::Identity(1, 1);
        Lam.resize(1);
        Lam << 1.0 / cp2;
        Ls = {RealMat::Ones(1, 1)};
        basis.nstress = 1;
    } else {
        throw std::invalid_argument("assemble_smf: d must be 1, 2, or 3");
    }
    basis.ncomp = basis.nstress + d;
    RealMat Ms = P.transpose() * Lam.cwiseSqrt().cwiseInverse().asDiagonal() * P;
    RealMat Ms_inv = P.transpose() * Lam.cwiseSqrt().asDiagonal() * P;
    basis.Mhalf = RealMat::Identity(basis.ncomp, basis.ncomp);
    basis.Mhalf.topLeftCorner(basis.nstress, basis.nstress) = Ms;
    basis.Mhalf_inv = RealMat::Identity(basis.ncomp, basis.ncomp);
    basis.Mhalf_inv.topLeftCorner(basis.nstress, basis.nstress) = Ms_inv;
    for (auto& L : Ls) {
        RealMat A = basis.Mhalf * tilde_block(L) * basis.Mhalf;
        // cancellation dust from the orthonormal-basis products is not structure
        const double floor = 1e-13 * A.cwiseAbs().maxCoeff();
        A = (A.cwiseAbs().array() <= floor).select(RealMat::Zero(A.rows(), A.cols()), A);
        basis.Acoef.push_back(std::move(A));
    }
    return basis;
}

Eigen::Index pow_dim(int M, int d) {
    Eigen::Index n = 1;
    for (int i = 0; i < d; ++i) n *= M;
    return n;
}

RealVec sample_offsets(const Grid1D& g, int d, const FieldFn& f, double ox, double oy, double oz) {
    const Eigen::Index n = pow_dim(g.M, d);
    RealVec out = RealVec::Zero(n);
    if (!f) return out;
    if (d == 1) {
        for (int i = 0; i < g.M; ++i) out[i] = f(g.a + (i + ox) * g.h, 0.0, 0.0);
    } else if (d == 2) {
        for (int i = 0; i < g.M; ++i)
            for (int j = 0; j < g.M; ++j)
                out[static_cast<Eigen::Index>(i) * g.M + j] =
                    f(g.a + (i + ox) * g.h, g.a + (j + oy) * g.h, 0.0);
    } else {
        for (int i = 0; i < g.M; ++i)
            for (int j = 0; j < g.M; ++j)
                for (int k = 0; k < g.M; ++k)
                    out[(static_cast<Eigen::Index>(i) * g.M + j) * g.M + k] =
                        f(g.a + (i + ox) * g.h, g.a + (j + oy) * g.h, g.a + (k + oz) * g.h);
    }
    return out;
}

}  // namespace

SmfTransform smf_transform(const IsotropicMedium& medium) {
    medium.validate_constants();
    const double cp2 = medium.cp() * medium.cp();
    const double cs2 = medium.cs() * medium.cs();
    if (3.0 * cp2 - 4.0 * cs2 <= 0.0)
        throw std::invalid_argument("smf_transform: 3*cp^2 - 4*cs^2 must be positive");
    SmfTransform t;
    t.P = orthonormal_p6();
    t.Lambda.resize(6);
    t.Lambda << 1.0 / (3.0 * cp2 - 4.0 * cs2), 1.0 / (2.0 * cs2), 1.0 / (2.0 * cs2), 1.0 / cs2,
        1.0 / cs2, 1.0 / cs2;
    t.Mhalf = t.P.transpose() * t.Lambda.cwiseSqrt().cwiseInverse().asDiagonal() * t.P;
    return t;
}

RealMat rho_cinv_matrix(const IsotropicMedium& medium) {
    const double cp2 = medium.cp() * medium.cp();
    const double cs2 = medium.cs() * medium.cs();
    const double a = (cp2 - cs2) / (cs2 * (3.0 * cp2 - 4.0 * cs2));
    const double b = -(cp2 - 2.0 * cs2) / (cs2 * (6.0 * cp2 - 8.0 * cs2));
    const double c = 1.0 / cs2;
    RealMat m = RealMat::Zero(6, 6);
    m.topLeftCorner(3, 3).setConstant(b);
    m(0, 0) = m(1, 1) = m(2, 2) = a;
    m(3, 3) = m(4, 4) = m(5, 5) = c;
    return m;
}

RealMat smf_coefficient_tilde(int axis) { return tilde_block(l_matrix_3d(axis)); }

SmfCoefficients smf_coefficient_matrices(const IsotropicMedium& medium) {
    auto basis = smf_basis(medium, 3);
    return {basis.Acoef[0], basis.Acoef[1], basis.Acoef[2]};
}

DenseMat hat_analysis_matrix(const Grid1D& grid) {
    const RealVec mu = fourier_frequencies(grid);
    DenseMat A(grid.M, grid.M);
    for (int l = 0; l < grid.M; ++l)
        for (int j = 0; j < grid.M; ++j) A(l, j) = std::exp(-imag_unit * mu[l] * (j * grid.h));
    return A;
}

DenseVec apply_axis(const DenseMat& m1d, const DenseVec& v, int M, int axis, int d) {
    if (axis < 1 || axis > d) throw std::invalid_argument("apply_axis: axis out of range");
    const Eigen::Index n = v.size();
    Eigen::Index stride = 1;
    for (int i = axis; i < d; ++i) stride *= M;
    DenseVec out(n);
    DenseVec slice(M), res(M);
    const Eigen::Index block = stride * M;
    for (Eigen::Index base = 0; base < n; base += block) {
        for (Eigen::Index r = 0; r < stride; ++r) {
            for (int t = 0; t < M; ++t) slice[t] = v[base + t * stride + r];
            res.noalias() = m1d * slice;
            for (int t = 0; t < M; ++t) out[base + t * stride + r] = res[t];
        }
    }
    return out;
}

DenseVec hat_forward(const Grid1D& grid, int d, int ncomp, const DenseVec& physical) {
    const Eigen::Index n = pow_dim(grid.M, d);
    if (physical.size() != ncomp * n) throw std::invalid_argument("hat_forward: size mismatch");
    const DenseMat A = hat_analysis_matrix(grid);
    DenseVec out(physical.size());
    for (int c = 0; c < ncomp; ++c) {
        DenseVec slice = physical.segment(c * n, n);
        for (int axis = 1; axis <= d; ++axis) slice = apply_axis(A, slice, grid.M, axis, d);
        out.segment(c * n, n) = slice;
    }
    return out;
}

DenseVec hat_inverse(const Grid1D& grid, int d, int ncomp, const DenseVec& hat) {
    const Eigen::Index n = pow_dim(grid.M, d);
    if (hat.size() != ncomp * n) throw std::invalid_argument("hat_inverse: size mismatch");
    const DenseMat S = hat_analysis_matrix(grid).adjoint() / static_cast<double>(grid.M);
    DenseVec out(hat.size());
    for (int c = 0; c < ncomp; ++c) {
        DenseVec slice = hat.segment(c * n, n);
        for (int axis = 1; axis <= d; ++axis) slice = apply_axis(S, slice, grid.M, axis, d);
        out.segment(c * n, n) = slice;
    }
    return out;
}

RealVec sample_scalar_field(const Grid1D& grid, int d, const FieldFn& f, double offset) {
    return sample_offsets(grid, d, f, offset, offset, offset);
}

SmfSystem assemble_smf(const Grid1D& grid, const IsotropicMedium& medium, int d,
                       const std::vector<FieldFn>& force, const std::vector<FieldFn>& init_stress,
                       const std::vector<FieldFn>& init_velocity) {
    if (!medium.is_constant())
        throw std::invalid_argument("assemble_smf: the symmetric form requires a constant medium");
    auto basis = smf_basis(medium, d);
    const Eigen::Index n = pow_dim(grid.M, d);

    SmfSystem sys;
    sys.Acoef = basis.Acoef;
    sys.d = d;
    sys.ncomp = basis.ncomp;
    sys.grid = grid;
    sys.Mhalf = basis.Mhalf;
    sys.rho = medium.rho.constant;
    sys.cp = medium.cp();

    const Operator Dmu = Operator::diagonal(fourier_frequencies(grid));
    SpMat gen(sys.ncomp * n, sys.ncomp * n);
    for (int axis = 0; axis < d; ++axis) {
        Operator lifted = lift_axis(Dmu, axis + 1, d);
        gen += kron(Operator::from_dense(sys.Acoef[axis].cast<cxd>()), lifted).sparse();
    }
    sys.A = Operator(SpMat(imag_unit * gen));

    // physical source (0_stress, f_i / rho), then hat transform
    if (static_cast<int>(force.size()) > d)
        throw std::invalid_argument("assemble_smf: more force components than velocities");
    DenseVec f_phys = DenseVec::Zero(sys.ncomp * n);
    for (int i = 0; i < static_cast<int>(force.size()); ++i) {
        if (!force[i]) continue;
        RealVec s = sample_offsets(grid, d, force[i], 0, 0, 0) / medium.rho.constant;
        f_phys.segment((basis.nstress + i) * n, n) = s.cast<cxd>();
    }
    sys.fhat = hat_forward(grid, d, sys.ncomp, f_phys);

    // physical initial state Utilde = (sigma/rho, v), mapped by Mhalf^{-1} pointwise
    DenseVec u_tilde = DenseVec::Zero(sys.ncomp * n);
    for (int i = 0; i < static_cast<int>(init_stress.size()) && i < basis.nstress; ++i) {
        if (!init_stress[i]) continue;
        RealVec s = sample_offsets(grid, d, init_stress[i], 0, 0, 0) / medium.rho.constant;
        u_tilde.segment(i * n, n) = s.cast<cxd>();
    }
    for (int i = 0; i < static_cast<int>(init_velocity.size()) && i < d; ++i) {
        if (!init_velocity[i]) continue;
        RealVec s = sample_offsets(grid, d, init_velocity[i], 0, 0, 0);
        u_tilde.segment((basis.nstress + i) * n, n) = s.cast<cxd>();
    }
    DenseVec u0_phys(sys.ncomp * n);
    for (Eigen::Index j = 0; j < n; ++j) {
        DenseVec comp(sys.ncomp);
        for (int c = 0; c < sys.ncomp; ++c) comp[c] = u_tilde[c * n + j];
        comp = basis.Mhalf_inv.cast<cxd>() * comp;
        for (int c = 0; c < sys.ncomp; ++c) u0_phys[c * n + j] = comp[c];
    }
    sys.U0hat = hat_forward(grid, d, sys.ncomp, u0_phys);
    return sys;
}

StaggeredVSSystem assemble_staggered_vs(const Grid1D& grid, const IsotropicMedium& medium, int d,
                                        const std::vector<FieldFn>& init_stress,
                                        const std::vector<FieldFn>& init_velocity) {
    if (d != 2 && d != 3) throw std::invalid_argument("assemble_staggered_vs: d must be 2 or 3");
    const Eigen::Index n = pow_dim(grid.M, d);
    const int nvel = d;
    const int nstr = (d == 3) ? 6 : 3;

    MediumSamples samples = sample_medium(medium, grid, d);

    StaggeredVSSystem sys;
    sys.d = d;
    sys.grid = grid;
    sys.nv = nvel * n;
    sys.ns = nstr * n;
    sys.R = samples.rho_at_velocity;
    sys.Lv = staggered_divergence(d, grid);

    // stiffness blocks: normal-stress coupling through lambda, shear through mu
    std::vector<Triplet> cts;
    const int nnormal = (d == 3) ? 3 : 2;
    for (int r = 0; r < nnormal; ++r) {
        const RealVec& lam = samples.lambda_at_stress[r];
        const RealVec& mu = samples.mu_at_stress[r];
        for (Eigen::Index j = 0; j < n; ++j) {
            for (int c = 0; c < nnormal; ++c) {
                const double v = (r == c) ? lam[j] + 2.0 * mu[j] : lam[j];
                cts.emplace_back(r * n + j, c * n + j, cxd(v, 0.0));
            }
        }
    }
    for (int s = nnormal; s < nstr; ++s) {
        const RealVec& mu = samples.mu_at_stress[s];
        for (Eigen::Index j = 0; j < n; ++j)
            cts.emplace_back(s * n + j, s * n + j, cxd(mu[j], 0.0));
    }
    SpMat cmat(sys.ns, sys.ns);
    cmat.setFromTriplets(cts.begin(), cts.end());
    sys.C = Operator(std::move(cmat));

    // AH = [[0, R^{-1} Lv], [-C Lv^T, 0]]
    RealVec rho_stack(sys.nv);
    for (int i = 0; i < nvel; ++i) rho_stack.segment(i * n, n) = samples.rho_at_velocity[i];
    SpMat rinv_lv = sys.Lv.sparse();
    for (int k = 0; k < rinv_lv.outerSize(); ++k)
        for (SpMat::InnerIterator it(rinv_lv, k); it; ++it)
            it.valueRef() /= rho_stack[it.row()];
    SpMat lower = SpMat(-1.0 * (sys.C.sparse() * SpMat(sys.Lv.sparse().transpose())));

    std::vector<Triplet> ats;
    ats.reserve(rinv_lv.nonZeros() + lower.nonZeros());
    for (int k = 0; k < rinv_lv.outerSize(); ++k)
        for (SpMat::InnerIterator it(rinv_lv, k); it; ++it)
            ats.emplace_back(it.row(), sys.nv + it.col(), it.value());
    for (int k = 0; k < lower.outerSize(); ++k)
        for (SpMat::InnerIterator it(lower, k); it; ++it)
            ats.emplace_back(sys.nv + it.row(), it.col(), it.value());
    SpMat ah(sys.nv + sys.ns, sys.nv + sys.ns);
    ah.setFromTriplets(ats.begin(), ats.end());
    sys.AH = Operator(std::move(ah));

    // initial state (v(0), sigma(0)) sampled at the staggered locations
    sys.u0 = DenseVec::Zero(sys.nv + sys.ns);
    const double half = 0.5;
    auto vel_offset = [&](int i) {
        double ox = (i == 0) ? half : 0.0, oy = (i == 1) ? half : 0.0, oz = (i == 2) ? half : 0.0;
        return std::array<double, 3>{ox, oy, oz};
    };
    for (int i = 0; i < static_cast<int>(init_velocity.size()) && i < nvel; ++i) {
        if (!init_velocity[i]) continue;
        auto o = vel_offset(i);
        sys.u0.segment(i * n, n) =
            sample_offsets(grid, d, init_velocity[i], o[0], o[1], o[2]).cast<cxd>();
    }
    std::vector<std::array<double, 3>> stress_off;
    if (d == 2)
        stress_off = {{0, 0, 0}, {0, 0, 0}, {half, half, 0}};
    else
        stress_off = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}, {half, half, 0}, {half, 0, half}, {0, half, half}};
    for (int s = 0; s < static_cast<int>(init_stress.size()) && s < nstr; ++s) {
        if (!init_stress[s]) continue;
        auto o = stress_off[s];
        sys.u0.segment(sys.nv + s * n, n) =
            sample_offsets(grid, d, init_stress[s], o[0], o[1], o[2]).cast<cxd>();
    }
    return sys;
}

DisplacementSystem assemble_displacement(const Grid1D& grid, const IsotropicMedium& medium,
                                         SpatialScheme scheme, int d,
                                         const std::vector<FieldFn>& force,
                                         const std::vector<FieldFn>& init) {
    if (scheme != SpatialScheme::spectral && scheme != SpatialScheme::central)
        throw std::invalid_argument("assemble_displacement: invalid scheme tag");
    if (d != 1 && d != 3)
        throw std::invalid_argument("assemble_displacement: d must be 1 or 3");
    medium.validate_constants();
    const double rho = medium.rho.constant;
    const double lam = medium.lambda.constant;
    const double mu = medium.mu.constant;
    const Eigen::Index n = pow_dim(grid.M, d);

    DisplacementSystem sys;
    sys.scheme = scheme;
    sys.d = d;
    sys.grid = grid;
    sys.hat_basis = (scheme == SpatialScheme::spectral);
    sys.ncomp = (d == 1) ? 3 : 10;

    // per-axis derivative operators in the stored basis
    std::vector<Operator> D(d);
    if (scheme == SpatialScheme::spectral) {
        const Operator Dmu = Operator::diagonal(fourier_frequencies(grid));
        for (int a = 0; a < d; ++a) D[a] = lift_axis(Dmu, a + 1, d);
    } else {
        const Operator Dc = central_difference_matrix(grid);
        for (int a = 0; a < d; ++a) D[a] = lift_axis(Dc, a + 1, d);
    }

    // block coefficients of the dispersion operator; L itself carries the
    // -i factor in the spectral (hat) basis and is real in the central one.
    std::vector<Triplet> ts;
    auto put = [&](int br, int bc, double coef, const Operator& blk) {
        if (coef == 0.0) return;
        const SpMat& m = blk.sparse();
        for (int k = 0; k < m.outerSize(); ++k)
            for (SpMat::InnerIterator it(m, k); it; ++it)
                ts.emplace_back(br * n + it.row(), bc * n + it.col(), coef * it.value());
    };
    if (d == 1) {
        // w = (xi, eps, p): dw/dt = B (d/dx) w with B = [[0,1/rho,1/rho],[2mu,0,0],[lam,0,0]]
        put(0, 1, 1.0 / rho, D[0]);
        put(0, 2, 1.0 / rho, D[0]);
        put(1, 0, 2.0 * mu, D[0]);
        put(2, 0, lam, D[0]);
    } else {
        // w = (xi1..3, z11,z22,z33, z23,z13,z12, p)
        // K(k) = diag(D1,D2,D3); M(k) = [[0,D3,D2],[D3,0,D1],[D2,D1,0]]; k = (D1;D2;D3)
        for (int i = 0; i < 3; ++i) {
            put(i, 3 + i, 1.0 / rho, D[i]);          // K/rho acting on zeta1
            put(3 + i, i, 2.0 * mu, D[i]);           // 2 mu K
            put(9, i, lam, D[i]);                    // lam k^T
            put(i, 9, 1.0 / rho, D[i]);              // k/rho acting on p
        }
        const int mrow[3][2] = {{1, 2}, {0, 2}, {0, 1}};   // zeta2 = (z23, z13, z12)
        const int mder[3][2] = {{2, 1}, {2, 0}, {1, 0}};   // M(k) pattern
        for (int i = 0; i < 3; ++i)
            for (int t = 0; t < 2; ++t) {
                put(i, 6 + mrow[i][t], 1.0 / rho, D[mder[i][t]]);  // M/rho on zeta2
                put(6 + mrow[i][t], i, mu, D[mder[i][t]]);         // mu M
            }
    }
    SpMat gen(sys.ncomp * n, sys.ncomp * n);
    gen.setFromTriplets(ts.begin(), ts.end());
    // dw/dt = G w with G as assembled above; L = -G (spectral basis carries the i)
    if (scheme == SpatialScheme::spectral)
        sys.L = Operator(SpMat(-imag_unit * gen));
    else
        sys.L = Operator(SpMat(-1.0 * gen));

    const int nforce = (d == 1) ? 1 : 3;
    DenseVec f_phys = DenseVec::Zero(sys.ncomp * n);
    for (int i = 0; i < static_cast<int>(force.size()) && i < nforce; ++i) {
        if (!force[i]) continue;
        f_phys.segment(i * n, n) = sample_offsets(grid, d, force[i], 0, 0, 0).cast<cxd>();
    }
    DenseVec w_phys = DenseVec::Zero(sys.ncomp * n);
    for (int c = 0; c < static_cast<int>(init.size()) && c < sys.ncomp; ++c) {
        if (!init[c]) continue;
        w_phys.segment(c * n, n) = sample_offsets(grid, d, init[c], 0, 0, 0).cast<cxd>();
    }
    if (sys.hat_basis) {
        sys.F = hat_forward(grid, d, sys.ncomp, f_phys);
        sys.w0 = hat_forward(grid, d, sys.ncomp, w_phys);
    } else {
        sys.F = f_phys;
        sys.w0 = w_phys;
    }
    return sys;
}

LinearODESystem to_linear_system(const SmfSystem& s) { return {s.A, s.fhat, s.U0hat}; }

LinearODESystem to_linear_system(const StaggeredVSSystem& s) {
    return {s.AH, DenseVec::Zero(s.u0.size()), s.u0};
}

LinearODESystem to_linear_system(const DisplacementSystem& s) {
    return {(-1.0) * s.L, DenseVec(-s.F), s.w0};
}

}  // namespace schrowave
