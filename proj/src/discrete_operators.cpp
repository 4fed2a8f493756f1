#include "schrowave/discrete_operators.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace schrowave {

namespace {

SpectralOperators build_spectral(int n, double length, const RealVec& mu) {
    SpectralOperators ops;
    ops.Dmu = mu;
    ops.Phi.resize(n, n);
    const double h = length / n;
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) ops.Phi(j, l) = std::exp(imag_unit * mu[l] * (j * h));
    // Columns are orthogonal with norm sqrt(n) on a uniform grid.
    ops.PhiInv = ops.Phi.adjoint() / static_cast<double>(n);
    ops.Pmu = ops.Phi * mu.cast<cxd>().asDiagonal() * ops.PhiInv;
    return ops;
}

}  // namespace

SpectralOperators spectral_operators(const Grid1D& grid) {
    return build_spectral(grid.M, grid.length(), fourier_frequencies(grid));
}

SpectralOperators spectral_operators(const PGrid& pgrid) {
    return build_spectral(pgrid.N, pgrid.window(), pgrid.frequencies());
}

Operator central_difference_matrix(const Grid1D& grid) {
    const int M = grid.M;
    const double w = 1.0 / (2.0 * grid.h);
    std::vector<Triplet> ts;
    ts.reserve(4 * M);
    for (int i = 0; i + 1 < M; ++i) {
        ts.emplace_back(i, i + 1, cxd(w, 0.0));
        ts.emplace_back(i + 1, i, cxd(-w, 0.0));
    }
    ts.emplace_back(0, M - 1, cxd(-w, 0.0));
    ts.emplace_back(M - 1, 0, cxd(w, 0.0));
    SpMat d(M, M);
    d.setFromTriplets(ts.begin(), ts.end());  // duplicate positions sum (M = 2 collapses to zero)
    return Operator(std::move(d));
}

Operator staggered_forward_difference(const Grid1D& grid) {
    const int M = grid.M;
    const double w = 1.0 / grid.h;
    std::vector<Triplet> ts;
    ts.reserve(2 * M);
    for (int i = 0; i < M; ++i) {
        ts.emplace_back(i, (i + 1) % M, cxd(w, 0.0));
        ts.emplace_back(i, i, cxd(-w, 0.0));
    }
    SpMat s(M, M);
    s.setFromTriplets(ts.begin(), ts.end());
    return Operator(std::move(s));
}

Operator staggered_divergence(int d, const Grid1D& grid) {
    if (d != 2 && d != 3) throw std::invalid_argument("staggered_divergence: d must be 2 or 3");
    const Operator S = staggered_forward_difference(grid);

    const auto S_axis = [&](int axis) { return lift_axis(S, axis, d); };
    const auto ST_axis = [&](int axis) { return lift_axis(S, axis, d).transpose(); };

    Eigen::Index n = 1;
    for (int i = 0; i < d; ++i) n *= grid.M;

    const int vrows = d;
    const int scols = (d == 3) ? 6 : 3;
    std::vector<Triplet> ts;
    auto put_block = [&](int br, int bc, const Operator& blk, double sign) {
        const SpMat& m = blk.sparse();
        for (int k = 0; k < m.outerSize(); ++k)
            for (SpMat::InnerIterator it(m, k); it; ++it)
                ts.emplace_back(br * n + it.row(), bc * n + it.col(), sign * it.value());
    };

    if (d == 3) {
        // velocity rows: (v1, v2, v3); stress cols: (s11, s22, s33, s12, s13, s23)
        put_block(0, 0, S_axis(1), 1.0);
        put_block(0, 3, ST_axis(2), -1.0);
        put_block(0, 4, ST_axis(3), -1.0);
        put_block(1, 1, S_axis(2), 1.0);
        put_block(1, 3, ST_axis(1), -1.0);
        put_block(1, 5, ST_axis(3), -1.0);
        put_block(2, 2, S_axis(3), 1.0);
        put_block(2, 4, ST_axis(1), -1.0);
        put_block(2, 5, ST_axis(2), -1.0);
    } else {
        // velocity rows: (v1, v2); stress cols: (s11, s22, s12)
        put_block(0, 0, S_axis(1), 1.0);
        put_block(0, 2, ST_axis(2), -1.0);
        put_block(1, 1, S_axis(2), 1.0);
        put_block(1, 2, ST_axis(1), -1.0);
    }

    SpMat lv(vrows * n, scols * n);
    lv.setFromTriplets(ts.begin(), ts.end());
    return Operator(std::move(lv));
}

}  // namespace schrowave
