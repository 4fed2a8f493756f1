#include "schrowave/schrodingerize.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

namespace schrowave {

double HermitianPair::reconstruction_error(const Operator& A) const {
    SpMat diff = A.sparse() - (H1.sparse() + SpMat(imag_unit * H2.sparse()));
    double mx = 0.0;
    for (int k = 0; k < diff.outerSize(); ++k)
        for (SpMat::InnerIterator it(diff, k); it; ++it) mx = std::max(mx, std::abs(it.value()));
    return mx;
}

HermitianPair hermitian_split(const Operator& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("hermitian_split: A must be square");
    SpMat adj = A.sparse().adjoint();
    HermitianPair pair;
    pair.H1 = Operator(SpMat(0.5 * (A.sparse() + adj)));
    pair.H2 = Operator(SpMat((A.sparse() - adj) * cxd(0.0, -0.5)));
    return pair;
}

WarpFunction WarpFunction::exact_kink() {
    WarpFunction w;
    w.tag = Tag::exact_kink;
    w.g = [](double p) { return std::exp(-std::abs(p)); };
    return w;
}

WarpFunction WarpFunction::smooth(int k) {
    if (k < 1 || k > 8) throw std::invalid_argument("WarpFunction::smooth: k must be in 1..8");
    // left branch h(p) = sum_j a_j e^{j p}, matching d^m/dp^m e^{-p} at 0 for m = 0..k
    const int terms = k + 1;
    RealMat V(terms, terms);
    RealVec rhs(terms);
    for (int m = 0; m <= k; ++m) {
        rhs[m] = (m % 2 == 0) ? 1.0 : -1.0;
        for (int j = 1; j <= terms; ++j) V(m, j - 1) = std::pow(static_cast<double>(j), m);
    }
    RealVec a = V.fullPivLu().solve(rhs);
    std::vector<double> coef(a.data(), a.data() + terms);
    WarpFunction w;
    w.tag = Tag::smooth;
    w.smoothness = k;
    w.g = [coef](double p) {
        if (p > 0.0) return std::exp(-p);
        double s = 0.0;
        for (size_t j = 0; j < coef.size(); ++j) s += coef[j] * std::exp((j + 1.0) * p);
        return s;
    };
    return w;
}

WarpFunction WarpFunction::smooth_custom(int k, std::function<double(double)> left_branch) {
    if (!left_branch) throw std::invalid_argument("smooth_custom: missing left branch");
    if (std::abs(left_branch(0.0) - 1.0) > 1e-9)
        throw std::invalid_argument("smooth_custom: left branch must be continuous at 0 (h(0) = 1)");
    WarpFunction w;
    w.tag = Tag::smooth;
    w.smoothness = k;
    w.g = [h = std::move(left_branch)](double p) { return p > 0.0 ? std::exp(-p) : h(p); };
    return w;
}

HomogenizeResult homogenize(const LinearODESystem& sys, std::optional<double> c_scale) {
    const Eigen::Index n = sys.A.rows();
    if (sys.u0.size() != n) throw std::invalid_argument("homogenize: u0 dimension mismatch");
    if (c_scale && *c_scale <= 0.0)
        throw std::invalid_argument("homogenize: c_scale must be positive");
    const double bmax = (sys.b.size() == 0) ? 0.0 : sys.b.cwiseAbs().maxCoeff();

    HomogenizeResult res;
    res.n_base = n;
    if (bmax == 0.0) {
        res.system = sys;
        res.system.b = DenseVec::Zero(n);
        res.n_aug = n;
        res.augmented = false;
        return res;
    }
    const double c = c_scale ? *c_scale : bmax;
    res.c_scale = c;
    res.augmented = true;

    Eigen::Index total = 2 * n;
    Eigen::Index padded = 1;
    while (padded < total) padded *= 2;
    res.pad = static_cast<int>(padded - total);
    res.n_aug = padded;

    std::vector<Triplet> ts;
    ts.reserve(sys.A.nonzeros() + n);
    const SpMat& a = sys.A.sparse();
    for (int k = 0; k < a.outerSize(); ++k)
        for (SpMat::InnerIterator it(a, k); it; ++it) ts.emplace_back(it.row(), it.col(), it.value());
    for (Eigen::Index i = 0; i < n; ++i)
        if (sys.b[i] != cxd(0.0, 0.0)) ts.emplace_back(i, n + i, sys.b[i] / c);
    SpMat aug(padded, padded);
    aug.setFromTriplets(ts.begin(), ts.end());
    res.system.A = Operator(std::move(aug));
    res.system.b = DenseVec::Zero(padded);
    res.system.u0 = DenseVec::Ones(padded);  // auxiliary block c*1 and ones padding
    res.system.u0.segment(0, n) = sys.u0;
    res.system.u0.segment(n, n) *= c;
    return res;
}

SchrodingerizedSystem schrodingerize(const HermitianPair& pair, const DenseVec& u0_aug,
                                     const PGrid& pgrid, const WarpFunction& warp) {
    const Eigen::Index n = pair.H1.rows();
    if (pair.H2.rows() != n || u0_aug.size() != n)
        throw std::invalid_argument("schrodingerize: dimension mismatch between pair and u0");
    if (!pair.H1.is_hermitian(1e-12) || !pair.H2.is_hermitian(1e-12))
        throw std::invalid_argument("schrodingerize: H1, H2 must be Hermitian");

    SchrodingerizedSystem sys;
    sys.H1 = pair.H1;
    sys.H2 = pair.H2;
    sys.pgrid = pgrid;
    sys.n_aug = n;

    // g-profile analysis: ghat = Phi_p^{-1} g(p_j)
    const int N = pgrid.N;
    const RealVec mu = pgrid.frequencies();
    DenseVec gs(N);
    for (int j = 0; j < N; ++j) gs[j] = warp.g(pgrid.node(j));
    DenseVec ghat(N);
    for (int l = 0; l < N; ++l) {
        cxd acc(0.0, 0.0);
        for (int j = 0; j < N; ++j) acc += std::exp(-imag_unit * mu[l] * (j * pgrid.dp)) * gs[j];
        ghat[l] = acc / static_cast<double>(N);
    }
    sys.c0.resize(n * N);
    for (Eigen::Index i = 0; i < n; ++i) sys.c0.segment(i * N, N) = u0_aug[i] * ghat;
    if (sys.c0.norm() == 0.0) throw std::invalid_argument("schrodingerize: zero initial state");
    return sys;
}

Operator SchrodingerizedSystem::hs() const {
    const Operator Dp = Operator::diagonal(pgrid.frequencies());
    const Operator In = Operator::identity(pgrid.N);
    return kron(H1, Dp) - kron(H2, In);
}

int SchrodingerizedSystem::hs_sparsity() const {
    // merge H1/H2 row patterns once, then count nonzeros of mu_l*h1 - h2 per l
    const Eigen::Index n = n_aug;
    std::vector<std::vector<std::pair<Eigen::Index, std::pair<cxd, cxd>>>> rows(n);
    auto accumulate = [&](const SpMat& m, bool first) {
        for (int k = 0; k < m.outerSize(); ++k)
            for (SpMat::InnerIterator it(m, k); it; ++it) {
                auto& row = rows[it.row()];
                auto pos = std::find_if(row.begin(), row.end(),
                                        [&](auto& e) { return e.first == it.col(); });
                if (pos == row.end()) {
                    row.push_back({it.col(), {cxd(0, 0), cxd(0, 0)}});
                    pos = std::prev(row.end());
                }
                (first ? pos->second.first : pos->second.second) = it.value();
            }
    };
    accumulate(H1.sparse(), true);
    accumulate(H2.sparse(), false);
    const RealVec mu = pgrid.frequencies();
    int best = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (int l = 0; l < pgrid.N; ++l) {
            int cnt = 0;
            for (auto& [col, hv] : rows[i])
                if (mu[l] * hv.first - hv.second != cxd(0.0, 0.0)) ++cnt;
            best = std::max(best, cnt);
        }
    }
    return best;
}

double SchrodingerizedSystem::hs_max_norm() const {
    const RealVec mu = pgrid.frequencies();
    const double mu_lo = mu.minCoeff(), mu_hi = mu.maxCoeff();
    double mx = 0.0;
    std::map<std::pair<Eigen::Index, Eigen::Index>, std::pair<cxd, cxd>> entries;
    const SpMat& h1 = H1.sparse();
    for (int k = 0; k < h1.outerSize(); ++k)
        for (SpMat::InnerIterator it(h1, k); it; ++it) entries[{it.row(), it.col()}].first = it.value();
    const SpMat& h2 = H2.sparse();
    for (int k = 0; k < h2.outerSize(); ++k)
        for (SpMat::InnerIterator it(h2, k); it; ++it) entries[{it.row(), it.col()}].second = it.value();
    for (auto& [pos, hv] : entries) {
        // |mu*a - b| is convex in mu, so the max over the window sits at an endpoint
        mx = std::max({mx, std::abs(mu_lo * hv.first - hv.second),
                       std::abs(mu_hi * hv.first - hv.second)});
    }
    return mx;
}

double largest_eigenvalue(const Operator& H, Eigen::Index dense_cap, double tol) {
    const Eigen::Index n = H.rows();
    if (n <= dense_cap) {
        Eigen::SelfAdjointEigenSolver<DenseMat> es(H.dense(), Eigen::EigenvaluesOnly);
        return es.eigenvalues().maxCoeff();
    }
    // Lanczos with full reorthogonalization; spectra here are small and real-symmetric-like
    const int max_iter = 300;
    std::vector<DenseVec> basis;
    std::vector<double> alpha, beta;
    DenseVec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = std::sin(static_cast<double>(i) + 1.0);
    v.normalize();
    basis.push_back(v);
    double lambda_prev = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        DenseVec w = H.sparse() * basis.back();
        const double a = std::real(basis.back().dot(w));
        alpha.push_back(a);
        w -= a * basis.back();
        if (basis.size() > 1) w -= beta.back() * basis[basis.size() - 2];
        for (const auto& q : basis) w -= q.dot(w) * q;
        const double b = w.norm();
        const int m = static_cast<int>(alpha.size());
        if (m >= 2 || b < 1e-14) {
            RealMat T = RealMat::Zero(m, m);
            for (int i = 0; i < m; ++i) {
                T(i, i) = alpha[i];
                if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
            }
            Eigen::SelfAdjointEigenSolver<RealMat> es(T, Eigen::EigenvaluesOnly);
            const double lambda = es.eigenvalues().maxCoeff();
            if (b < 1e-14 || (it > 10 && std::abs(lambda - lambda_prev) <=
                                             tol * std::max(1.0, std::abs(lambda))))
                return lambda;
            lambda_prev = lambda;
        }
        if (b < 1e-14) break;
        beta.push_back(b);
        basis.push_back(w / b);
    }
    return lambda_prev;
}

double pstar(const Operator& H1, double T) {
    if (!H1.is_hermitian(1e-10)) throw std::invalid_argument("pstar: H1 must be Hermitian");
    const double lmax = largest_eigenvalue(H1);
    return std::max(lmax * T, 0.0);
}

double pstar_subspace(const HermitianPair& pair, const DenseVec& u0, double T, int cap) {
    const Eigen::Index n = pair.H1.rows();
    if (u0.size() != n) throw std::invalid_argument("pstar_subspace: dimension mismatch");
    const double full = pstar(pair.H1, T);
    if (u0.norm() == 0.0) return full;

    // invariant-subspace closure of u0 under H1 and H2; components below the
    // relative rank tolerance are treated as roundoff, not as populated modes
    const double rank_tol = 1e-8;
    std::vector<DenseVec> basis;
    auto try_add = [&](DenseVec w, double scale) {
        for (const auto& q : basis) w -= q.dot(w) * q;
        for (const auto& q : basis) w -= q.dot(w) * q;  // second Gram-Schmidt pass
        if (w.norm() > rank_tol * scale) {
            basis.push_back(w.normalized());
            return true;
        }
        return false;
    };
    try_add(u0, u0.norm());
    size_t frontier = 0;
    while (frontier < basis.size()) {
        if (static_cast<int>(basis.size()) > cap) return full;
        DenseVec v = basis[frontier++];
        DenseVec w1 = pair.H1.sparse() * v;
        DenseVec w2 = pair.H2.sparse() * v;
        const double scale = std::max({w1.norm(), w2.norm(), 1e-300});
        try_add(std::move(w1), scale);
        try_add(std::move(w2), scale);
    }

    const int m = static_cast<int>(basis.size());
    DenseMat V(n, m);
    for (int k = 0; k < m; ++k) V.col(k) = basis[k];
    DenseMat h1v = V.adjoint() * (pair.H1.sparse() * V);
    Eigen::SelfAdjointEigenSolver<DenseMat> es((0.5 * (h1v + h1v.adjoint())).eval(),
                                               Eigen::EigenvaluesOnly);
    const double restricted = std::max(es.eigenvalues().maxCoeff() * T, 0.0);
    return std::min(restricted, full);
}

}  // namespace schrowave
