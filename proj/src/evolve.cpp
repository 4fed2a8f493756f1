#include "schrowave/evolve.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/SparseLU>
#include <Eigen/SparseCholesky>
#include <unsupported/Eigen/MatrixFunctions>

namespace schrowave {

namespace {

constexpr Eigen::Index kDenseExpCap = 4096;
constexpr Eigen::Index kDenseBlockCap = 512;

struct StepPlan {
    int full = 0;
    double dt_last = 0.0;  // 0 means no partial step
};

StepPlan plan_steps(double dt, double T) {
    StepPlan p;
    p.full = static_cast<int>(std::floor(T / dt + 1e-9));
    const double rem = T - p.full * dt;
    if (rem > 1e-9 * std::max(1.0, T)) p.dt_last = rem;
    return p;
}

DenseMat dense_exponential(const Operator& A, double T, bool hamiltonian) {
    if (A.rows() > kDenseExpCap)
        throw std::invalid_argument("exact_exponential: dimension exceeds dense cap 4096");
    DenseMat m = A.dense();
    if (hamiltonian) m = (-imag_unit * T) * m;
    else m *= T;
    return m.exp();
}

class SparseStepper {
  public:
    // step matrix msolve, applied as state <- msolve^{-1} (mapply * state + add)
    SparseStepper(SpMat msolve, SpMat mapply, DenseVec add)
        : mapply_(std::move(mapply)), add_(std::move(add)) {
        solver_.compute(msolve);
        if (solver_.info() != Eigen::Success)
            throw std::runtime_error("evolve: singular step matrix");
    }
    void step(DenseVec& state) const {
        DenseVec rhs = mapply_ * state + add_;
        state = solver_.solve(rhs);
        if (solver_.info() != Eigen::Success)
            throw std::runtime_error("evolve: linear solve failed");
    }

  private:
    Eigen::SparseLU<SpMat> solver_;
    SpMat mapply_;
    DenseVec add_;
};

SparseStepper make_stepper(const Operator& op, double dt, bool hamiltonian, TimeScheme scheme,
                           const DenseVec* source) {
    const Eigen::Index n = op.rows();
    SpMat id(n, n);
    id.setIdentity();
    DenseVec add = DenseVec::Zero(n);
    if (hamiltonian) {
        if (scheme == TimeScheme::crank_nicolson) {
            SpMat msolve = id + SpMat(imag_unit * (dt / 2.0) * op.sparse());
            SpMat mapply = id - SpMat(imag_unit * (dt / 2.0) * op.sparse());
            return SparseStepper(std::move(msolve), std::move(mapply), std::move(add));
        }
        SpMat msolve = id + SpMat(imag_unit * dt * op.sparse());
        return SparseStepper(std::move(msolve), id, std::move(add));
    }
    if (source && source->size() > 0) add = dt * (*source);
    if (scheme == TimeScheme::crank_nicolson) {
        SpMat msolve = id - SpMat((dt / 2.0) * op.sparse());
        SpMat mapply = id + SpMat((dt / 2.0) * op.sparse());
        return SparseStepper(std::move(msolve), std::move(mapply), std::move(add));
    }
    SpMat msolve = id - SpMat(dt * op.sparse());
    return SparseStepper(std::move(msolve), id, std::move(add));
}

}  // namespace

int EvolutionConfig::steps() const { return plan_steps(dt, T).full + (plan_steps(dt, T).dt_last > 0 ? 1 : 0); }

void EvolutionConfig::validate() const {
    if (dt <= 0.0) throw std::invalid_argument("EvolutionConfig: dt must be positive");
    if (T < 0.0) throw std::invalid_argument("EvolutionConfig: T must be non-negative");
    if (T > 0.0 && T < dt) throw std::invalid_argument("EvolutionConfig: T must be at least dt");
}

EvolutionResult evolve(const Operator& A_or_H, const DenseVec& state0, const EvolutionConfig& cfg,
                       bool hamiltonian, const DenseVec* source) {
    cfg.validate();
    if (A_or_H.rows() != state0.size()) throw std::invalid_argument("evolve: dimension mismatch");
    EvolutionResult res;
    res.state = state0;
    if (cfg.T == 0.0) return res;

    if (cfg.scheme == TimeScheme::exact_exponential) {
        if (!hamiltonian && source && source->cwiseAbs().maxCoeff() > 0.0) {
            // augmented [[A, b], [0, 0]] exponential handles the constant source exactly
            const Eigen::Index n = A_or_H.rows();
            DenseMat aug = DenseMat::Zero(n + 1, n + 1);
            aug.topLeftCorner(n, n) = A_or_H.dense();
            aug.block(0, n, n, 1) = *source;
            if (n + 1 > kDenseExpCap)
                throw std::invalid_argument("exact_exponential: dimension exceeds dense cap 4096");
            DenseMat u = (aug * cfg.T).exp();
            DenseVec ext(n + 1);
            ext << state0, cxd(1.0, 0.0);
            res.state = (u * ext).head(n);
            return res;
        }
        res.state = dense_exponential(A_or_H, cfg.T, hamiltonian) * state0;
        return res;
    }

    const StepPlan plan = plan_steps(cfg.dt, cfg.T);
    if (cfg.store_trajectory) res.norms.push_back(res.state.norm());
    {
        SparseStepper stepper = make_stepper(A_or_H, cfg.dt, hamiltonian, cfg.scheme, source);
        for (int k = 0; k < plan.full; ++k) {
            stepper.step(res.state);
            if (cfg.store_trajectory) res.norms.push_back(res.state.norm());
        }
    }
    if (plan.dt_last > 0.0) {
        SparseStepper last = make_stepper(A_or_H, plan.dt_last, hamiltonian, cfg.scheme, source);
        last.step(res.state);
        if (cfg.store_trajectory) res.norms.push_back(res.state.norm());
    }
    return res;
}

namespace {

/// Dense propagator for one p-frequency block.
DenseMat block_propagator(const DenseMat& B, double dt, TimeScheme scheme) {
    const Eigen::Index n = B.rows();
    const DenseMat id = DenseMat::Identity(n, n);
    if (scheme == TimeScheme::crank_nicolson) {
        DenseMat msolve = id + imag_unit * (dt / 2.0) * B;
        DenseMat mapply = id - imag_unit * (dt / 2.0) * B;
        return msolve.partialPivLu().solve(mapply);
    }
    DenseMat msolve = id + imag_unit * dt * B;
    return msolve.partialPivLu().solve(id);
}

/// Schur-complement stepper for Hermitian blocks [[0, K], [K^dagger, 0]]:
/// (I + i tau B) x = b  reduces to  (I + tau^2 K K^dagger) x_v = b_v - i tau K b_s.
class SchurStepper {
  public:
    SchurStepper(const SpMat& K, double tau) : K_(K), Kd_(K.adjoint()), tau_(tau) {
        const Eigen::Index nv = K.rows();
        SpMat id(nv, nv);
        id.setIdentity();
        SpMat schur = id + SpMat((tau * tau) * (K_ * Kd_));
        chol_.compute(schur);
        if (chol_.info() != Eigen::Success)
            throw std::runtime_error("evolve: Schur factorization failed");
    }
    void solve(DenseVec& x) const {
        const Eigen::Index nv = K_.rows();
        DenseVec bv = x.head(nv), bs = x.tail(x.size() - nv);
        DenseVec rv = bv - imag_unit * tau_ * (K_ * bs);
        DenseVec xv = chol_.solve(rv);
        x.head(nv) = xv;
        x.tail(x.size() - nv) = bs - imag_unit * tau_ * (Kd_ * xv);
    }

  private:
    SpMat K_, Kd_;
    double tau_;
    Eigen::SimplicialLDLT<SpMat, Eigen::Lower> chol_;
};

void check_anti_diagonal(const SpMat& m, Eigen::Index nv, const char* name) {
    for (int k = 0; k < m.outerSize(); ++k)
        for (SpMat::InnerIterator it(m, k); it; ++it) {
            const bool upper = it.row() < nv;
            const bool left = it.col() < nv;
            if (upper == left)
                throw std::logic_error(std::string("evolve_schrodingerized: ") + name +
                                       " is not block anti-diagonal at the declared split");
        }
}

}  // namespace

DenseVec evolve_schrodingerized(const SchrodingerizedSystem& sys, const EvolutionConfig& cfg) {
    cfg.validate();
    const Eigen::Index n = sys.n_aug;
    const int N = sys.pgrid.N;
    if (sys.c0.size() != n * N) throw std::invalid_argument("evolve_schrodingerized: bad c0 size");
    DenseVec out = sys.c0;
    if (cfg.T == 0.0) return out;
    const RealVec mu = sys.pgrid.frequencies();
    const StepPlan plan = plan_steps(cfg.dt, cfg.T);

    const bool use_schur =
        sys.anti_diagonal_split.has_value() && cfg.scheme != TimeScheme::exact_exponential;
    if (use_schur) {
        check_anti_diagonal(sys.H1.sparse(), *sys.anti_diagonal_split, "H1");
        check_anti_diagonal(sys.H2.sparse(), *sys.anti_diagonal_split, "H2");
    }

    const SpMat& h1 = sys.H1.sparse();
    const SpMat& h2 = sys.H2.sparse();
    DenseVec slice(n);
    for (int l = 0; l < N; ++l) {
        for (Eigen::Index i = 0; i < n; ++i) slice[i] = out[i * N + l];
        SpMat block = SpMat(mu[l] * h1) - h2;
        if (cfg.scheme == TimeScheme::exact_exponential) {
            if (n > kDenseExpCap)
                throw std::invalid_argument("exact_exponential: block dimension exceeds 4096");
            DenseMat u = (DenseMat(block) * cxd(0.0, -cfg.T)).exp();
            slice = u * slice;
        } else if (use_schur) {
            const Eigen::Index nv = *sys.anti_diagonal_split;
            const SpMat K = block.block(0, nv, nv, n - nv);
            const double tau = (cfg.scheme == TimeScheme::crank_nicolson) ? cfg.dt / 2.0 : cfg.dt;
            SchurStepper stepper(K, tau);
            const bool cn = cfg.scheme == TimeScheme::crank_nicolson;
            for (int k = 0; k < plan.full; ++k) {
                if (cn) slice = slice - imag_unit * (cfg.dt / 2.0) * (block * slice);
                stepper.solve(slice);
            }
            if (plan.dt_last > 0.0) {
                const double tl = cn ? plan.dt_last / 2.0 : plan.dt_last;
                SchurStepper last(K, tl);
                if (cn) slice = slice - imag_unit * (plan.dt_last / 2.0) * (block * slice);
                last.solve(slice);
            }
        } else if (n <= kDenseBlockCap) {
            const DenseMat bd = DenseMat(block);
            DenseMat prop = block_propagator(bd, cfg.dt, cfg.scheme);
            for (int k = 0; k < plan.full; ++k) slice = prop * slice;
            if (plan.dt_last > 0.0) slice = block_propagator(bd, plan.dt_last, cfg.scheme) * slice;
        } else {
            Operator bop(block);
            SparseStepper stepper = make_stepper(bop, cfg.dt, true, cfg.scheme, nullptr);
            for (int k = 0; k < plan.full; ++k) stepper.step(slice);
            if (plan.dt_last > 0.0) {
                SparseStepper last = make_stepper(bop, plan.dt_last, true, cfg.scheme, nullptr);
                last.step(slice);
            }
        }
        for (Eigen::Index i = 0; i < n; ++i) out[i * N + l] = slice[i];
    }
    return out;
}

DenseVec qft_p(const DenseVec& c, Eigen::Index n_aug, const PGrid& pgrid) {
    const int N = pgrid.N;
    if (c.size() != n_aug * N) throw std::invalid_argument("qft_p: dimension mismatch");
    const RealVec mu = pgrid.frequencies();
    DenseMat phi(N, N);
    for (int j = 0; j < N; ++j)
        for (int l = 0; l < N; ++l) phi(j, l) = std::exp(imag_unit * mu[l] * (j * pgrid.dp));
    Eigen::Map<const DenseMat> cm(c.data(), N, n_aug);
    DenseMat v = phi * cm;
    DenseVec out(c.size());
    Eigen::Map<DenseMat>(out.data(), N, n_aug) = v;
    return out;
}

RecoveryPlan RecoveryPlan::point_at(const PGrid& pgrid, double p_star) {
    RecoveryPlan plan;
    plan.mode = RecoveryMode::point;
    plan.p_star = p_star;
    plan.p1_index = pgrid.first_node_at_or_above(p_star);
    return plan;
}

RecoveryPlan RecoveryPlan::integral_from(double p_star) {
    RecoveryPlan plan;
    plan.mode = RecoveryMode::integral;
    plan.p_star = p_star;
    return plan;
}

DenseVec recover_point(const DenseVec& v_h, const PGrid& pgrid, const RecoveryPlan& plan) {
    const int N = pgrid.N;
    const Eigen::Index n_aug = v_h.size() / N;
    if (v_h.size() != n_aug * N) throw std::invalid_argument("recover_point: bad layout");
    if (plan.p1_index < 0 || plan.p1_index >= N)
        throw std::out_of_range("recover_point: p1 index outside the p window");
    const double w = std::exp(pgrid.node(plan.p1_index));
    DenseVec u(n_aug);
    for (Eigen::Index i = 0; i < n_aug; ++i) u[i] = w * v_h[i * N + plan.p1_index];
    return u;
}

DenseVec recover_integral(const DenseVec& v_h, const PGrid& pgrid, const RecoveryPlan& plan) {
    const int N = pgrid.N;
    const Eigen::Index n_aug = v_h.size() / N;
    if (v_h.size() != n_aug * N) throw std::invalid_argument("recover_integral: bad layout");
    const int j0 = pgrid.first_node_at_or_above(plan.p_star);
    if (j0 >= N) throw std::out_of_range("recover_integral: empty integration range");
    const double w = std::exp(plan.p_star) * pgrid.dp;
    DenseVec u = DenseVec::Zero(n_aug);
    for (Eigen::Index i = 0; i < n_aug; ++i) {
        cxd acc(0.0, 0.0);
        for (int j = j0; j < N; ++j) acc += v_h[i * N + j];
        u[i] = w * acc;
    }
    return u;
}

}  // namespace schrowave
