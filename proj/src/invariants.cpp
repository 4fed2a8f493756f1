#include "schrowave/invariants.hpp"

#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "schrowave/evolve.hpp"
#include "schrowave/reference.hpp"
#include "schrowave/resources.hpp"

namespace schrowave {

bool ValidationReport::all_pass() const {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

std::string ValidationReport::to_text() const {
    std::ostringstream os;
    for (const auto& r : results) {
        os << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << "  (measured " << r.measured
           << ", tolerance " << r.tolerance << ")\n";
    }
    os << (all_pass() ? "all invariants hold\n" : "invariant failures present\n");
    return os.str();
}

namespace {

double max_abs(const DenseMat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

void push(ValidationReport& rep, const std::string& name, double measured, double tol) {
    rep.results.push_back({name, tol, measured, measured <= tol});
}

int brute_force_sparsity(const Operator& op) {
    DenseMat d = op.dense();
    int best = 0;
    for (Eigen::Index i = 0; i < d.rows(); ++i) {
        int cnt = 0;
        for (Eigen::Index j = 0; j < d.cols(); ++j)
            if (d(i, j) != cxd(0.0, 0.0)) ++cnt;
        best = std::max(best, cnt);
    }
    return best;
}

}  // namespace

ValidationReport validate_invariants(const ValidationOptions& opts) {
    ValidationReport rep;
    const IsotropicMedium ref_medium = IsotropicMedium::constants(1.0, 2.0, 1.0);
    const IsotropicMedium row2 = IsotropicMedium::constants(1.41, 0.61, 0.40);

    {  // spectral factorization across grid sizes
        double worst = 0.0;
        for (int M : {2, 4, 8, 16, 32, 64}) {
            auto ops = spectral_operators(make_uniform_grid(0.0, 1.0, M));
            DenseMat rebuilt = ops.Phi * ops.Dmu.cast<cxd>().asDiagonal() * ops.PhiInv;
            worst = std::max(worst, max_abs(DenseMat(rebuilt - ops.Pmu)) /
                                        std::max(1.0, ops.Dmu.cwiseAbs().maxCoeff()));
        }
        push(rep, "spectral factorization Pmu = Phi Dmu Phi^-1, M in {2..64}", worst, 1e-12);
    }

    {  // central-difference antisymmetry (fault-injection target)
        Grid1D g = make_uniform_grid(0.0, 1.0, 16);
        DenseMat d = central_difference_matrix(g).dense();
        if (opts.corrupt_central_wrap) d(g.M - 1, 0) = -d(g.M - 1, 0);
        push(rep, "central-difference antisymmetry D + D^T = 0", max_abs(DenseMat(d + d.transpose())),
             0.0);
    }

    {  // constants annihilated
        Grid1D g = make_uniform_grid(0.0, 2.0, 32);
        DenseVec ones = DenseVec::Constant(32, cxd(1.0, 0.0));
        const double dmax =
            (central_difference_matrix(g).dense() * ones).cwiseAbs().maxCoeff();
        const double smax =
            (staggered_forward_difference(g).dense() * ones).cwiseAbs().maxCoeff();
        push(rep, "difference operators annihilate constants", std::max(dmax, smax), 1e-12 / g.h);
    }

    {  // kronecker lifts commute across axes
        DenseMat B = DenseMat::Random(3, 3), C = DenseMat::Random(3, 3);
        Operator Bop = Operator::from_dense(B), Cop = Operator::from_dense(C);
        DenseMat lhs = (lift_axis(Bop, 1, 2) * lift_axis(Cop, 2, 2)).dense();
        DenseMat rhs = (lift_axis(Cop, 2, 2) * lift_axis(Bop, 1, 2)).dense();
        push(rep, "kronecker lifts on distinct axes commute", max_abs(DenseMat(lhs - rhs)), 1e-13);
    }

    {  // sparsity metadata is the brute-force row count
        Grid1D g = make_uniform_grid(0.0, 1.0, 4);
        double worst = 0.0;
        for (const Operator& op : {central_difference_matrix(g), staggered_forward_difference(g),
                                   staggered_divergence(2, g)})
            worst = std::max(worst, std::abs(double(op.sparsity() - brute_force_sparsity(op))));
        push(rep, "sparsity metadata equals brute-force row count", worst, 0.0);
    }

    {  // assembled spectra stay on the imaginary axis
        double worst = 0.0;
        Grid1D g8 = make_uniform_grid(0.0, 1.0, 8);
        Grid1D g4 = make_uniform_grid(0.0, 1.0, 4);
        auto spectrum_real = [](const Operator& A) {
            Eigen::ComplexEigenSolver<DenseMat> es(A.dense());
            return es.eigenvalues().real().cwiseAbs().maxCoeff();
        };
        worst = std::max(worst, spectrum_real(assemble_smf(g8, ref_medium, 1).A));
        worst = std::max(worst, spectrum_real(to_linear_system(
                                    assemble_staggered_vs(g4, ref_medium, 2)).A));
        worst = std::max(worst, spectrum_real(to_linear_system(assemble_displacement(
                                    g8, row2, SpatialScheme::spectral, 1)).A));
        worst = std::max(worst, spectrum_real(to_linear_system(assemble_displacement(
                                    g8, row2, SpatialScheme::central, 1)).A));
        push(rep, "force-free generator spectra are purely imaginary (M <= 8)", worst, 1e-10);
    }

    {  // energy conservation under the dense exponential
        Grid1D g = make_uniform_grid(0.0, 1.0, 8);
        SmfSystem smf = assemble_smf(g, ref_medium, 1, {},
                                     {[](double x, double, double) {
                                         return std::exp(-40.0 * (x - 0.5) * (x - 0.5));
                                     }});
        DenseVec u1 = (smf.A.dense() * 0.7).exp() * smf.U0hat;
        const double drift = std::abs(u1.norm() - smf.U0hat.norm()) / smf.U0hat.norm();
        push(rep, "SMF energy norm conserved under exp(G t)", drift, 1e-10);
    }

    {  // block-structure assertions
        Grid1D g = make_uniform_grid(0.0, 1.0, 4);
        double worst = 0.0;
        SmfSystem smf = assemble_smf(g, ref_medium, 1);
        const Eigen::Index n = 4;
        DenseMat a = smf.A.dense();
        for (int c = 0; c < smf.ncomp; ++c)
            worst = std::max(worst, max_abs(DenseMat(a.block(c * n, c * n, n, n))));
        StaggeredVSSystem vs = assemble_staggered_vs(g, ref_medium, 2);
        DenseMat ah = vs.AH.dense();
        worst = std::max(worst, max_abs(DenseMat(ah.topLeftCorner(vs.nv, vs.nv))));
        worst = std::max(worst, max_abs(DenseMat(ah.bottomRightCorner(vs.ns, vs.ns))));
        DisplacementSystem disp = assemble_displacement(g, row2, SpatialScheme::central, 3);
        DenseMat l = disp.L.dense();
        const Eigen::Index nb = 64;
        // only the xi trio couples to the remaining blocks (arrow pattern)
        for (int br = 0; br < 10; ++br)
            for (int bc = 0; bc < 10; ++bc) {
                const bool xi_row = br < 3, xi_col = bc < 3;
                if (xi_row == xi_col)
                    worst = std::max(worst, max_abs(DenseMat(l.block(br * nb, bc * nb, nb, nb))));
            }
        push(rep, "block structure (no SMF diagonal, staggered anti-diagonal, displacement arrow)",
             worst, 0.0);
    }

    {  // sparsity regressions in the proof regimes
        Grid1D g2 = make_uniform_grid(0.0, 1.0, 2);
        Grid1D g4 = make_uniform_grid(0.0, 1.0, 4);
        const int s_smf = assemble_smf(g2, IsotropicMedium::constants(1.0, 0.0, 1.0), 3).A.sparsity();
        const int s_stag = assemble_staggered_vs(g2, ref_medium, 3).AH.sparsity();
        LinearODESystem disp = to_linear_system(assemble_displacement(
            g4, row2, SpatialScheme::central, 3,
            {[](double, double, double) { return 0.1; }}));
        const int s_cent = homogenize(disp, 1.0).system.A.sparsity();
        const double miss = std::abs(s_smf - 3) + std::abs(s_stag - 6) + std::abs(s_cent - 9);
        push(rep, "sparsity regressions s = 3 (SMF), 6 (staggered), 9 (central, homogenized)", miss,
             0.0);
    }

    {  // hermitian split reconstruction
        DenseMat a = DenseMat::Random(12, 12);
        Operator A = Operator::from_dense(a);
        HermitianPair p = hermitian_split(A);
        push(rep, "hermitian split reconstruction A = H1 + i H2",
             p.reconstruction_error(A) / std::max(1.0, A.max_norm()), 1e-13);
    }

    {  // H_s hermiticity and scale covariance
        DenseMat a = DenseMat::Random(4, 4);
        PGrid pg = make_pgrid(1.0, 16);
        auto make = [&](double scale) {
            HermitianPair p = hermitian_split(Operator::from_dense(DenseMat(scale * a)));
            return schrodingerize(p, DenseVec::Ones(4), pg, WarpFunction::exact_kink());
        };
        SchrodingerizedSystem s1 = make(1.0), s2 = make(2.0);
        Operator hs1 = s1.hs();
        const double herm = max_abs(DenseMat(hs1.dense() - hs1.dense().adjoint()));
        push(rep, "H_s hermiticity", herm, 1e-12);
        push(rep, "scale covariance of the schrodingerized Hamiltonian",
             max_abs(DenseMat(s2.hs().dense() - 2.0 * hs1.dense())), 1e-12);
    }

    {  // anti-Hermitian generators decouple and recover exactly
        Grid1D g = make_uniform_grid(0.0, 1.0, 8);
        SmfSystem smf = assemble_smf(g, ref_medium, 1, {},
                                     {[](double x, double, double) {
                                         return std::exp(-20.0 * (x - 0.5) * (x - 0.5));
                                     }});
        LinearODESystem ode = to_linear_system(smf);
        HermitianPair pair = hermitian_split(ode.A);
        PGrid pg = make_pgrid(1.0, 256);
        SchrodingerizedSystem sys = schrodingerize(pair, ode.u0, pg, WarpFunction::exact_kink());
        EvolutionConfig cfg{TimeScheme::exact_exponential, 1.0, 1.0};
        DenseVec u = recover_point(qft_p(evolve_schrodingerized(sys, cfg), sys.n_aug, pg), pg,
                                   RecoveryPlan::point_at(pg, 0.0));
        DenseVec direct = (ode.A.dense() * 1.0).exp() * ode.u0;
        push(rep, "recovery matches direct evolution when H1 = 0",
             (u - direct).cwiseAbs().maxCoeff(), 1e-10);
    }

    {  // lambda_max doubles with M for the 1-D displacement system
        Grid1D dom = make_uniform_grid(0.0, 1.0, 16);
        double worst = 0.0;
        for (SpatialScheme scheme : {SpatialScheme::spectral, SpatialScheme::central}) {
            PstarScalingTable t = pstar_scaling(scheme, {16, 32, 64}, row2, dom);
            worst = std::max(worst, std::abs(t.rows[2].lambda_max / t.rows[1].lambda_max - 2.0));
        }
        push(rep, "lambda_max(H1) ratio across M doubling", worst, 0.05);
    }

    {  // CN unitarity drift
        DenseMat a = DenseMat::Random(5, 5);
        HermitianPair pair = hermitian_split(Operator::from_dense(a));
        PGrid pg = make_pgrid(1.0, 16);
        SchrodingerizedSystem sys =
            schrodingerize(pair, DenseVec::Ones(5), pg, WarpFunction::exact_kink());
        EvolutionConfig cfg{TimeScheme::crank_nicolson, 1e-3, 1.0, true};
        EvolutionResult res = evolve(sys.hs(), sys.c0, cfg, true);
        double drift = 0.0;
        for (double nn : res.norms) drift = std::max(drift, std::abs(nn - res.norms[0]));
        push(rep, "Crank-Nicolson norm drift over 1000 steps", drift / res.norms[0], 1e-12);
    }

    {  // oracle equivalence at desk scale (spectral SMF with force)
        Grid1D g = make_uniform_grid(0.0, 10.0, 8);
        SmfSystem smf = assemble_smf(g, ref_medium, 1,
                                     {[](double, double, double) { return 0.1; }},
                                     {[](double x, double, double) {
                                         return std::exp(-(x - 5.0) * (x - 5.0));
                                     }});
        LinearODESystem ode = to_linear_system(smf);
        HomogenizeResult hom = homogenize(ode, 1.0);
        HermitianPair pair = hermitian_split(hom.system.A);
        const double ps = pstar(pair.H1, 1.0);
        PGrid pg = make_pgrid_window(-2.0, ps + 2.0, 64);
        SchrodingerizedSystem sys =
            schrodingerize(pair, hom.system.u0, pg, WarpFunction::exact_kink());
        EvolutionConfig cfg{TimeScheme::crank_nicolson, 1e-3, 1.0};
        DenseVec u = recover_point(qft_p(evolve_schrodingerized(sys, cfg), sys.n_aug, pg), pg,
                                   RecoveryPlan::point_at(pg, ps));
        DenseVec oracle = (hom.system.A.dense() * 1.0).exp() * hom.system.u0;
        const double tol = 5.0 * (pg.dp + cfg.dt * cfg.dt) * oracle.head(hom.n_base).norm();
        push(rep, "recovered state matches the dense exponential oracle",
             (u.head(hom.n_base) - oracle.head(hom.n_base)).norm() / tol, 1.0);
    }

    {  // recovery mode consistency and point robustness
        DenseMat a(1, 1);
        a << cxd(-1.0, 0.0);
        HermitianPair pair = hermitian_split(Operator::from_dense(a));
        PGrid pg = make_pgrid_window(-4.0, 8.0, 256);
        SchrodingerizedSystem sys =
            schrodingerize(pair, DenseVec::Ones(1), pg, WarpFunction::exact_kink());
        EvolutionConfig cfg{TimeScheme::crank_nicolson, 1e-3, 1.0};
        DenseVec vh = qft_p(evolve_schrodingerized(sys, cfg), 1, pg);
        DenseVec up = recover_point(vh, pg, RecoveryPlan::point_at(pg, 0.0));
        DenseVec ui = recover_integral(vh, pg, RecoveryPlan::integral_from(0.0));
        push(rep, "point and integral recoveries agree", std::abs(up[0] - ui[0]) / (3.0 * pg.dp),
             1.0);
        double spread = 0.0;
        const int j0 = pg.first_node_at_or_above(0.0);
        const int j1 = pg.first_node_at_or_above(1.0);
        for (int j = j0; j <= j1; ++j) {
            RecoveryPlan plan;
            plan.p1_index = j;
            spread = std::max(spread, std::abs(recover_point(vh, pg, plan)[0] - up[0]));
        }
        push(rep, "point recovery is stable across [p*, p*+1]", spread / (5.0 * pg.dp), 1.0);
    }

    {  // exact solution self-test
        push(rep, "exact hyperbolic triple: spectral residual at M = 64",
             ExactHyperbolicSolution(0.40, 0.61).spectral_residual(
                 make_uniform_grid(0.0, 1.0, 64), 0.5),
             1e-10);
    }

    {  // classical CN energy drift per 100 steps
        Grid1D g = make_uniform_grid(0.0, 1.0, 8);
        SmfSystem smf = assemble_smf(g, ref_medium, 1, {},
                                     {[](double x, double, double) {
                                         return std::exp(-40.0 * (x - 0.5) * (x - 0.5));
                                     }});
        LinearODESystem ode = to_linear_system(smf);
        EvolutionConfig cfg{TimeScheme::crank_nicolson, 1e-2, 1.0, true};
        EvolutionResult res = evolve(ode.A, ode.u0, cfg, false);
        double drift = 0.0;
        for (double nn : res.norms) drift = std::max(drift, std::abs(nn - res.norms[0]));
        push(rep, "classical CN conserves the constant-medium energy norm", drift / res.norms[0],
             1e-10);
    }

    {  // convergence orders of the classical solvers
        ExactHyperbolicSolution exact(0.40, 0.61);
        auto err_at = [&](int M, double dt, SpatialScheme scheme) {
            Grid1D g = make_uniform_grid(0.0, 1.0, M);
            DisplacementSystem sys = assemble_displacement(
                g, row2, scheme, 1, {},
                {[&](double x, double, double) { return exact.xi(x, 0.0); },
                 [&](double x, double, double) { return exact.eps(x, 0.0); },
                 [&](double x, double, double) { return exact.p(x, 0.0); }});
            LinearODESystem ode = to_linear_system(sys);
            EvolutionConfig cfg{TimeScheme::crank_nicolson, dt, 1.0};
            DenseVec w = classical_solve(ode, cfg);
            if (sys.hat_basis) w = hat_inverse(g, 1, 3, w);
            return error_norms(w, exact.sample(g, 1.0), {"xi", "eps", "p"}, g.h).max_l2_rel();
        };
        const double e32 = err_at(32, 1.0 / 2000, SpatialScheme::central);
        const double e64 = err_at(64, 1.0 / 2000, SpatialScheme::central);
        const double e128 = err_at(128, 1.0 / 2000, SpatialScheme::central);
        const double order = std::log2(e32 / e64) * 0.5 + std::log2(e64 / e128) * 0.5;
        push(rep, "central-difference spatial order 2.0 +- 0.2", std::abs(order - 2.0), 0.2);
        const double s100 = err_at(32, 1.0 / 100, SpatialScheme::spectral);
        const double s200 = err_at(32, 1.0 / 200, SpatialScheme::spectral);
        push(rep, "spectral classical error is time-step dominated", std::abs(s100 / s200 - 4.0),
             0.5);
    }

    {  // resource model agreement and monotonicity
        Grid1D g = make_uniform_grid(0.0, 1.0, 2);
        Operator ah = assemble_staggered_vs(g, ref_medium, 3).AH;
        HermitianPair pair = hermitian_split(ah);
        const double mismatch =
            std::abs(pair.H1.sparsity() - brute_force_sparsity(pair.H1)) +
            std::abs(pair.H1.max_norm() - pair.H1.dense().cwiseAbs().maxCoeff());
        push(rep, "measured sparsity and max-norm equal brute force", mismatch, 0.0);

        ComplexityScenario sc;
        sc.formulation = Formulation::smf_spectral;
        sc.d = 2;
        sc.epsilon = 1e-2;
        ComplexityScenario finer = sc;
        finer.epsilon = 1e-3;
        ComplexityScenario longer = sc;
        longer.T = 2.0;
        const bool monotone = predict(finer).n_gate_proxy > predict(sc).n_gate_proxy &&
                              predict(longer).n_gate_proxy > predict(sc).n_gate_proxy;
        push(rep, "predicted proxies are monotone in 1/epsilon and T", monotone ? 0.0 : 1.0, 0.0);

        PstarScalingTable t =
            pstar_scaling(SpatialScheme::spectral, {16, 32, 64}, row2, make_uniform_grid(0, 1, 16));
        push(rep, "p* scaling fit R^2 >= 0.999", 1.0 - t.r_squared, 1e-3);
    }

    return rep;
}

}  // namespace schrowave
