#include <doctest.h>

#include <cmath>

#include "schrowave/reference.hpp"

using namespace schrowave;

TEST_CASE("classical solve basics") {
    SUBCASE("zero generator is the identity map") {
        LinearODESystem sys;
        sys.A = Operator::zero(3, 3);
        sys.b = DenseVec::Zero(3);
        sys.u0 = DenseVec::Random(3);
        EvolutionConfig cfg{TimeScheme::crank_nicolson, 0.1, 1.0};
        CHECK((classical_solve(sys, cfg) - sys.u0).cwiseAbs().maxCoeff() <= 1e-14);
    }

    SUBCASE("scalar decay") {
        LinearODESystem sys;
        DenseMat a(1, 1);
        a << cxd(-1.0, 0.0);
        sys.A = Operator::from_dense(a);
        sys.b = DenseVec::Zero(1);
        sys.u0 = DenseVec::Ones(1);
        EvolutionConfig cfg{TimeScheme::crank_nicolson, 1e-3, 1.0};
        CHECK(classical_solve(sys, cfg)[0].real() == doctest::Approx(std::exp(-1.0)).epsilon(1e-6));
    }
}

TEST_CASE("exact hyperbolic solution") {
    ExactHyperbolicSolution row1(0.35, 0.71);
    CHECK(row1.rho() == doctest::Approx(1.41));

    SUBCASE("initial snapshots") {
        for (double x : {0.0, 0.13, 0.77}) {
            CHECK(row1.xi(x, 0.0) == doctest::Approx(std::sin(8 * M_PI * x)));
            CHECK(row1.eps(x, 0.0) == doctest::Approx(8 * M_PI * 0.35 * std::cos(4 * M_PI * x)));
            CHECK(row1.p(x, 0.0) == doctest::Approx(0.71 * 4 * M_PI * std::cos(4 * M_PI * x)));
        }
    }

    SUBCASE("medium rows satisfy rho = lambda + 2 mu") {
        CHECK(1.41 - (0.71 + 2 * 0.35) == doctest::Approx(0.0));
        CHECK(1.41 - (0.61 + 2 * 0.40) == doctest::Approx(0.0));
    }

    SUBCASE("spectral residual vanishes on resolved grids") {
        Grid1D g = make_uniform_grid(0.0, 1.0, 64);
        CHECK(row1.spectral_residual(g, 0.0) <= 1e-10);
        CHECK(row1.spectral_residual(g, 0.37) <= 1e-10);
        CHECK(row1.spectral_residual(g, 1.0) <= 1e-10);
    }
}

TEST_CASE("classical spectral run against the exact solution") {
    ExactHyperbolicSolution exact(0.35, 0.71);
    IsotropicMedium medium = IsotropicMedium::constants(1.41, 0.71, 0.35);
    Grid1D g = make_uniform_grid(0.0, 1.0, 32);
    DisplacementSystem sys = assemble_displacement(
        g, medium, SpatialScheme::spectral, 1, {},
        {[&](double x, double, double) { return exact.xi(x, 0.0); },
         [&](double x, double, double) { return exact.eps(x, 0.0); },
         [&](double x, double, double) { return exact.p(x, 0.0); }});
    LinearODESystem ode = to_linear_system(sys);
    EvolutionConfig cfg{TimeScheme::crank_nicolson, 1.0 / 2000.0, 1.0};
    DenseVec w_hat = classical_solve(ode, cfg);
    DenseVec w = hat_inverse(g, 1, 3, w_hat);
    DenseVec ref = exact.sample(g, 1.0);
    ErrorReport rep = error_norms(w, ref, {"xi", "eps", "p"}, g.h);
    CHECK(rep.max_l2_rel() <= 1e-2);
}

TEST_CASE("crank-nicolson conserves the spectral energy") {
    IsotropicMedium medium = IsotropicMedium::constants(1.0, 2.0, 1.0);
    Grid1D g = make_uniform_grid(0.0, 1.0, 8);
    SmfSystem smf = assemble_smf(g, medium, 1, {},
                                 {[](double x, double, double) {
                                     return std::exp(-30.0 * (x - 0.5) * (x - 0.5));
                                 }});
    LinearODESystem ode = to_linear_system(smf);
    EvolutionConfig cfg{TimeScheme::crank_nicolson, 1e-2, 1.0, true};
    EvolutionResult res = evolve(ode.A, ode.u0, cfg, false);
    REQUIRE(res.norms.size() == 101);
    const double n0 = res.norms.front();
    for (double n : res.norms) CHECK(std::abs(n - n0) / n0 <= 1e-10);
}

TEST_CASE("central-difference classical solve converges at second order") {
    ExactHyperbolicSolution exact(0.40, 0.61);
    IsotropicMedium medium = IsotropicMedium::constants(1.41, 0.61, 0.40);
    auto err_at = [&](int M) {
        Grid1D g = make_uniform_grid(0.0, 1.0, M);
        DisplacementSystem sys = assemble_displacement(
            g, medium, SpatialScheme::central, 1, {},
            {[&](double x, double, double) { return exact.xi(x, 0.0); },
             [&](double x, double, double) { return exact.eps(x, 0.0); },
             [&](double x, double, double) { return exact.p(x, 0.0); }});
        LinearODESystem ode = to_linear_system(sys);
        EvolutionConfig cfg{TimeScheme::crank_nicolson, 1.0 / 2000.0, 1.0};
        DenseVec w = classical_solve(ode, cfg);
        ErrorReport rep = error_norms(w, exact.sample(g, 1.0), {"xi", "eps", "p"}, g.h);
        return rep.max_l2_rel();
    };
    const double e32 = err_at(32), e64 = err_at(64), e128 = err_at(128);
    const double order1 = std::log2(e32 / e64);
    const double order2 = std::log2(e64 / e128);
    CHECK(order1 == doctest::Approx(2.0).epsilon(0.15));
    CHECK(order2 == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("spectral classical error is time-step dominated") {
    ExactHyperbolicSolution exact(0.35, 0.71);
    IsotropicMedium medium = IsotropicMedium::constants(1.41, 0.71, 0.35);
    Grid1D g = make_uniform_grid(0.0, 1.0, 32);
    auto err_at = [&](double dt) {
        DisplacementSystem sys = assemble_displacement(
            g, medium, SpatialScheme::spectral, 1, {},
            {[&](double x, double, double) { return exact.xi(x, 0.0); },
             [&](double x, double, double) { return exact.eps(x, 0.0); },
             [&](double x, double, double) { return exact.p(x, 0.0); }});
        LinearODESystem ode = to_linear_system(sys);
        EvolutionConfig cfg{TimeScheme::crank_nicolson, dt, 1.0};
        DenseVec w = hat_inverse(g, 1, 3, classical_solve(ode, cfg));
        return error_norms(w, exact.sample(g, 1.0), {"xi", "eps", "p"}, g.h).max_l2_rel();
    };
    const double ratio = err_at(1.0 / 100.0) / err_at(1.0 / 200.0);
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("error norms") {
    DenseVec u = DenseVec::Zero(6), ref = DenseVec::Zero(6);
    for (int i = 0; i < 6; ++i) ref[i] = cxd(i + 1, 0);
    SUBCASE("identical fields give zeros") {
        ErrorReport rep = error_norms(ref, ref, {"a", "b"}, 0.5);
        CHECK(rep.component("a").l2_abs == 0.0);
        CHECK(rep.component("b").linf_abs == 0.0);
    }
    SUBCASE("single-entry perturbation fixes the max norm") {
        u = ref;
        u[4] += cxd(0.25, 0.0);
        ErrorReport rep = error_norms(u, ref, {"a", "b"}, 0.5);
        CHECK(rep.component("b").linf_abs == doctest::Approx(0.25));
        CHECK(rep.component("a").linf_abs == 0.0);
    }
    SUBCASE("hand-computed weighted norm") {
        u = ref;
        u[0] += cxd(3.0, 0.0);
        u[1] -= cxd(4.0, 0.0);
        ErrorReport rep = error_norms(u, ref, {"a", "b"}, 0.25);
        CHECK(rep.component("a").l2_abs == doctest::Approx(0.5 * 5.0));  // sqrt(0.25*(9+16))
        const double ref_norm = 0.5 * std::sqrt(1.0 + 4.0 + 9.0);
        CHECK(rep.component("a").l2_rel == doctest::Approx(2.5 / ref_norm));
    }
    SUBCASE("zero reference marks relative errors undefined") {
        DenseVec z = DenseVec::Zero(2), w = DenseVec::Ones(2);
        ErrorReport rep = error_norms(w, z, {"a"}, 1.0);
        CHECK_FALSE(rep.components[0].rel_defined);
    }
    SUBCASE("layout mismatch throws") {
        CHECK_THROWS_AS(error_norms(DenseVec::Zero(4), DenseVec::Zero(6), {"a"}, 1.0),
                        std::invalid_argument);
    }
}
