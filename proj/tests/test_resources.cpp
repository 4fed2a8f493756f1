#include <doctest.h>

#include <cmath>

#include "schrowave/resources.hpp"

using namespace schrowave;

TEST_CASE("measured estimates follow the cost model") {
    DenseVec d(4);
    d << 1.0, -0.5, 0.25, 0.0;
    Operator H = Operator::diagonal(d);

    SUBCASE("sparsity and max-norm are the brute-force values") {
        ResourceEstimate est = measure(H, 2.0, 0.1, 4);
        CHECK(est.s == 1);
        CHECK(est.hmax == doctest::Approx(1.0));
        CHECK(est.tau == doctest::Approx(2.0));
        CHECK(est.m_H == 2);
    }

    SUBCASE("query count adds the log correction") {
        // s*hmax*T = 2, delta = e^{-e}: ln(1/delta)/lnln(1/delta) = e
        ResourceEstimate est = measure(H, 2.0, std::exp(-std::exp(1.0)), 4);
        CHECK(est.n_query == static_cast<long long>(std::ceil(2.0 + std::exp(1.0))));
        CHECK(est.n_gate == (est.m_H + 4 * 4) * est.n_query);
    }

    SUBCASE("invalid failure probability") {
        CHECK_THROWS_AS(measure(H, 1.0, 0.0, 4), std::invalid_argument);
        CHECK_THROWS_AS(measure(H, 1.0, 1.5, 4), std::invalid_argument);
    }

    SUBCASE("non-Hermitian operators are rejected") {
        DenseMat a(2, 2);
        a << cxd(0, 0), cxd(1, 0), cxd(0, 0), cxd(0, 0);
        CHECK_THROWS_AS(measure(Operator::from_dense(a), 1.0, 0.1, 4), std::invalid_argument);
    }
}

TEST_CASE("predicted gate proxies") {
    ComplexityScenario sc;
    sc.formulation = Formulation::smf_spectral;
    sc.d = 3;
    sc.r = 2.0;
    sc.epsilon = 1e-2;
    sc.T = 1.0;

    SUBCASE("hand-computed spectral proxy") {
        ResourceEstimate est = predict(sc);
        const double hand = (std::ceil(std::log2(18.0)) + 1.5 * std::log2(100.0)) * 100.0;
        CHECK(est.n_gate_proxy == hand);
        CHECK(est.classical_ops > 0.0);
    }

    SUBCASE("monotone in T, 1/epsilon, and d") {
        ResourceEstimate base = predict(sc);
        ComplexityScenario larger = sc;
        larger.T = 2.0;
        CHECK(predict(larger).n_gate_proxy > base.n_gate_proxy);
        larger = sc;
        larger.epsilon = 1e-3;
        CHECK(predict(larger).n_gate_proxy > base.n_gate_proxy);
        ComplexityScenario smaller = sc;
        smaller.d = 2;
        CHECK(predict(smaller).n_gate_proxy < base.n_gate_proxy);
    }

    SUBCASE("classical cost grows exponentially with dimension") {
        ComplexityScenario d1 = sc, d3 = sc;
        d1.d = 1;
        const double ratio1 = predict(d1).classical_ops / predict(d1).n_gate_proxy;
        const double ratio3 = predict(d3).classical_ops / predict(d3).n_gate_proxy;
        CHECK(ratio3 > 10.0 * ratio1);
    }

    SUBCASE("staggered pays the epsilon^{-1/2} factor over the spectral form") {
        ComplexityScenario st = sc;
        st.formulation = Formulation::staggered_vs;
        const double ratio = predict(st).n_gate_proxy / predict(sc).n_gate_proxy;
        CHECK(ratio > 3.0);
        CHECK(ratio < 30.0);
    }

    SUBCASE("smooth warp lowers the spectral exponent") {
        ComplexityScenario sm = sc;
        sm.warp_smoothness = 4;
        CHECK(predict(sm).n_gate_proxy < predict(sc).n_gate_proxy);
    }

    SUBCASE("invalid scenarios") {
        ComplexityScenario bad = sc;
        bad.epsilon = 2.0;
        CHECK_THROWS_AS(predict(bad), std::invalid_argument);
        bad = sc;
        bad.r = 1.0;
        CHECK_THROWS_AS(predict(bad), std::invalid_argument);
    }
}

TEST_CASE("p* scaling across grid sizes") {
    IsotropicMedium row2 = IsotropicMedium::constants(1.41, 0.61, 0.40);
    Grid1D domain = make_uniform_grid(0.0, 1.0, 16);

    PstarScalingTable spec =
        pstar_scaling(SpatialScheme::spectral, {16, 32, 64}, row2, domain);
    REQUIRE(spec.rows.size() == 3);
    CHECK(spec.rows[1].lambda_max / spec.rows[0].lambda_max == doctest::Approx(2.0).epsilon(0.025));
    CHECK(spec.rows[2].lambda_max / spec.rows[1].lambda_max == doctest::Approx(2.0).epsilon(0.025));
    CHECK(spec.r_squared >= 0.999);

    PstarScalingTable cent =
        pstar_scaling(SpatialScheme::central, {16, 32, 64}, row2, domain);
    CHECK(cent.r_squared >= 0.999);

    SUBCASE("paper regression targets") {
        CHECK(spec.rows[1].lambda_max == doctest::Approx(6.759).epsilon(0.01 / 6.759));
        PstarScalingTable c64 =
            pstar_scaling(SpatialScheme::central, {16, 32, 64}, row2, domain);
        CHECK(c64.rows[2].lambda_max == doctest::Approx(4.303).epsilon(0.01 / 4.303));
    }

    SUBCASE("spectral slope is pi times the central slope") {
        CHECK(spec.slope / cent.slope == doctest::Approx(M_PI).epsilon(0.02));
    }

    CHECK_THROWS_AS(pstar_scaling(SpatialScheme::spectral, {16, 32}, row2, domain),
                    std::invalid_argument);
}

TEST_CASE("predicted qubit counts") {
    CHECK(predicted_qubits(Formulation::smf_spectral, 1, 64, 1024) == 18);
    CHECK(predicted_qubits(Formulation::displacement_spectral, 1, 32, 512) == 16);
    CHECK(predicted_qubits(Formulation::staggered_vs, 2, 32, 1024) == 23);
}
