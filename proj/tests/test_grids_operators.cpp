#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "schrowave/discrete_operators.hpp"
#include "schrowave/grid.hpp"

using namespace schrowave;

namespace {

double max_abs(const DenseMat& m) { return m.cwiseAbs().maxCoeff(); }

int brute_force_row_max(const Operator& op) {
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

TEST_CASE("uniform grid construction") {
    Grid1D g = make_uniform_grid(0.0, 1.0, 4);
    CHECK(g.h == doctest::Approx(0.25));
    auto xs = g.nodes();
    REQUIRE(xs.size() == 4);
    CHECK(xs[0] == doctest::Approx(0.0));
    CHECK(xs[1] == doctest::Approx(0.25));
    CHECK(xs[2] == doctest::Approx(0.5));
    CHECK(xs[3] == doctest::Approx(0.75));

    Grid1D g2 = make_uniform_grid(0.0, 10.0, 64);
    CHECK(g2.h == doctest::Approx(10.0 / 64.0));
    CHECK(g2.node(5) == doctest::Approx(0.78125));

    CHECK_THROWS_AS(make_uniform_grid(0.0, 1.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(make_uniform_grid(1.0, 1.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_uniform_grid(2.0, 1.0, 4), std::invalid_argument);
}

TEST_CASE("fourier frequencies use the adjusted index") {
    Grid1D g = make_uniform_grid(0.0, 1.0, 4);
    RealVec mu = fourier_frequencies(g);
    CHECK(mu[0] == doctest::Approx(-4.0 * M_PI));
    CHECK(mu[1] == doctest::Approx(-2.0 * M_PI));
    CHECK(mu[2] == doctest::Approx(0.0));
    CHECK(mu[3] == doctest::Approx(2.0 * M_PI));

    Grid1D g2 = make_uniform_grid(0.0, 2.0 * M_PI, 2);
    RealVec mu2 = fourier_frequencies(g2);
    CHECK(mu2[0] == doctest::Approx(-1.0));
    CHECK(mu2[1] == doctest::Approx(0.0));

    for (int M : {2, 8, 32}) {
        RealVec f = fourier_frequencies(make_uniform_grid(-1.0, 3.0, M));
        int zeros = 0, zero_at = -1;
        for (int j = 0; j < M; ++j)
            if (f[j] == 0.0) {
                ++zeros;
                zero_at = j;
            }
        CHECK(zeros == 1);
        CHECK(zero_at == M / 2);
    }
}

TEST_CASE("spectral operators factorize the derivative") {
    for (int M : {2, 4, 8, 16, 32, 64}) {
        Grid1D g = make_uniform_grid(0.0, 1.0, M);
        auto ops = spectral_operators(g);
        CHECK(max_abs(ops.Phi * ops.PhiInv - DenseMat::Identity(M, M)) <= 1e-12);
        DenseMat rebuilt = ops.Phi * ops.Dmu.cast<cxd>().asDiagonal() * ops.PhiInv;
        CHECK(max_abs(rebuilt - ops.Pmu) <= 1e-12 * std::max(1.0, ops.Dmu.cwiseAbs().maxCoeff()));
    }

    SUBCASE("M=2 on [0,2pi]") {
        auto ops = spectral_operators(make_uniform_grid(0.0, 2.0 * M_PI, 2));
        CHECK(ops.Dmu[0] == doctest::Approx(-1.0));
        CHECK(ops.Dmu[1] == doctest::Approx(0.0));
    }

    SUBCASE("i*Pmu is the exact spectral derivative of a resolved mode") {
        Grid1D g = make_uniform_grid(0.0, 1.0, 32);
        auto ops = spectral_operators(g);
        DenseVec f(32), df(32);
        for (int j = 0; j < 32; ++j) {
            f[j] = std::sin(2.0 * M_PI * g.node(j));
            df[j] = 2.0 * M_PI * std::cos(2.0 * M_PI * g.node(j));
        }
        DenseVec got = imag_unit * (ops.Pmu * f);
        CHECK((got - df).cwiseAbs().maxCoeff() <= 1e-10);
    }

    SUBCASE("constants are annihilated") {
        auto ops = spectral_operators(make_uniform_grid(0.0, 3.0, 16));
        DenseVec ones = DenseVec::Constant(16, cxd(1.0, 0.0));
        CHECK((ops.Pmu * ones).cwiseAbs().maxCoeff() <= 1e-12 * 16 * M_PI);
    }
}

TEST_CASE("central difference matrix") {
    Grid1D g = make_uniform_grid(0.0, 1.0, 4);
    Operator D = central_difference_matrix(g);
    DenseMat d = D.dense();
    CHECK(d(0, 1).real() == doctest::Approx(2.0));
    CHECK(d(1, 0).real() == doctest::Approx(-2.0));
    CHECK(d(0, 3).real() == doctest::Approx(-2.0));
    CHECK(d(3, 0).real() == doctest::Approx(2.0));
    CHECK(D.sparsity() == 2);

    SUBCASE("exact antisymmetry and Hermitian i*D") {
        CHECK(max_abs(d + d.transpose()) == 0.0);
        Operator iD = imag_unit * D;
        CHECK(iD.is_hermitian(1e-14));
    }

    SUBCASE("second-order accuracy on sin") {
        auto err = [](int M) {
            Grid1D gg = make_uniform_grid(0.0, 1.0, M);
            DenseMat dd = central_difference_matrix(gg).dense();
            DenseVec f(M), df(M);
            for (int j = 0; j < M; ++j) {
                f[j] = std::sin(2.0 * M_PI * gg.node(j));
                df[j] = 2.0 * M_PI * std::cos(2.0 * M_PI * gg.node(j));
            }
            return ((dd * f) - df).cwiseAbs().maxCoeff();
        };
        const double e32 = err(32), e64 = err(64);
        CHECK(e64 <= 0.05);
        CHECK(e32 / e64 == doctest::Approx(4.0).epsilon(0.05));
    }

    SUBCASE("M=2 wrap cancels the stencil") {
        Operator D2 = central_difference_matrix(make_uniform_grid(0.0, 1.0, 2));
        CHECK(D2.nonzeros() == 0);
    }
}

TEST_CASE("staggered forward difference") {
    Grid1D g = make_uniform_grid(0.0, 1.0, 2);
    DenseMat s = staggered_forward_difference(g).dense();
    CHECK(s(0, 0).real() == doctest::Approx(-2.0));
    CHECK(s(0, 1).real() == doctest::Approx(2.0));
    CHECK(s(1, 0).real() == doctest::Approx(2.0));
    CHECK(s(1, 1).real() == doctest::Approx(-2.0));

    SUBCASE("row sums vanish") {
        DenseMat s16 = staggered_forward_difference(make_uniform_grid(0.0, 2.0, 16)).dense();
        CHECK((s16 * DenseVec::Constant(16, cxd(1.0, 0.0))).cwiseAbs().maxCoeff() <= 1e-12 * 16);
    }

    SUBCASE("second order at midpoints") {
        auto err = [](int M) {
            Grid1D gg = make_uniform_grid(0.0, 1.0, M);
            DenseMat ss = staggered_forward_difference(gg).dense();
            DenseVec f(M), dmid(M);
            for (int j = 0; j < M; ++j) {
                f[j] = std::sin(2.0 * M_PI * gg.node(j));
                dmid[j] = 2.0 * M_PI * std::cos(2.0 * M_PI * (gg.node(j) + gg.h / 2.0));
            }
            return ((ss * f) - dmid).cwiseAbs().maxCoeff();
        };
        CHECK(err(32) / err(64) == doctest::Approx(4.0).epsilon(0.05));
    }
}

TEST_CASE("staggered divergence block matrix") {
    Grid1D g = make_uniform_grid(0.0, 1.0, 2);
    Operator Lv = staggered_divergence(3, g);
    CHECK(Lv.rows() == 24);
    CHECK(Lv.cols() == 48);
    CHECK(Lv.sparsity() == 6);
    CHECK(brute_force_row_max(Lv) == 6);

    SUBCASE("leading block is S lifted on the first axis") {
        Operator S1 = lift_axis(staggered_forward_difference(g), 1, 3);
        DenseMat block = Lv.dense().topLeftCorner(8, 8);
        CHECK(max_abs(block - S1.dense()) == 0.0);
    }

    SUBCASE("constant stresses map to zero") {
        DenseVec c = DenseVec::Constant(48, cxd(1.0, 0.0));
        CHECK((Lv.dense() * c).cwiseAbs().maxCoeff() <= 1e-12 * 48);
    }

    SUBCASE("2-D reduction") {
        Operator Lv2 = staggered_divergence(2, make_uniform_grid(0.0, 1.0, 4));
        CHECK(Lv2.rows() == 32);
        CHECK(Lv2.cols() == 48);
        DenseVec c = DenseVec::Constant(48, cxd(1.0, 0.0));
        CHECK((Lv2.dense() * c).cwiseAbs().maxCoeff() <= 1e-10);
    }

    CHECK_THROWS_AS(staggered_divergence(1, g), std::invalid_argument);
}

TEST_CASE("kronecker lifting") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    DenseMat B(2, 2), C(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            B(i, j) = cxd(u(rng), u(rng));
            C(i, j) = cxd(u(rng), u(rng));
        }
    Operator Bop = Operator::from_dense(B), Cop = Operator::from_dense(C);

    CHECK(max_abs(lift_axis(Bop, 1, 1).dense() - B) == 0.0);

    SUBCASE("axis 2 of 2 is I (x) B") {
        DenseMat lifted = lift_axis(Bop, 2, 2).dense();
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) CHECK(lifted(2 * i + j, 2 * i + k) == B(j, k));
        CHECK(lifted(0, 2) == cxd(0.0, 0.0));
    }

    SUBCASE("lifted diagonal keeps sparsity 1") {
        RealVec mu = fourier_frequencies(make_uniform_grid(0.0, 2.0 * M_PI, 2));
        Operator lifted = lift_axis(Operator::diagonal(mu), 1, 2);
        CHECK(lifted.rows() == 4);
        CHECK(lifted.sparsity() == 1);
    }

    SUBCASE("lifts on distinct axes commute") {
        DenseMat lhs = (lift_axis(Bop, 1, 2) * lift_axis(Cop, 2, 2)).dense();
        DenseMat rhs = (lift_axis(Cop, 2, 2) * lift_axis(Bop, 1, 2)).dense();
        CHECK(max_abs(lhs - rhs) <= 1e-14);
    }

    CHECK_THROWS_AS(lift_axis(Bop, 3, 2), std::invalid_argument);
}

TEST_CASE("operator metadata and triplet round trip") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Triplet> ts;
    for (int k = 0; k < 40; ++k)
        ts.emplace_back(rng() % 12, rng() % 12, cxd(u(rng), u(rng)));
    ts.emplace_back(3, 7, cxd(0.0, 0.0));  // explicit zero must be pruned
    SpMat m(12, 12);
    m.setFromTriplets(ts.begin(), ts.end());
    Operator op(std::move(m));

    CHECK(op.sparsity() == brute_force_row_max(op));
    CHECK(op.max_norm() == doctest::Approx(op.dense().cwiseAbs().maxCoeff()));

    std::stringstream ss;
    op.write_triplets(ss);
    std::string header;
    std::getline(ss, header);
    CHECK(header.rfind("dim 12 12 ", 0) == 0);
    ss.seekg(0);
    Operator back = Operator::read_triplets(ss);
    CHECK(max_abs(back.dense() - op.dense()) == 0.0);
    CHECK(back.sparsity() == op.sparsity());
}
