// Scratch benchmark for the 2-D staggered Schur kernel; not part of the test suite.
#include <chrono>
#include <cmath>
#include <cstdio>

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include "schrowave/formulations.hpp"
#include "schrowave/schrodingerize.hpp"

using namespace schrowave;
using clock_type = std::chrono::steady_clock;

static double ms_since(clock_type::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

int main() {
    Grid1D grid = make_uniform_grid(0.0, 10.0, 32);
    IsotropicMedium medium = medium_preset_sincos();
    auto t0 = clock_type::now();
    StaggeredVSSystem sys = assemble_staggered_vs(
        grid, medium, 2,
        {[](double x, double y, double) { return std::exp(-((x - 5) * (x - 5) + (y - 5) * (y - 5))); }});
    std::printf("assemble: %.1f ms, dim=%ld nnz=%ld s=%d\n", ms_since(t0), (long)sys.AH.rows(),
                (long)sys.AH.nonzeros(), sys.AH.sparsity());

    t0 = clock_type::now();
    HermitianPair pair = hermitian_split(sys.AH);
    std::printf("split: %.1f ms\n", ms_since(t0));

    t0 = clock_type::now();
    double lmax = largest_eigenvalue(pair.H1);
    std::printf("lambda_max(H1) = %.6f  (%.1f ms)\n", lmax, ms_since(t0));

    const double dt = 1.0 / 200.0;
    const Eigen::Index nv = sys.nv;
    const SpMat& h1 = pair.H1.sparse();
    const SpMat& h2 = pair.H2.sparse();

    // representative p-frequencies for the window [-3pi, 3pi), N = 1024
    double mus[] = {-170.67, -85.0, -10.0, 0.0, 42.0, 170.0};
    for (double mu : mus) {
        SpMat block = SpMat(mu * h1) - h2;
        t0 = clock_type::now();
        SpMat K = block.block(0, nv, nv, block.cols() - nv);
        SpMat Kd = K.adjoint();
        SpMat schur = SpMat((dt * dt) * (K * Kd));
        SpMat id(nv, nv);
        id.setIdentity();
        schur = id + schur;
        double t_build = ms_since(t0);

        t0 = clock_type::now();
        Eigen::SimplicialLDLT<SpMat, Eigen::Lower> chol;
        chol.compute(schur);
        double t_factor = ms_since(t0);
        if (chol.info() != Eigen::Success) {
            std::printf("mu=%8.2f factorization FAILED\n", mu);
            continue;
        }

        DenseVec x = DenseVec::Random(nv);
        t0 = clock_type::now();
        const int reps = 50;
        for (int r = 0; r < reps; ++r) {
            DenseVec bs = DenseVec::Random(block.cols() - nv);
            DenseVec rv = x - imag_unit * dt * (K * bs);
            x = chol.solve(rv);
            bs = bs - imag_unit * dt * (Kd * x);
        }
        double t_step = ms_since(t0) / reps;
        std::printf("mu=%8.2f build=%6.1fms factor=%6.1fms (fillL=%ld) step=%7.3fms -> est total %.1f s\n",
                    mu, t_build, t_factor, (long)chol.matrixL().nestedExpression().nonZeros(), t_step,
                    (t_build + t_factor + 200.0 * t_step) * 1024.0 / 1000.0);
    }

    // generic sparse LU on the full 5120 block for comparison
    {
        SpMat block = SpMat(42.0 * h1) - h2;
        SpMat id(block.rows(), block.cols());
        id.setIdentity();
        SpMat m = id + SpMat(imag_unit * dt * block);
        t0 = clock_type::now();
        Eigen::SparseLU<SpMat> lu;
        lu.compute(m);
        double t_factor = ms_since(t0);
        DenseVec x = DenseVec::Random(block.rows());
        t0 = clock_type::now();
        const int reps = 50;
        for (int r = 0; r < reps; ++r) x = lu.solve(x);
        double t_step = ms_since(t0) / reps;
        std::printf("full LU: factor=%6.1fms step=%7.3fms -> est total %.1f s\n", t_factor, t_step,
                    (t_factor + 200.0 * t_step) * 1024.0 / 1000.0);
    }
    return 0;
}
