#pragma once

#include <complex>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace schrowave {

using cxd = std::complex<double>;
using SpMat = Eigen::SparseMatrix<cxd>;
using Triplet = Eigen::Triplet<cxd>;
using DenseMat = Eigen::MatrixXcd;
using DenseVec = Eigen::VectorXcd;
using RealVec = Eigen::VectorXd;
using RealMat = Eigen::MatrixXd;

inline constexpr cxd imag_unit{0.0, 1.0};

}  // namespace schrowave
