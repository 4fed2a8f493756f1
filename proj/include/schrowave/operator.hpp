#pragma once

#include <iosfwd>
#include <string>

#include "schrowave/types.hpp"

namespace schrowave {

/// Sparse complex matrix plus the metadata the cost model consumes: sparsity
/// (max structural nonzeros per row, exact zeros pruned) and max-norm
/// (largest entry magnitude). Immutable after construction.
class Operator {
  public:
    Operator() = default;
    explicit Operator(SpMat mat);
    static Operator from_dense(const DenseMat& m);
    static Operator identity(Eigen::Index n);
    static Operator diagonal(const DenseVec& d);
    static Operator diagonal(const RealVec& d);
    static Operator zero(Eigen::Index rows, Eigen::Index cols);

    Eigen::Index rows() const { return mat_.rows(); }
    Eigen::Index cols() const { return mat_.cols(); }
    const SpMat& sparse() const { return mat_; }
    DenseMat dense() const { return DenseMat(mat_); }

    int sparsity() const { return sparsity_; }
    double max_norm() const { return max_norm_; }
    Eigen::Index nonzeros() const { return mat_.nonZeros(); }

    bool is_hermitian(double tol = 1e-12) const;
    Operator adjoint() const;
    Operator transpose() const;

    DenseVec apply(const DenseVec& v) const { return mat_ * v; }

    Operator operator+(const Operator& o) const { return Operator(SpMat(mat_ + o.mat_)); }
    Operator operator-(const Operator& o) const { return Operator(SpMat(mat_ - o.mat_)); }
    Operator operator*(const Operator& o) const { return Operator(SpMat(mat_ * o.mat_)); }
    friend Operator operator*(cxd s, const Operator& o) { return Operator(SpMat(s * o.mat_)); }
    friend Operator operator*(double s, const Operator& o) { return Operator(SpMat(s * o.mat_)); }

    /// Coordinate-triplet text: header "dim rows cols nnz", then "row col real imag" per entry,
    /// 0-based, row-major order.
    void write_triplets(std::ostream& os) const;
    static Operator read_triplets(std::istream& is);

  private:
    SpMat mat_;
    int sparsity_ = 0;
    double max_norm_ = 0.0;
    void compute_metadata();
};

Operator kron(const Operator& a, const Operator& b);

/// I^{(axis-1 factors)} (x) base (x) I^{(d-axis factors)}; axis is 1-based and indexes
/// the slowest-varying Kronecker slot first.
Operator lift_axis(const Operator& base, int axis, int d);

}  // namespace schrowave
