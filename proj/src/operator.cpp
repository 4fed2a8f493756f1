#include "schrowave/operator.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

namespace schrowave {

Operator::Operator(SpMat mat) : mat_(std::move(mat)) {
    mat_.prune([](const Eigen::Index&, const Eigen::Index&, const cxd& v) { return v != cxd(0.0, 0.0); });
    mat_.makeCompressed();
    compute_metadata();
}

void Operator::compute_metadata() {
    std::vector<int> row_counts(mat_.rows(), 0);
    double mx = 0.0;
    for (int k = 0; k < mat_.outerSize(); ++k) {
        for (SpMat::InnerIterator it(mat_, k); it; ++it) {
            ++row_counts[it.row()];
            mx = std::max(mx, std::abs(it.value()));
        }
    }
    sparsity_ = 0;
    for (int c : row_counts) sparsity_ = std::max(sparsity_, c);
    max_norm_ = mx;
}

Operator Operator::from_dense(const DenseMat& m) { return Operator(m.sparseView()); }

Operator Operator::identity(Eigen::Index n) {
    SpMat id(n, n);
    id.setIdentity();
    return Operator(std::move(id));
}

Operator Operator::diagonal(const DenseVec& d) {
    SpMat m(d.size(), d.size());
    std::vector<Triplet> ts;
    ts.reserve(d.size());
    for (Eigen::Index i = 0; i < d.size(); ++i)
        if (d[i] != cxd(0.0, 0.0)) ts.emplace_back(i, i, d[i]);
    m.setFromTriplets(ts.begin(), ts.end());
    return Operator(std::move(m));
}

Operator Operator::diagonal(const RealVec& d) { return diagonal(DenseVec(d.cast<cxd>())); }

Operator Operator::zero(Eigen::Index rows, Eigen::Index cols) { return Operator(SpMat(rows, cols)); }

bool Operator::is_hermitian(double tol) const {
    if (rows() != cols()) return false;
    SpMat diff = mat_ - SpMat(mat_.adjoint());
    double mx = 0.0;
    for (int k = 0; k < diff.outerSize(); ++k)
        for (SpMat::InnerIterator it(diff, k); it; ++it) mx = std::max(mx, std::abs(it.value()));
    const double scale = std::max(1.0, max_norm_);
    return mx <= tol * scale;
}

Operator Operator::adjoint() const { return Operator(SpMat(mat_.adjoint())); }
Operator Operator::transpose() const { return Operator(SpMat(mat_.transpose())); }

void Operator::write_triplets(std::ostream& os) const {
    os << "dim " << rows() << " " << cols() << " " << nonzeros() << "\n";
    // row-major order for a stable byte stream
    std::vector<std::vector<std::pair<Eigen::Index, cxd>>> by_row(rows());
    for (int k = 0; k < mat_.outerSize(); ++k)
        for (SpMat::InnerIterator it(mat_, k); it; ++it) by_row[it.row()].emplace_back(it.col(), it.value());
    char buf[96];
    for (Eigen::Index r = 0; r < rows(); ++r) {
        auto& row = by_row[r];
        std::sort(row.begin(), row.end(), [](auto& a, auto& b) { return a.first < b.first; });
        for (auto& [c, v] : row) {
            std::snprintf(buf, sizeof(buf), "%lld %lld %.17g %.17g\n", static_cast<long long>(r),
                          static_cast<long long>(c), v.real(), v.imag());
            os << buf;
        }
    }
}

Operator Operator::read_triplets(std::istream& is) {
    std::string tag;
    Eigen::Index rows = 0, cols = 0, nnz = 0;
    is >> tag >> rows >> cols >> nnz;
    if (tag != "dim" || !is) throw std::runtime_error("Operator::read_triplets: bad header");
    std::vector<Triplet> ts;
    ts.reserve(nnz);
    for (Eigen::Index k = 0; k < nnz; ++k) {
        Eigen::Index r, c;
        double re, im;
        is >> r >> c >> re >> im;
        if (!is) throw std::runtime_error("Operator::read_triplets: truncated entry list");
        ts.emplace_back(r, c, cxd(re, im));
    }
    SpMat m(rows, cols);
    m.setFromTriplets(ts.begin(), ts.end());
    return Operator(std::move(m));
}

Operator kron(const Operator& a, const Operator& b) {
    SpMat out = Eigen::kroneckerProduct(a.sparse(), b.sparse());
    return Operator(std::move(out));
}

Operator lift_axis(const Operator& base, int axis, int d) {
    if (base.rows() != base.cols()) throw std::invalid_argument("lift_axis: base must be square");
    if (axis < 1 || axis > d) throw std::invalid_argument("lift_axis: axis out of range");
    const Eigen::Index m = base.rows();
    Eigen::Index left = 1, right = 1;
    for (int i = 1; i < axis; ++i) left *= m;
    for (int i = axis; i < d; ++i) right *= m;
    Operator out = base;
    if (left > 1) out = kron(Operator::identity(left), out);
    if (right > 1) out = kron(out, Operator::identity(right));
    return out;
}

}  // namespace schrowave
