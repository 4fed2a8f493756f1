#include "schrowave/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace schrowave {

bool is_power_of_two(int n) { return n >= 1 && (n & (n - 1)) == 0; }

std::vector<double> Grid1D::nodes() const {
    std::vector<double> xs(M);
    for (int j = 0; j < M; ++j) xs[j] = node(j);
    return xs;
}

Grid1D make_uniform_grid(double a, double b, int M) {
    if (!(b > a)) throw std::invalid_argument("make_uniform_grid: b must exceed a");
    if (M < 2 || !is_power_of_two(M))
        throw std::invalid_argument("make_uniform_grid: M must be a power of two >= 2, got " +
                                    std::to_string(M));
    Grid1D g;
    g.a = a;
    g.b = b;
    g.M = M;
    g.h = (b - a) / M;
    return g;
}

RealVec fourier_frequencies(const Grid1D& grid) {
    RealVec mu(grid.M);
    const double scale = 2.0 * M_PI / grid.length();
    for (int j = 0; j < grid.M; ++j) mu[j] = scale * (j - grid.M / 2);
    return mu;
}

std::vector<double> PGrid::nodes() const {
    std::vector<double> ps(N);
    for (int j = 0; j < N; ++j) ps[j] = node(j);
    return ps;
}

RealVec PGrid::frequencies() const {
    RealVec mu(N);
    const double scale = 2.0 * M_PI / window();
    for (int j = 0; j < N; ++j) mu[j] = scale * (j - N / 2);
    return mu;
}

int PGrid::first_node_at_or_above(double value) const {
    const int j = static_cast<int>(std::ceil((value - lo) / dp - 1e-12));
    if (j < 0) return 0;
    if (j >= N)
        throw std::out_of_range("PGrid: no node at or above " + std::to_string(value) +
                                " inside [" + std::to_string(lo) + ", " + std::to_string(hi) + ")");
    return j;
}

int PGrid::nearest_node(double value) const {
    const int j = static_cast<int>(std::llround((value - lo) / dp));
    return std::min(std::max(j, 0), N - 1);
}

PGrid make_pgrid(double L, int N) {
    if (L <= 0.0) throw std::invalid_argument("make_pgrid: L must be positive");
    return make_pgrid_window(-M_PI * L, M_PI * L, N);
}

PGrid make_pgrid_window(double lo, double hi, int N) {
    if (!(hi > lo)) throw std::invalid_argument("make_pgrid_window: hi must exceed lo");
    if (N < 2 || !is_power_of_two(N))
        throw std::invalid_argument("make_pgrid_window: N must be a power of two >= 2");
    PGrid p;
    p.lo = lo;
    p.hi = hi;
    p.N = N;
    p.dp = (hi - lo) / N;
    return p;
}

}  // namespace schrowave
