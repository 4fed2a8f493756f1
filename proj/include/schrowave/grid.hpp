#pragma once

#include <vector>

#include "schrowave/types.hpp"

namespace schrowave {

/// Uniform periodic grid on [a, b) with M = 2^m nodes; x_M is identified with x_0.
struct Grid1D {
    double a = 0.0;
    double b = 1.0;
    int M = 2;
    double h = 0.5;

    double node(int j) const { return a + j * h; }
    std::vector<double> nodes() const;
    double length() const { return b - a; }
};

bool is_power_of_two(int n);

/// Throws std::invalid_argument unless b > a and M = 2^m >= 2.
Grid1D make_uniform_grid(double a, double b, int M);

/// Adjusted-index Fourier frequencies mu_l = 2*pi*(l - M/2 - 1)/(b - a), 1 <= l <= M,
/// returned 0-based; the single zero frequency sits at index M/2.
RealVec fourier_frequencies(const Grid1D& grid);

/// Uniform grid for the auxiliary variable p on [lo, hi); supports asymmetric windows.
struct PGrid {
    double lo = 0.0;
    double hi = 1.0;
    int N = 2;
    double dp = 0.5;

    double node(int j) const { return lo + j * dp; }
    std::vector<double> nodes() const;
    double window() const { return hi - lo; }
    /// Frequencies with the same adjusted-index convention as the spatial grid.
    RealVec frequencies() const;
    /// First node index with p_j >= value; throws if no such node exists.
    int first_node_at_or_above(double value) const;
    /// Index of the node closest to value.
    int nearest_node(double value) const;
};

/// Symmetric window [-pi*L, pi*L).
PGrid make_pgrid(double L, int N);
/// General window [lo, hi).
PGrid make_pgrid_window(double lo, double hi, int N);

}  // namespace schrowave
