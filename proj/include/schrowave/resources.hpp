#pragma once

#include <string>
#include <vector>

#include "schrowave/medium.hpp"
#include "schrowave/operator.hpp"
#include "schrowave/schrodingerize.hpp"

namespace schrowave {

enum class Formulation { smf_spectral, staggered_vs, displacement_spectral, displacement_central };

Formulation formulation_from_string(const std::string& s);
std::string formulation_to_string(Formulation f);

/// Resource figures for simulating a Hamiltonian, with every hidden constant
/// set to 1 and logs base 2 ("proxy, constants-1 convention").
struct ResourceEstimate {
    int s = 0;                  // sparsity
    double hmax = 0.0;          // max-norm
    double tau = 0.0;           // s * hmax * T
    int m_H = 0;                // ceil(log2 dim)
    int m_e = 0;                // precision bits
    double delta = 0.0;         // failure probability
    long long n_query = 0;
    long long n_gate = 0;
    double n_gate_proxy = 0.0;      // theorem gate-count proxy (predictions)
    double classical_ops = 0.0;     // matching classical-cost proxy (predictions)
    std::string label = "proxy, constants-1 convention";
};

/// Query/gate counts from measured operator metadata (Hamiltonian-simulation
/// cost model): n_query = ceil(tau + ln(1/delta)/ln(ln(1/delta))),
/// n_gate = ceil((m_H + m_e*(log2 m_e)^2) * n_query).
ResourceEstimate measure(const Operator& H, double T, double delta, int m_e);

/// Same, but measuring the extended Hamiltonian H_s = H1 (x) D_p - H2 (x) I
/// without materializing it.
ResourceEstimate measure(const SchrodingerizedSystem& sys, double T, double delta, int m_e);

struct ComplexityScenario {
    Formulation formulation = Formulation::smf_spectral;
    int d = 3;
    double r = 2.0;       // solution smoothness
    double epsilon = 1e-2;
    double T = 1.0;
    int warp_smoothness = 0;  // 0 = exact kink; k > 0 selects the smooth-warp variant

    void validate() const;
};

/// Gate-count and classical-cost proxies from the per-formulation complexity
/// formulas; all constants 1, logs base 2. m_e defaults to ceil(log2(1/epsilon)).
ResourceEstimate predict(const ComplexityScenario& scenario);

/// Predicted qubit count for a concrete grid configuration (components * M^d * N).
int predicted_qubits(Formulation f, int d, int M, int N);

struct PstarScalingRow {
    int M = 0;
    double lambda_max = 0.0;
};

struct PstarScalingTable {
    std::vector<PstarScalingRow> rows;
    double slope = 0.0;       // least-squares fit of lambda_max vs M
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// lambda_max(H1) of the force-free 1-D displacement system across grid sizes,
/// with a linear fit in M. Requires at least 3 grid sizes.
PstarScalingTable pstar_scaling(SpatialScheme scheme, const std::vector<int>& Ms,
                                const IsotropicMedium& medium, const Grid1D& domain);

}  // namespace schrowave
