#include "schrowave/resources.hpp"

#include <cmath>
#include <stdexcept>

#include "schrowave/formulations.hpp"

namespace schrowave {

Formulation formulation_from_string(const std::string& s) {
    if (s == "smf") return Formulation::smf_spectral;
    if (s == "staggered-vs") return Formulation::staggered_vs;
    if (s == "displacement-spectral") return Formulation::displacement_spectral;
    if (s == "displacement-central") return Formulation::displacement_central;
    throw std::invalid_argument("unknown formulation tag: " + s);
}

std::string formulation_to_string(Formulation f) {
    switch (f) {
        case Formulation::smf_spectral: return "smf";
        case Formulation::staggered_vs: return "staggered-vs";
        case Formulation::displacement_spectral: return "displacement-spectral";
        case Formulation::displacement_central: return "displacement-central";
    }
    return "?";
}

namespace {

int qubits_for(Eigen::Index dim) { return static_cast<int>(std::ceil(std::log2(static_cast<double>(dim)))); }

ResourceEstimate counts(int s, double hmax, Eigen::Index dim, double T, double delta, int m_e) {
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("measure: delta must be in (0,1)");
    ResourceEstimate est;
    est.s = s;
    est.hmax = hmax;
    est.tau = s * hmax * T;
    est.m_H = qubits_for(dim);
    est.m_e = m_e;
    est.delta = delta;
    const double log_term = std::log(1.0 / delta) / std::log(std::log(1.0 / delta));
    est.n_query = static_cast<long long>(std::ceil(est.tau + log_term));
    const double polylog = (m_e > 1) ? std::pow(std::log2(static_cast<double>(m_e)), 2.0) : 1.0;
    est.n_gate = static_cast<long long>(std::ceil((est.m_H + m_e * polylog) * est.n_query));
    return est;
}

}  // namespace

ResourceEstimate measure(const Operator& H, double T, double delta, int m_e) {
    if (!H.is_hermitian(1e-10)) throw std::invalid_argument("measure: H must be Hermitian");
    return counts(H.sparsity(), H.max_norm(), H.rows(), T, delta, m_e);
}

ResourceEstimate measure(const SchrodingerizedSystem& sys, double T, double delta, int m_e) {
    return counts(sys.hs_sparsity(), sys.hs_max_norm(),
                  sys.n_aug * static_cast<Eigen::Index>(sys.pgrid.N), T, delta, m_e);
}

void ComplexityScenario::validate() const {
    if (d < 1 || d > 3) throw std::invalid_argument("scenario: d must be 1..3");
    if (r < 2.0) throw std::invalid_argument("scenario: r must be >= 2");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("scenario: epsilon in (0,1)");
    if (T <= 0.0) throw std::invalid_argument("scenario: T must be positive");
}

ResourceEstimate predict(const ComplexityScenario& sc) {
    sc.validate();
    ResourceEstimate est;
    est.delta = sc.epsilon;
    est.m_e = static_cast<int>(std::ceil(std::log2(1.0 / sc.epsilon)));
    const double log_eps = std::log2(1.0 / sc.epsilon);
    const double dd = static_cast<double>(sc.d);
    const double comps_vs = dd * dd + 3.0 * dd;            // homogenized velocity-stress block count
    const double comps_w = (dd * dd + 3.0 * dd) / 2.0 + 1.0;  // displacement block count
    const double inv_eps = 1.0 / sc.epsilon;
    const int k = sc.warp_smoothness;

    switch (sc.formulation) {
        case Formulation::smf_spectral:
            est.n_gate_proxy =
                (std::ceil(std::log2(comps_vs)) + (dd / sc.r) * log_eps) * inv_eps * sc.T;
            if (k > 0)
                est.n_gate_proxy = dd * log_eps *
                                   std::max(std::pow(inv_eps, 1.0 / k), std::pow(inv_eps, 1.0 / sc.r)) *
                                   sc.T;
            est.classical_ops = (comps_vs * dd / (2.0 * sc.r)) *
                                std::pow(inv_eps, dd / sc.r + 1.0) * log_eps * sc.T * sc.T;
            break;
        case Formulation::staggered_vs:
            est.n_gate_proxy = (std::ceil(std::log2(comps_vs)) + (dd / 2.0) * log_eps) *
                               std::pow(inv_eps, 1.5) * sc.T;
            if (k > 0)
                est.n_gate_proxy = dd * log_eps * std::pow(inv_eps, 0.5 + 1.0 / k) * sc.T;
            est.classical_ops = (comps_vs / 2.0) * std::pow(inv_eps, dd / 2.0 + 1.0) * sc.T * sc.T;
            break;
        case Formulation::displacement_spectral:
            est.n_gate_proxy = (std::ceil(std::log2(comps_w)) + (dd / sc.r) * log_eps) *
                               std::pow(inv_eps, 1.0 / sc.r + 1.0) * sc.T;
            if (k > 0)
                est.n_gate_proxy = dd * log_eps * std::pow(inv_eps, 1.0 / sc.r + 1.0 / k) * sc.T;
            est.classical_ops = comps_w * std::pow(inv_eps, dd / sc.r + 1.0) * sc.T * sc.T;
            break;
        case Formulation::displacement_central:
            est.n_gate_proxy = (std::ceil(std::log2(comps_w)) + (dd / 2.0) * log_eps) *
                               std::pow(inv_eps, 1.5) * sc.T;
            est.classical_ops = comps_w * std::pow(inv_eps, dd / 2.0 + 1.0) * sc.T * sc.T;
            break;
    }
    est.n_gate = static_cast<long long>(std::ceil(est.n_gate_proxy));
    return est;
}

int predicted_qubits(Formulation f, int d, int M, int N) {
    double comps = 0.0;
    const double dd = static_cast<double>(d);
    switch (f) {
        case Formulation::smf_spectral: comps = dd * dd + 3.0 * dd; break;  // with source block
        case Formulation::staggered_vs: comps = (dd * dd + 3.0 * dd) / 2.0; break;
        case Formulation::displacement_spectral:
        case Formulation::displacement_central: comps = (dd * dd + 3.0 * dd) / 2.0 + 1.0; break;
    }
    double dim = comps * std::pow(static_cast<double>(M), d) * N;
    return static_cast<int>(std::ceil(std::log2(dim)));
}

PstarScalingTable pstar_scaling(SpatialScheme scheme, const std::vector<int>& Ms,
                                const IsotropicMedium& medium, const Grid1D& domain) {
    if (Ms.size() < 3) throw std::invalid_argument("pstar_scaling: need at least 3 grid sizes");
    PstarScalingTable table;
    for (int M : Ms) {
        Grid1D g = make_uniform_grid(domain.a, domain.b, M);
        DisplacementSystem sys = assemble_displacement(g, medium, scheme, 1);
        LinearODESystem ode = to_linear_system(sys);
        HermitianPair pair = hermitian_split(ode.A);
        table.rows.push_back({M, largest_eigenvalue(pair.H1)});
    }
    // least-squares line lambda_max = slope*M + intercept
    const double n = static_cast<double>(table.rows.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (const auto& r : table.rows) {
        sx += r.M;
        sy += r.lambda_max;
        sxx += static_cast<double>(r.M) * r.M;
        sxy += r.M * r.lambda_max;
        syy += r.lambda_max * r.lambda_max;
    }
    const double denom = n * sxx - sx * sx;
    table.slope = (n * sxy - sx * sy) / denom;
    table.intercept = (sy - table.slope * sx) / n;
    double ss_res = 0.0, ss_tot = 0.0;
    const double ybar = sy / n;
    for (const auto& r : table.rows) {
        const double fit = table.slope * r.M + table.intercept;
        ss_res += (r.lambda_max - fit) * (r.lambda_max - fit);
        ss_tot += (r.lambda_max - ybar) * (r.lambda_max - ybar);
    }
    table.r_squared = (ss_tot > 0.0) ? 1.0 - ss_res / ss_tot : 1.0;
    return table;
}

}  // namespace schrowave
