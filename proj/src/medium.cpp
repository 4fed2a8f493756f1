#include "schrowave/medium.hpp"

#include <cmath>
#include <istream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace schrowave {

IsotropicMedium IsotropicMedium::constants(double rho, double lambda, double mu) {
    IsotropicMedium m;
    m.rho.constant = rho;
    m.lambda.constant = lambda;
    m.mu.constant = mu;
    m.validate_constants();
    return m;
}

double IsotropicMedium::cp() const {
    if (!is_constant()) throw std::logic_error("cp(): medium is not constant");
    return std::sqrt((lambda.constant + 2.0 * mu.constant) / rho.constant);
}

double IsotropicMedium::cs() const {
    if (!is_constant()) throw std::logic_error("cs(): medium is not constant");
    return std::sqrt(mu.constant / rho.constant);
}

void IsotropicMedium::validate_constants() const {
    if (!is_constant()) return;
    if (rho.constant <= 0.0) throw std::invalid_argument("medium: rho must be positive");
    if (mu.constant <= 0.0) throw std::invalid_argument("medium: mu must be positive");
    if (3.0 * lambda.constant + 2.0 * mu.constant <= 0.0)
        throw std::invalid_argument("medium: 3*lambda + 2*mu must be positive");
}

IsotropicMedium medium_preset_sincos() {
    IsotropicMedium m;
    m.rho.eval = [](double x, double y, double) { return 1.0 + 0.5 * std::sin(x) * std::cos(y); };
    m.lambda.eval = [](double x, double y, double) { return 0.5 + 0.2 * std::sin(x) * std::cos(y); };
    m.mu.eval = [](double x, double y, double) { return 0.5 + 0.15 * std::sin(x) * std::cos(y); };
    return m;
}

IsotropicMedium medium_preset(const std::string& name) {
    if (name == "sincos" || name == "paper-6.2") return medium_preset_sincos();
    throw std::invalid_argument("unknown medium preset: " + name);
}

MediumField medium_field_from_table(std::istream& is) {
    auto table = std::make_shared<std::map<std::pair<long long, long long>, double>>();
    const double scale = 1e9;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        double x, y, v;
        if (!(ls >> x >> y >> v)) throw std::runtime_error("medium table: bad line: " + line);
        (*table)[{std::llround(x * scale), std::llround(y * scale)}] = v;
    }
    if (table->empty()) throw std::runtime_error("medium table: no samples");
    MediumField f;
    f.eval = [table, scale](double x, double y, double) {
        auto it = table->find({std::llround(x * scale), std::llround(y * scale)});
        if (it == table->end())
            throw std::runtime_error("medium table: no sample at (" + std::to_string(x) + ", " +
                                     std::to_string(y) + ")");
        return it->second;
    };
    return f;
}

namespace {

struct Offsets {
    double ox = 0.0, oy = 0.0, oz = 0.0;
};

RealVec sample_field(const MediumField& f, const Grid1D& g, int d, const Offsets& off) {
    Eigen::Index n = 1;
    for (int i = 0; i < d; ++i) n *= g.M;
    RealVec out(n);
    const double h2 = g.h;
    if (d == 2) {
        for (int i = 0; i < g.M; ++i)
            for (int j = 0; j < g.M; ++j)
                out[static_cast<Eigen::Index>(i) * g.M + j] =
                    f(g.a + (i + off.ox) * h2, g.a + (j + off.oy) * h2);
    } else {
        for (int i = 0; i < g.M; ++i)
            for (int j = 0; j < g.M; ++j)
                for (int k = 0; k < g.M; ++k)
                    out[(static_cast<Eigen::Index>(i) * g.M + j) * g.M + k] =
                        f(g.a + (i + off.ox) * h2, g.a + (j + off.oy) * h2, g.a + (k + off.oz) * h2);
    }
    return out;
}

void require_positive(const RealVec& v, const char* what) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (v[i] <= 0.0) throw std::invalid_argument(std::string("sample_medium: non-positive ") + what);
}

}  // namespace

MediumSamples sample_medium(const IsotropicMedium& medium, const Grid1D& grid, int d) {
    if (d != 2 && d != 3) throw std::invalid_argument("sample_medium: d must be 2 or 3");
    MediumSamples s;
    const Offsets center{};
    if (d == 2) {
        s.rho_at_velocity = {sample_field(medium.rho, grid, d, {0.5, 0.0}),
                             sample_field(medium.rho, grid, d, {0.0, 0.5})};
        // stress order (s11, s22, s12)
        s.lambda_at_stress = {sample_field(medium.lambda, grid, d, center),
                              sample_field(medium.lambda, grid, d, center),
                              sample_field(medium.lambda, grid, d, {0.5, 0.5})};
        s.mu_at_stress = {sample_field(medium.mu, grid, d, center),
                          sample_field(medium.mu, grid, d, center),
                          sample_field(medium.mu, grid, d, {0.5, 0.5})};
    } else {
        s.rho_at_velocity = {sample_field(medium.rho, grid, d, {0.5, 0.0, 0.0}),
                             sample_field(medium.rho, grid, d, {0.0, 0.5, 0.0}),
                             sample_field(medium.rho, grid, d, {0.0, 0.0, 0.5})};
        // stress order (s11, s22, s33, s12, s13, s23)
        s.lambda_at_stress = {sample_field(medium.lambda, grid, d, center),
                              sample_field(medium.lambda, grid, d, center),
                              sample_field(medium.lambda, grid, d, center),
                              sample_field(medium.lambda, grid, d, {0.5, 0.5, 0.0}),
                              sample_field(medium.lambda, grid, d, {0.5, 0.0, 0.5}),
                              sample_field(medium.lambda, grid, d, {0.0, 0.5, 0.5})};
        s.mu_at_stress = {sample_field(medium.mu, grid, d, center),
                          sample_field(medium.mu, grid, d, center),
                          sample_field(medium.mu, grid, d, center),
                          sample_field(medium.mu, grid, d, {0.5, 0.5, 0.0}),
                          sample_field(medium.mu, grid, d, {0.5, 0.0, 0.5}),
                          sample_field(medium.mu, grid, d, {0.0, 0.5, 0.5})};
    }
    for (auto& v : s.rho_at_velocity) require_positive(v, "density sample");
    for (auto& v : s.mu_at_stress) require_positive(v, "mu sample");
    for (size_t i = 0; i < s.lambda_at_stress.size(); ++i)
        for (Eigen::Index j = 0; j < s.lambda_at_stress[i].size(); ++j)
            if (3.0 * s.lambda_at_stress[i][j] + 2.0 * s.mu_at_stress[i][j] <= 0.0)
                throw std::invalid_argument("sample_medium: 3*lambda + 2*mu non-positive sample");
    return s;
}

}  // namespace schrowave
