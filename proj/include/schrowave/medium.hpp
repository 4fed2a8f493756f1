#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "schrowave/grid.hpp"
#include "schrowave/types.hpp"

namespace schrowave {

/// Scalar material field over the periodic domain; constant unless an evaluator is set.
struct MediumField {
    double constant = 1.0;
    std::function<double(double, double, double)> eval;  // (x, y, z); trailing args unused below d=3

    double operator()(double x, double y = 0.0, double z = 0.0) const {
        return eval ? eval(x, y, z) : constant;
    }
    bool is_constant() const { return !eval; }
};

/// Isotropic medium: density rho and Lame parameters lambda, mu.
/// Wave speeds c_p = sqrt((lambda+2mu)/rho), c_s = sqrt(mu/rho).
struct IsotropicMedium {
    MediumField rho;
    MediumField lambda;
    MediumField mu;

    static IsotropicMedium constants(double rho, double lambda, double mu);

    bool is_constant() const { return rho.is_constant() && lambda.is_constant() && mu.is_constant(); }
    /// Constant-medium wave speeds; throws for field media.
    double cp() const;
    double cs() const;
    /// rho > 0, mu > 0, 3*lambda + 2*mu > 0.
    void validate_constants() const;
};

/// The variable-coefficient trio of the 2-D staggered experiment:
/// rho = 1 + 0.5 sin(x) cos(y), lambda = 0.5 + 0.2 sin(x) cos(y), mu = 0.5 + 0.15 sin(x) cos(y).
IsotropicMedium medium_preset_sincos();

/// Look up a named medium preset ("sincos"); throws on unknown name.
IsotropicMedium medium_preset(const std::string& name);

/// Tabulated field from "x y value" lines; lookups must hit tabulated points
/// within 1e-9 or the evaluator throws.
MediumField medium_field_from_table(std::istream& is);

/// rho sampled at velocity locations, lambda and mu at stress locations, for the
/// staggered layout (v_i offset half a cell along axis i; shear stresses on the
/// corresponding edge midpoints; normal stresses at cell centers).
struct MediumSamples {
    std::vector<RealVec> rho_at_velocity;    // d vectors of length M^d
    std::vector<RealVec> lambda_at_stress;   // one per stress component
    std::vector<RealVec> mu_at_stress;
};

/// Throws if any sample violates rho > 0, mu > 0, or 3*lambda + 2*mu > 0.
MediumSamples sample_medium(const IsotropicMedium& medium, const Grid1D& grid, int d);

}  // namespace schrowave
