#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "gaffine/curve.hpp"

namespace gaffine {

struct Classification {
    std::string family;                    // catalog family id
    std::map<std::string, double> parameters;
    std::vector<std::string> coords;       // representative, numbers substituted
    double t_min = -1.0;
    double t_max = 1.0;
    std::vector<std::string> notes;
    std::vector<std::string> alternatives; // other families within the root tolerance
    int orientation = 1;                   // -1: representative is traversed backwards

    CurveSpec representative() const;
    std::string representative_expression() const;  // "(e1, e2[, e3])"
};

struct ClassifyOptions {
    double tol_k = 1e-7;     // k = 0, -4, -sqrt 2 boundaries (plane)
    double tol_root = 1e-8;  // relative tolerance on discriminants and root tests
};

// Table 1. k > 0 is mapped to -k by reversing orientation (noted in the result).
Classification classify_plane_constant(double k, int eps, const ClassifyOptions& opt = {});

// Constant-coefficient ODE x'''' = a x''' + b x'' + c x' at q = 1 and its root pattern.
Classification classify_space_constant(double k, double M, int eps, const ClassifyOptions& opt = {});
// Same dispatch starting from the ODE coefficients directly (any scale).
Classification classify_space_ode(double a, double b, double c, const ClassifyOptions& opt = {});

// x'''' = a x'' + b x' + c x; roots of l^4 - a l^2 - b l - c (Table A1).
Classification classify_projective_constant(double a, double b, double c, const ClassifyOptions& opt = {});

// (a, b, c) of x'''' = a x'' + b x' + c x for a homogeneous curve at t, after
// removing the x''' term.
std::array<double, 3> projective_ode_coeffs(const CurveSpec& spec, double t);

// Plane power curve t^alpha: k(alpha) = -2(alpha+1)/sqrt|(2alpha-1)(alpha-2)|.
double power_curvature(double alpha);

struct CatalogCheck {
    std::string name;
    std::string expected_family;
    std::string classified_family;
    std::vector<double> signature;  // (eps, k) | (eps, k, M) | (a, b, c) as computed
    std::vector<double> expected;   // same layout from the closed-form oracle
    double max_error = 0.0;
    bool passed = false;
    std::string detail;
};

struct CatalogReport {
    std::vector<CatalogCheck> checks;
    bool all_passed = false;
};

CatalogReport verify_catalog();

}  // namespace gaffine
