#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gaffine/curve.hpp"
#include "gaffine/expr.hpp"
#include "gaffine/jet.hpp"
#include "gaffine/profile.hpp"

namespace gaffine {

enum class Equation {
    GaPlane,
    GaPlaneGeneral,
    GaSpace1,
    GaSpace2,
    EquiaffineSpace,
    ProjPlane,
    ProjSpace1,
    ProjSpace2,
};

const char* equation_id(Equation eq);  // "GA_PLANE", ...
bool equation_from_id(const std::string& id, Equation& out);

struct ResidualReport {
    Equation equation = Equation::GaPlane;
    std::vector<double> t;         // grid points actually evaluated
    std::vector<double> residual;  // pointwise residual at t
    std::vector<double> excluded;  // grid points dropped by the pole rule
    double sup = 0.0;
    double l2 = 0.0;  // discrete L2 norm: sqrt(mean(residual^2) * window length)
    double tolerance = 0.0;
    bool verdict = false;  // sup <= tolerance
};

struct ExtremalOptions {
    std::optional<double> tolerance;  // default 1e-7 (1 + sup|k|)^3
    double pole_threshold = 1e6;
};

// f(k) of the generalized functional, an expression in the variable k.
struct CurvatureFunctional {
    Expr f;
    std::map<std::string, double> params;

    static CurvatureFunctional parse(const std::string& src, std::map<std::string, double> params = {});
    // Taylor coefficients of f at k0 (c_j = f^(j)(k0)/j!).
    Jet taylor(double k0, int order) const;
};

// G as a jet in t from a jet of k (result order k.order() - 3).
Jet assemble_G(const Jet& k, int eps, const CurvatureFunctional& f);

// Pointwise residuals on jets of the curvature in its arc-length parameter.
double ga_plane_residual_at(const Jet& k, int eps);
double ga_plane_general_residual_at(const Jet& k, int eps, const CurvatureFunctional& f);
std::pair<double, double> ga_space_residuals_at(const Jet& k, const Jet& M, int eps);

ResidualReport ga_plane_residual(const ScalarProfile& k, int eps, const std::vector<double>& grid,
                                 const ExtremalOptions& opt = {});
ResidualReport ga_plane_general_residual(const ScalarProfile& k, int eps, const CurvatureFunctional& f,
                                         const std::vector<double>& grid, const ExtremalOptions& opt = {});
std::pair<ResidualReport, ResidualReport> ga_space_residuals(const ScalarProfile& k, const ScalarProfile& M, int eps,
                                                             const std::vector<double>& grid,
                                                             const ExtremalOptions& opt = {});

struct LinearComplexReport {
    ResidualReport plane;
    ResidualReport space1;
    ResidualReport space2;
    // max |space1 - plane| over the grid; with M = eps k this is (24/5) theta3' = 0.
    double identity_gap = 0.0;
    bool consistent = false;  // identity_gap and sup|space2| within tolerance
};

LinearComplexReport linear_complex_extremal_check(const ScalarProfile& k, int eps, const std::vector<double>& grid,
                                                  const ExtremalOptions& opt = {});

struct EquiaffineExtremalReport {
    std::vector<double> t;
    std::vector<double> ell;
    std::vector<double> m;
    double sup_ell = 0.0;
    double sup_m = 0.0;
    double tolerance = 1e-8;
    bool extremal = false;  // sup|ell| + sup|m| <= tolerance
};

EquiaffineExtremalReport equiaffine_space_extremal_check(const CurveSpec& spec, const std::vector<double>& grid,
                                                         double tolerance = 1e-8);

ResidualReport projective_plane_residual(const ScalarProfile& k, const std::vector<double>& grid,
                                         const ExtremalOptions& opt = {});

struct ProjectiveSpaceReport {
    ResidualReport r1;
    ResidualReport r2;
    bool extremal = false;             // both residual verdicts
    bool curvatures_constant = false;  // sup|k1'| and sup|k2'| within tolerance
    bool reduction_holds = false;      // extremal == curvatures_constant
};

ProjectiveSpaceReport projective_space_residuals(const ScalarProfile& k1, const ScalarProfile& k2,
                                                 const std::vector<double>& grid, const ExtremalOptions& opt = {});

}  // namespace gaffine
