#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gaffine/curve.hpp"
#include "gaffine/jet.hpp"
#include "gaffine/plane.hpp"

namespace gaffine {

struct SpaceInvariantRecord {
    double t = 0.0;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double L = 0.0;  // -(b + 11a^2/36 - 2a'/3), signed
    int eps = 0;
    double ds_dt = 0.0;
    std::optional<double> k;          // -(1/3) A(sigma) route
    std::optional<double> k_log_ell;  // d log(ell)/ds route
    std::optional<double> M;
    std::optional<double> dk_ds;
    std::optional<double> dM_ds;
    std::optional<double> theta3;       // (M - eps k)/4
    std::optional<double> theta4;       // from k, M and their s-derivatives
    std::optional<double> theta3_proj;  // Laguerre-Forsyth route in t, divided by ds_dt^3
    std::optional<double> theta4_proj;  // same, divided by ds_dt^4
    double ell_equi = 0.0;  // unimodular-frame equiaffine curvature
    double m_equi = 0.0;    // unimodular-frame equiaffine torsion
    bool linear_complex = false;
    std::vector<std::string> flags;

    bool has_flag(const std::string& f) const;
};

struct SpaceOptions {
    int order = kDefaultJetOrder;
    double singular_scale = 1e-9;
    double degenerate_scale = 1e-12;
    double complex_tol = 1e-8;
};

// a, b, c of x'''' = a x''' + b x'' + c x' (result order N - 4).
std::array<Jet, 3> space_ode_coeffs(const std::vector<Jet>& x, double degenerate_scale = 1e-12);
std::array<Jet, 3> space_ode_coeffs(const CurveSpec& spec, double t, int order = kDefaultJetOrder);

SpaceInvariantRecord space_invariants_from_jets(const std::vector<Jet>& x, double t, const SpaceOptions& opt = {});
SpaceInvariantRecord space_invariants_at(const CurveSpec& spec, double t, const SpaceOptions& opt = {});

enum class EquiaffineMode { RequireParameter, AutoReparametrize };

struct EquiaffineSpaceResult {
    double ell = 0.0;
    double m = 0.0;
    double a = 0.0;               // ODE coefficient a at t (0 for an equiaffine parameter)
    double du_dt = 0.0;           // |det(x', x'', x''')|^(1/6)
    std::optional<double> u;      // equiaffine arc length from t_min (auto mode only)
    std::optional<double> ds_du;  // sqrt|ell|
    std::optional<double> k;      // L' L^(-3/2), L = |ell|, ' = d/du
    std::optional<double> M;      // m L^(-3/2)
};

EquiaffineSpaceResult equiaffine_space_invariants(const CurveSpec& spec, double t,
                                                  EquiaffineMode mode = EquiaffineMode::RequireParameter);

struct Theta {
    double theta3 = 0.0;
    double theta4 = 0.0;
};

// From semi-canonical coefficients P2 (order >= 2), P3 (>= 1), P4 (>= 0).
Theta projective_space_invariants(const Jet& P2, const Jet& P3, const Jet& P4);
// From general-affine data as jets in the GA arc length (k and M of order >= 1).
Theta projective_space_invariants_from_ga(const Jet& k, const Jet& M, int eps);
// Semi-canonical (P2, P3, P4) of the lift (1, x) of the GA-normalized ODE built from k, M, eps.
std::array<Jet, 3> projective_coeffs_from_ga(const Jet& k, const Jet& M, int eps);
// Same, from the ODE coefficients a, b, c of x'''' = a x''' + b x'' + c x'.
std::array<Jet, 3> projective_coeffs_from_ode(const Jet& a, const Jet& b, const Jet& c);
// Same, from homogeneous coordinate jets y_0..y_3 of a curve in P^3 (order >= 7 for theta4).
std::array<Jet, 3> projective_coeffs_from_homogeneous(const std::vector<Jet>& y);

// theta3, theta4 at t of a space curve (dimension 3, lifted to (1, x)) or of a
// homogeneous curve (dimension 4).
Theta projective_space_invariants_at(const CurveSpec& spec, double t, int order = kDefaultJetOrder);

// Solves A x = rhs over jets with partial pivoting on the constant terms.
std::vector<Jet> solve_jet_system(std::vector<std::vector<Jet>> A, std::vector<Jet> rhs);

struct SpaceScan {
    std::vector<SpaceInvariantRecord> records;
    std::vector<ScanEvent> events;
    double theta3_sup = 0.0;
    bool linear_complex = false;  // sup |theta3| <= complex_tol over the window
};

SpaceScan scan_space_curve(const CurveSpec& spec, const std::vector<double>& grid, const SpaceOptions& opt = {});

}  // namespace gaffine
