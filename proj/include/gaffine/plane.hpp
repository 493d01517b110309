#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gaffine/curve.hpp"
#include "gaffine/expr.hpp"
#include "gaffine/jet.hpp"

namespace gaffine {

struct PlaneInvariantRecord {
    double t = 0.0;
    double a = 0.0;
    double b = 0.0;
    double L = 0.0;  // -(b + 2a^2/9 - a'/3), signed
    int eps = 0;     // 0 when |L| is below the singular tolerance
    double ds_dt = 0.0;
    std::optional<double> k;
    std::optional<double> dk_ds;
    std::optional<double> k_a;
    std::optional<double> P;    // cubic form density in t; equals eps*k/2 * ds_dt^3
    std::optional<double> k_p;
    std::vector<std::string> flags;

    bool has_flag(const std::string& f) const;
};

namespace flag {
inline constexpr const char* kAffineInflection = "affine_inflection";
inline constexpr const char* kSextactic = "sextactic";
inline constexpr const char* kLinearComplex = "linear_complex";
inline constexpr const char* kDegenerate = "degenerate";
}  // namespace flag

struct PlaneOptions {
    int order = kDefaultJetOrder;
    double singular_scale = 1e-9;    // tol_singular = scale * (1 + |b| + a^2)
    double degenerate_scale = 1e-12; // |det(x', x'')| <= scale * |x'| |x''|
};

// a, b of x''' = a x'' + b x' from coordinate jets of order N (result order N - 3).
std::pair<Jet, Jet> plane_ode_coeffs(const std::vector<Jet>& x, double degenerate_scale = 1e-12);
std::pair<Jet, Jet> plane_ode_coeffs(const CurveSpec& spec, double t, int order = kDefaultJetOrder);

PlaneInvariantRecord plane_invariants_from_jets(const std::vector<Jet>& x, double t, const PlaneOptions& opt = {});
PlaneInvariantRecord plane_invariants_at(const CurveSpec& spec, double t, const PlaneOptions& opt = {});

struct GraphInvariants {
    double ds_dt = 0.0;
    double k_squared = 0.0;
    double mu = 0.0;
    double mu1 = 0.0;
    double mu2 = 0.0;
    double mu3 = 0.0;
    bool inflection = false;
    double k_squared_ode = 0.0;  // from plane_invariants_at on (t, f(t))
    bool consistent = false;     // relative agreement within 1e-8
};

// Graph immersion (t, f(t)) with f'' > 0.
GraphInvariants plane_graph_invariants(const Expr& f, double t, const std::map<std::string, double>& params = {});

// k = K' K^(-3/2) with K = |k_a| sampled on a uniform grid of the equiaffine parameter.
std::vector<double> equiaffine_to_ga(const std::vector<double>& k_a, double h);

// Equiaffine arc length from t0 to t1: integral of |det(x', x'')|^(1/3).
double plane_equiaffine_length(const CurveSpec& spec, double t0, double t1, double rel_tol = 1e-10);

struct ScanEvent {
    std::string kind;  // affine_inflection | flat_point | vertex | degenerate
    double t;
};

struct TotalCurvature {
    double value = 0.0;
    std::vector<double> segments;
    bool valid = false;  // false when the window contains inflections or degenerate points
};

struct PlaneScan {
    std::vector<PlaneInvariantRecord> records;
    std::vector<ScanEvent> events;
    TotalCurvature total_curvature;
    bool periodic = false;
};

struct ScanOptions {
    PlaneOptions plane;
    double root_tol = 1e-12;
    // Treat the grid as one period of a closed curve when the endpoint jets agree.
    bool detect_periodic = true;
};

PlaneScan scan_curve(const CurveSpec& spec, const std::vector<double>& grid, const ScanOptions& opt = {});

std::size_t count_events(const std::vector<ScanEvent>& events, const std::string& kind);

}  // namespace gaffine
