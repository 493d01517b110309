#pragma once

#include <vector>

#include "gaffine/curve.hpp"
#include "gaffine/errors.hpp"
#include "gaffine/jet.hpp"
#include "gaffine/ode.hpp"
#include "gaffine/profile.hpp"

namespace gaffine {

enum class AbelKind { FirstKind, SecondKind };

// Integration stopped on the singular set of the reduction (s -> 0 or |s| -> inf).
class AbelBreakdownError : public IntegratorError {
public:
    AbelBreakdownError(const std::string& what, double x)
        : IntegratorError(what + " at x = " + std::to_string(x)), x_(x) {}
    double x() const noexcept { return x_; }

private:
    double x_;
};

// The unknown is s(x) with x = mu = (f'')^(-2/3) of a graph (t, f(t)).
//   first kind:  eps s' = k s^2 / (2 sqrt(2x)) + s^3,    w = w_sign exp(-eps int s^2)
//   second kind: s s'   = k s / (2 sqrt(2x)) - eps,      w = w_sign exp(-eps int s^-2)
// with w = d mu / dt. k is a profile in the variable x.
struct AbelProblem {
    ScalarProfile k;
    int eps = 1;
    AbelKind kind = AbelKind::FirstKind;
    double x0 = 1.0;
    double s0 = 1.0;
    double x1 = 2.0;
    // Sign of w. 0 picks the branch whose graph has curvature k: eps sgn(s0)
    // (first kind), -sgn(s0) (second kind). The other branch gives -k.
    int w_sign = 0;
    OdeOptions ode;
    std::size_t samples = 201;
    std::size_t roundtrip_points = 21;
};

double abel_rhs(AbelKind kind, double k, int eps, double x, double s);

// Constant k: s = a / sqrt(2x), a = (-k + branch sqrt(k^2 - 16 eps)) / 4.
double abel_constant_k_coefficient(double k, int eps, int branch = 1);
double abel_constant_k_solution(double a, double x);
// k = 0: s = 1 / sqrt(eps (a - 2x)).
double abel_zero_k_solution(double a, int eps, double x);

// Initial value of the other reduction describing the same w: s2 = -eps / s1.
double abel_compatible_initial(int eps, double s);

struct AbelRoundtrip {
    std::vector<double> x;
    std::vector<double> k_recomputed;
    std::vector<int> eps_recomputed;
    double max_k_error = 0.0;
    double max_mu_residual = 0.0;  // relative residual of the mu equation
    bool eps_ok = true;
    double tolerance = 1e-6;
    bool passed = false;
};

struct AbelSolution {
    AbelProblem problem;  // w_sign resolved
    // Samples uniform in x; f1 = f', all as functions of x.
    std::vector<double> x, s, t, f1, f;
    DenseSolution dense;  // state (s, I, t, f', f) over x
    OdeStats stats;
    AbelRoundtrip roundtrip;

    // (t, f) jets at the graph point with mu = x, of the given order.
    std::vector<Jet> graph_jets(double x, int order = kDefaultJetOrder) const;
    // Jet of mu in t at the graph point with mu = x.
    Jet mu_jet(double x, int order) const;
    // Graph resampled on n points uniform in t, as a sampled curve.
    CurveSpec graph(std::size_t n = 201) const;
};

AbelSolution abel_solve(const AbelProblem& problem);

struct MuResidualReport {
    std::vector<double> t;
    std::vector<double> residual;  // mu (mu''')^2 + eps k^2/2 (mu'')^3
    double sup = 0.0;
    double relative_sup = 0.0;  // residual over |mu| mu'''^2 + (1 + k^2/2) |mu''|^3
};

// mu and k as profiles in t. Throws DomainError where mu <= 0.
double mu_equation_residual_at(const Jet& mu, double k, int eps);
MuResidualReport mu_equation_residual(const ScalarProfile& mu, const ScalarProfile& k, int eps,
                                      const std::vector<double>& grid);

}  // namespace gaffine
