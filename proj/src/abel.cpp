#include "gaffine/abel.hpp"

#include <algorithm>
#include <cmath>

#include "gaffine/numeric.hpp"
#include "gaffine/plane.hpp"

namespace gaffine {

namespace {

constexpr double kTinyS = 1e-10;
constexpr double kHugeS = 1e8;

void check_eps(int eps) {
    if (eps != 1 && eps != -1) throw DomainError("eps must be +1 or -1");
}

// Index layout of the augmented state.
enum { kS, kI, kT, kF1, kF, kDim };

}  // namespace

double abel_rhs(AbelKind kind, double k, int eps, double x, double s) {
    const double r = std::sqrt(2.0 * x);
    if (kind == AbelKind::FirstKind) return eps * (k * s * s / (2.0 * r) + s * s * s);
    return k / (2.0 * r) - eps / s;
}

double abel_constant_k_coefficient(double k, int eps, int branch) {
    check_eps(eps);
    const double disc = k * k - 16.0 * eps;
    if (disc < 0) throw DomainError("k^2 - 16 eps < 0: no power solution");
    return (-k + (branch >= 0 ? 1.0 : -1.0) * std::sqrt(disc)) / 4.0;
}

double abel_constant_k_solution(double a, double x) {
    if (x <= 0) throw DomainError("x must be positive");
    return a / std::sqrt(2.0 * x);
}

double abel_zero_k_solution(double a, int eps, double x) {
    check_eps(eps);
    const double v = eps * (a - 2.0 * x);
    if (v <= 0) throw DomainError("eps (a - 2x) must be positive");
    return 1.0 / std::sqrt(v);
}

double abel_compatible_initial(int eps, double s) {
    check_eps(eps);
    if (s == 0.0) throw DomainError("s must be nonzero");
    return -eps / s;
}

Jet AbelSolution::mu_jet(double x, int order) const {
    const AbelProblem& p = problem;
    const State y = dense(x);
    const int n = std::max(order, 1);
    const Jet X = jet_variable(x, n);
    const Jet K = p.k.jet(x, n);
    const Jet root = sqrt(2.0 * X);
    Jet S = Jet::constant(y[kS], n);
    for (int it = 0; it <= n; ++it) {
        Jet rhs = p.kind == AbelKind::FirstKind ? double(p.eps) * (K * S * S / (2.0 * root) + S * S * S)
                                                : K / (2.0 * root) - double(p.eps) / S;
        S = rhs.integrate(y[kS]).truncated(n);
    }
    const Jet dI = p.kind == AbelKind::FirstKind ? S * S : 1.0 / (S * S);
    const Jet W = double(p.w_sign) * exp(-double(p.eps) * dI.integrate(y[kI]).truncated(n));
    Jet mu = Jet::constant(x, n);
    for (int it = 0; it <= n; ++it) mu = compose(W.coeffs(), mu).integrate(x).truncated(n);
    return mu.truncated(order);
}

std::vector<Jet> AbelSolution::graph_jets(double x, int order) const {
    const State y = dense(x);
    const Jet mu = mu_jet(x, order);
    const Jet f2 = pow_real(mu, -1.5);
    const Jet F = f2.integrate(y[kF1]).integrate(y[kF]).truncated(order);
    return {jet_variable(y[kT], order), F};
}

CurveSpec AbelSolution::graph(std::size_t n) const {
    if (n < 2) throw DomainError("graph needs at least two samples");
    const double xa = problem.x0, xb = problem.x1;
    const double ta = dense(xa)[kT], tb = dense(xb)[kT];
    SampledCurve c;
    c.t = linspace(std::min(ta, tb), std::max(ta, tb), n);
    c.coords.assign(2, {});
    for (double t : c.t) {
        double x;
        if (t == ta)
            x = xa;
        else if (t == tb)
            x = xb;
        else
            x = bisect_root([&](double u) { return dense(u)[kT] - t; }, std::min(xa, xb), std::max(xa, xb));
        c.coords[0].push_back(t);
        c.coords[1].push_back(dense(x)[kF]);
    }
    return CurveSpec::from_samples(std::move(c));
}

AbelSolution abel_solve(const AbelProblem& p) {
    check_eps(p.eps);
    if (p.k.empty()) throw DomainError("missing curvature profile");
    if (!(p.x0 > 0) || !(p.x1 > 0)) throw DomainError("the x window must be positive");
    if (p.x0 == p.x1) throw DomainError("empty x window");
    if (p.w_sign < -1 || p.w_sign > 1) throw DomainError("w_sign must be -1, 0 or +1");
    if (p.s0 == 0.0) throw DomainError("s0 must be nonzero");
    AbelSolution sol;
    sol.problem = p;
    const int sgn = p.s0 > 0 ? 1 : -1;
    if (p.w_sign == 0) sol.problem.w_sign = p.kind == AbelKind::FirstKind ? p.eps * sgn : -sgn;
    const int w_sign = sol.problem.w_sign;

    const bool first = p.kind == AbelKind::FirstKind;
    double last_x = p.x0;
    auto rhs = [&](double x, const State& y, State& dy) {
        last_x = x;
        const double s = y[kS];
        if (!std::isfinite(s) || std::abs(s) > kHugeS) throw AbelBreakdownError("s blows up", x);
        if (std::abs(s) < kTinyS)
            throw AbelBreakdownError(first ? "s reaches 0 (degenerate graph)" : "s reaches the singular set s = 0",
                                     x);
        if (x <= 0) throw AbelBreakdownError("x left the positive half-line", x);
        const double w = w_sign * std::exp(-p.eps * y[kI]);
        if (!std::isfinite(w) || w == 0.0) throw AbelBreakdownError("w overflows", x);
        dy.resize(kDim);
        dy[kS] = abel_rhs(p.kind, p.k(x), p.eps, x, s);
        dy[kI] = first ? s * s : 1.0 / (s * s);
        dy[kT] = 1.0 / w;
        dy[kF1] = std::pow(x, -1.5) / w;
        dy[kF] = y[kF1] / w;
    };
    State y0(kDim, 0.0);
    y0[kS] = p.s0;
    OdeResult res;
    try {
        res = DormandPrince(p.ode).integrate(rhs, p.x0, y0, p.x1);
    } catch (const AbelBreakdownError&) {
        throw;
    } catch (const IntegratorError& e) {
        // Step control collapses only next to a movable singularity of s.
        throw AbelBreakdownError(std::string("integration stopped (") + e.what() + ")", last_x);
    }
    sol.dense = std::move(res.solution);
    sol.stats = res.stats;
    for (double x : linspace(p.x0, p.x1, std::max<std::size_t>(p.samples, 2))) {
        const State y = sol.dense(x);
        sol.x.push_back(x);
        sol.s.push_back(y[kS]);
        sol.t.push_back(y[kT]);
        sol.f1.push_back(y[kF1]);
        sol.f.push_back(y[kF]);
    }

    AbelRoundtrip& rt = sol.roundtrip;
    const std::size_t m = std::max<std::size_t>(p.roundtrip_points, 1);
    for (std::size_t i = 0; i < m; ++i) {
        const double x = p.x0 + (p.x1 - p.x0) * (i + 0.5) / static_cast<double>(m);
        const auto jets = sol.graph_jets(x);
        const auto rec = plane_invariants_from_jets(jets, jets[0][0]);
        const double k_want = p.k(x);
        rt.x.push_back(x);
        rt.eps_recomputed.push_back(rec.eps);
        rt.k_recomputed.push_back(rec.k.value_or(std::nan("")));
        if (rec.eps != p.eps || !rec.k) {
            rt.eps_ok = false;
            continue;
        }
        rt.max_k_error = std::max(rt.max_k_error, std::abs(*rec.k - k_want) / std::max(1.0, std::abs(k_want)));
        rt.max_mu_residual = std::max(rt.max_mu_residual, [&] {
            const Jet mu = sol.mu_jet(x, 3);
            const double m2 = mu.derivative(2), m3 = mu.derivative(3);
            const double scale = std::abs(mu[0]) * m3 * m3 + (1.0 + 0.5 * k_want * k_want) * std::abs(m2 * m2 * m2);
            const double r = mu_equation_residual_at(mu, k_want, p.eps);
            return scale > 0 ? std::abs(r) / scale : std::abs(r);
        }());
    }
    rt.passed = rt.eps_ok && rt.max_k_error <= rt.tolerance;
    return sol;
}

double mu_equation_residual_at(const Jet& mu, double k, int eps) {
    if (mu.order() < 3) throw SmoothnessError("mu equation needs mu'''");
    if (!(mu[0] > 0)) throw DomainError("mu must be positive");
    const double m2 = mu.derivative(2), m3 = mu.derivative(3);
    return mu[0] * m3 * m3 + eps * 0.5 * k * k * m2 * m2 * m2;
}

MuResidualReport mu_equation_residual(const ScalarProfile& mu, const ScalarProfile& k, int eps,
                                      const std::vector<double>& grid) {
    check_eps(eps);
    MuResidualReport r;
    for (double t : grid) {
        const Jet m = mu.jet(t, 3);
        const double kv = k(t);
        const double res = mu_equation_residual_at(m, kv, eps);
        const double m2 = m.derivative(2), m3 = m.derivative(3);
        const double scale = m[0] * m3 * m3 + (1.0 + 0.5 * kv * kv) * std::abs(m2 * m2 * m2);
        r.t.push_back(t);
        r.residual.push_back(res);
        r.sup = std::max(r.sup, std::abs(res));
        r.relative_sup = std::max(r.relative_sup, scale > 0 ? std::abs(res) / scale : std::abs(res));
    }
    return r;
}

}  // namespace gaffine
