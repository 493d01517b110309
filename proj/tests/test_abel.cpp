#include <cmath>

#include "doctest.h"

#include "gaffine/abel.hpp"
#include "gaffine/numeric.hpp"
#include "gaffine/plane.hpp"

using namespace gaffine;
using doctest::Approx;

namespace {

AbelProblem problem(const std::string& k, int eps, AbelKind kind, double s0, double x0 = 1, double x1 = 2) {
    AbelProblem p;
    p.k = ScalarProfile::parse(k, {}, "x");
    p.eps = eps;
    p.kind = kind;
    p.s0 = s0;
    p.x0 = x0;
    p.x1 = x1;
    p.ode.rtol = 1e-11;
    p.ode.atol = 1e-12;
    return p;
}

}  // namespace

TEST_CASE("constant-k coefficient solves 2a^2 + k a + 2 eps = 0") {
    for (double k : {-5.0, -4.5, 0.0, 3.0})
        for (int branch : {1, -1}) {
            const double a = abel_constant_k_coefficient(k, -1, branch);
            CHECK(2 * a * a + k * a - 2 == Approx(0.0).scale(1.0).epsilon(1e-12));
        }
    CHECK_THROWS_AS(abel_constant_k_coefficient(1.0, 1), DomainError);
    const double a = abel_constant_k_coefficient(-5.0, 1);
    CHECK(a == Approx((5 + 3) / 4.0));
}

TEST_CASE("closed forms satisfy the first-kind equation") {
    const double a = abel_constant_k_coefficient(-5.0, 1);
    for (double x : {0.5, 1.0, 3.0}) {
        const double h = 1e-5;
        const double ds = (abel_constant_k_solution(a, x + h) - abel_constant_k_solution(a, x - h)) / (2 * h);
        CHECK(ds == Approx(abel_rhs(AbelKind::FirstKind, -5.0, 1, x, abel_constant_k_solution(a, x))).epsilon(1e-8));
    }
    // k = 0: s' = eps s^3
    const double s = abel_zero_k_solution(5.0, 1, 1.5);
    CHECK(s == Approx(1 / std::sqrt(2.0)));
    CHECK(abel_rhs(AbelKind::FirstKind, 0.0, 1, 1.5, s) == Approx(s * s * s));
}

TEST_CASE("numeric integration matches the constant-k closed form") {
    for (int eps : {1, -1})
        for (int branch : {1, -1}) {
            const double k = -5.0;
            const double a = abel_constant_k_coefficient(k, eps, branch);
            const auto sol = abel_solve(problem("-5", eps, AbelKind::FirstKind, abel_constant_k_solution(a, 1.0)));
            double err = 0;
            for (std::size_t i = 0; i < sol.x.size(); ++i)
                err = std::max(err, std::abs(sol.s[i] - abel_constant_k_solution(a, sol.x[i])));
            INFO("eps " << eps << " branch " << branch);
            CHECK(err <= 1e-8);
            CHECK(sol.roundtrip.passed);
            CHECK(sol.roundtrip.max_k_error <= 1e-6);
        }
}

TEST_CASE("numeric integration matches the k = 0 closed form") {
    const auto plus = abel_solve(problem("0", 1, AbelKind::FirstKind, abel_zero_k_solution(5.0, 1, 1.0)));
    const auto minus = abel_solve(problem("0", -1, AbelKind::FirstKind, abel_zero_k_solution(0.0, -1, 1.0)));
    double e1 = 0, e2 = 0;
    for (std::size_t i = 0; i < plus.x.size(); ++i) {
        e1 = std::max(e1, std::abs(plus.s[i] - abel_zero_k_solution(5.0, 1, plus.x[i])));
        e2 = std::max(e2, std::abs(minus.s[i] - abel_zero_k_solution(0.0, -1, minus.x[i])));
    }
    CHECK(e1 <= 1e-8);
    CHECK(e2 <= 1e-8);
    CHECK(plus.roundtrip.passed);
    CHECK(minus.roundtrip.passed);
}

TEST_CASE("second kind with the compatible initial value") {
    const double a = abel_constant_k_coefficient(-5.0, 1);
    const double s1 = abel_constant_k_solution(a, 1.0);
    const auto sol = abel_solve(problem("-5", 1, AbelKind::SecondKind, abel_compatible_initial(1, s1)));
    double err = 0;
    for (std::size_t i = 0; i < sol.x.size(); ++i)
        err = std::max(err, std::abs(sol.s[i] + 1 / abel_constant_k_solution(a, sol.x[i])));
    CHECK(err <= 1e-8);
    CHECK(sol.roundtrip.passed);
}

TEST_CASE("non-constant curvature round trip") {
    for (int eps : {1, -1}) {
        const double k0 = -5 + 0.4 * std::sin(1.0);
        const double s0 = abel_constant_k_solution(abel_constant_k_coefficient(k0, eps), 1.0);
        const auto sol = abel_solve(problem("-5 + 0.4*sin(x)", eps, AbelKind::FirstKind, s0));
        INFO("eps " << eps);
        CHECK(sol.roundtrip.eps_ok);
        CHECK(sol.roundtrip.max_k_error <= 1e-6);
        CHECK(sol.roundtrip.max_mu_residual <= 1e-6);
        // resampled graph, checked through the plane module
        const CurveSpec g = sol.graph(401);
        const double tm = 0.5 * (g.t_min + g.t_max);
        // f'' = mu^(-3/2) > 0
        CHECK(eval_curve(g, tm, 2)[1].derivative(2) > 0);
        const double x = sol.x[sol.x.size() / 2];
        const auto jets = sol.graph_jets(x, 2);
        CHECK(jets[1].derivative(2) == Approx(std::pow(x, -1.5)).epsilon(1e-9));
    }
}

TEST_CASE("the other sign of w reflects the graph") {
    auto p = problem("-5", 1, AbelKind::FirstKind, abel_constant_k_solution(abel_constant_k_coefficient(-5, 1), 1));
    p.w_sign = -1;
    const auto sol = abel_solve(p);
    CHECK(sol.problem.w_sign == -1);
    for (double k : sol.roundtrip.k_recomputed) CHECK(k == Approx(5.0).epsilon(1e-6));
    CHECK_FALSE(sol.roundtrip.passed);
}

TEST_CASE("blow-up is reported as a breakdown") {
    CHECK_THROWS_AS(abel_solve(problem("-2", 1, AbelKind::FirstKind, -0.7)), AbelBreakdownError);
    CHECK_THROWS_AS(abel_solve(problem("-2", 1, AbelKind::FirstKind, 0.0)), DomainError);
    CHECK_THROWS_AS(abel_solve(problem("-2", 3, AbelKind::FirstKind, 1.0)), DomainError);
}

TEST_CASE("mu equation on (t, t log t)") {
    // mu = (f'')^(-2/3) = t^(2/3), k = -4, eps = +1
    const auto r = mu_equation_residual(ScalarProfile::parse("t^(2/3)"), ScalarProfile::constant(-4), 1,
                                        linspace(0.3, 3, 30));
    CHECK(r.relative_sup < 1e-12);
    const auto bad = mu_equation_residual(ScalarProfile::parse("t^(2/3)"), ScalarProfile::constant(-3), 1,
                                          linspace(0.3, 3, 30));
    CHECK(bad.relative_sup > 1e-2);
    CHECK_THROWS_AS(mu_equation_residual_at(Jet::constant(-1.0, 3), 0.0, 1), DomainError);
}
