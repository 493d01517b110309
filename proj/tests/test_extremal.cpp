#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"

#include "gaffine/errors.hpp"
#include "gaffine/extremal.hpp"
#include "gaffine/numeric.hpp"

using namespace gaffine;
using doctest::Approx;

namespace {

const double r2 = std::sqrt(2.0);

ScalarProfile prof(const std::string& s, std::map<std::string, double> p = {}) {
    return ScalarProfile::parse(s, std::move(p));
}

}  // namespace

TEST_CASE("the five plane solutions are extremal") {
    struct Case {
        const char* k;
        int eps;
        double a, b;
    };
    // windows avoid the poles of tan/coth/cot/3/t
    const Case cases[] = {
        {"3*sqrt(2)*tanh(sqrt(2)*(t - 0.3))", 1, -2, 2},
        {"3*sqrt(2)/tanh(sqrt(2)*(t - 0.3))", 1, 0.5, 3},
        {"-3*sqrt(2)*tan(sqrt(2)*(t - 0.3))", -1, -0.6, 1.2},
        {"3*sqrt(2)*cos(sqrt(2)*(t - 0.3))/sin(sqrt(2)*(t - 0.3))", -1, 0.4, 2.3},
        {"sqrt(2) + 3/(t - 0.3)", -1, 0.5, 3},
        {"-sqrt(2) + 3/(t - 0.3)", -1, 0.5, 3},
    };
    for (const auto& c : cases) {
        ExtremalOptions opt;
        opt.tolerance = 1e-9;
        const auto r = ga_plane_residual(prof(c.k), c.eps, linspace(c.a, c.b, 200), opt);
        INFO(c.k);
        CHECK(r.excluded.empty());
        CHECK(r.sup <= 1e-9);
        CHECK(r.verdict);
    }
}

TEST_CASE("plane residual matches a hand-derived residual") {
    // k = sqrt(2) + 3/t, eps = 1 (not a solution for this eps)
    const ScalarProfile k = prof("sqrt(2) + 3/t");
    for (double t : {0.7, 1.4, 2.9}) {
        const double kv = r2 + 3 / t, k1 = -3 / (t * t), k2 = 6 / (t * t * t), k3 = -18 / std::pow(t, 4);
        const double want = k3 + 1.5 * kv * k2 + 0.5 * k1 * k1 + 0.5 * kv * kv * k1 + k1;
        CHECK(ga_plane_residual_at(k.jet(t, 3), 1) == Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("a perturbed solution is rejected") {
    const auto r = ga_plane_residual(prof("3*sqrt(2)*1.01*tanh(sqrt(2)*t)"), 1, linspace(-2, 2, 200));
    CHECK(r.sup > 1e-3);
    CHECK_FALSE(r.verdict);
}

TEST_CASE("poles are excluded, not reported as residual") {
    ExtremalOptions opt;
    opt.pole_threshold = 1e4;
    const auto r = ga_plane_residual(prof("3*sqrt(2)/tanh(sqrt(2)*t)"), 1, linspace(-1, 1, 201), opt);
    CHECK_FALSE(r.excluded.empty());
    CHECK(r.verdict);
}

TEST_CASE("space solutions with constant M") {
    const double a0 = std::sqrt(0.4);
    ExtremalOptions opt;
    opt.tolerance = 1e-9;
    auto check_pair = [&](const ScalarProfile& k, const ScalarProfile& M, int eps, double lo, double hi) {
        const auto [r1, r2s] = ga_space_residuals(k, M, eps, linspace(lo, hi, 150), opt);
        CHECK(r1.sup <= 1e-9);
        CHECK(r2s.sup <= 1e-9);
    };
    check_pair(prof("-3*a*tan(a*t)", {{"a", a0}}), ScalarProfile::constant(0), 1, -2, 2);
    check_pair(prof("3*a*tanh(a*t)", {{"a", a0}}), ScalarProfile::constant(0), -1, -3, 3);
    // 80 a^2 - 125 M^2 + 32 eps = 0
    const double M1 = 1.0, a1 = std::sqrt((125 * M1 * M1 - 32) / 80);
    check_pair(prof("-5/4*M + 3*a*tanh(a*t)", {{"a", a1}, {"M", M1}}), ScalarProfile::constant(M1), 1, -2, 2);
    const double M2 = 0.5, a2 = std::sqrt((125 * M2 * M2 + 32) / 80);
    check_pair(prof("5/4*M + 3*a*tanh(a*t)", {{"a", a2}, {"M", M2}}), ScalarProfile::constant(M2), -1, -2, 2);

    // 1% off in a
    const auto [p1, p2] = ga_space_residuals(prof("-5/4*M + 3*a*tanh(a*t)", {{"a", 1.01 * a1}, {"M", M1}}),
                                             ScalarProfile::constant(M1), 1, linspace(-2, 2, 150));
    CHECK(std::max(p1.sup, p2.sup) > 1e-3);
    const auto [q1, q2] = ga_space_residuals(prof("-3*a*tan(a*t)", {{"a", 1.01 * a0}}), ScalarProfile::constant(0),
                                             1, linspace(-2, 2, 150));
    CHECK(std::max(q1.sup, q2.sup) > 1e-3);
}

TEST_CASE("constant curvatures are always extremal in space") {
    const auto [a, b] = ga_space_residuals(ScalarProfile::constant(0.7), ScalarProfile::constant(-1.3), 1,
                                           linspace(0, 1, 20));
    CHECK(a.sup < 1e-14);
    CHECK(b.sup < 1e-14);
}

TEST_CASE("generalized functional: f = k^2/2 gives G = 4k''' - 3/2 k^2 k' + 16 eps k'") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto f = CurvatureFunctional::parse("k^2/2");
    for (int i = 0; i < 8; ++i) {
        std::map<std::string, double> p{{"c0", u(rng)}, {"c1", u(rng)}, {"c2", u(rng)}, {"w", 1 + u(rng)}};
        const ScalarProfile k = prof("c0 + c1*sin(w*t) + c2*t^3", p);
        const int eps = i % 2 ? 1 : -1;
        for (double t : {-0.5, 0.2, 0.9}) {
            const Jet kj = k.jet(t, 6);
            const Jet G = assemble_G(kj, eps, f);
            const double want =
                4 * kj.derivative(3) - 1.5 * kj[0] * kj[0] * kj.derivative(1) + 16 * eps * kj.derivative(1);
            CHECK(G[0] == Approx(want).epsilon(1e-8));
        }
    }
}

TEST_CASE("generalized functional: f = 1 reduces to the length functional") {
    const auto one = CurvatureFunctional::parse("1");
    const ScalarProfile k = prof("0.4 + sin(t) + t^2/5");
    for (int eps : {1, -1})
        for (double t : {-1.0, 0.3, 1.1}) {
            const Jet kj = k.jet(t, 8);
            CHECK(ga_plane_general_residual_at(kj, eps, one) ==
                  Approx(ga_plane_residual_at(kj, eps)).epsilon(1e-8).scale(1.0));
        }
}

TEST_CASE("linear complex: space equations reduce to the plane one") {
    const auto r = linear_complex_extremal_check(prof("3*sqrt(2)*tanh(sqrt(2)*t)"), 1, linspace(-1, 1, 50));
    CHECK(r.consistent);
    CHECK(r.identity_gap < 1e-9);
}

TEST_CASE("projective plane: constant k solves the Cartan equation exactly") {
    const auto r = projective_plane_residual(ScalarProfile::constant(2.5), linspace(0, 1, 30));
    CHECK(r.sup == 0.0);
    CHECK(r.verdict);
    const auto s = projective_plane_residual(prof("sin(t)"), linspace(0, 1, 30));
    CHECK_FALSE(s.verdict);
}

TEST_CASE("projective space: extremal exactly when both curvatures are constant") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    int agree = 0;
    for (int i = 0; i < 20; ++i) {
        std::ostringstream a, b;
        a.precision(17);
        b.precision(17);
        const bool c1 = i % 2 == 0, c2 = i % 4 < 2 || i % 3 == 0;
        a << u(rng);
        if (!c1) a << " + " << u(rng) << "*sin(" << 1 + std::abs(u(rng)) << "*t)";
        b << u(rng);
        if (!c2) b << " + " << u(rng) << "*t^2";
        const auto r = projective_space_residuals(prof(a.str()), prof(b.str()), linspace(-1, 1, 40));
        INFO(a.str() << " / " << b.str());
        CHECK(r.curvatures_constant == (c1 && c2));
        CHECK(r.extremal == (c1 && c2));
        CHECK(r.reduction_holds);
        agree += r.reduction_holds;
    }
    CHECK(agree == 20);
}

TEST_CASE("equiaffine extremality") {
    const auto grid = linspace(-1, 1, 21);
    const auto cub = equiaffine_space_extremal_check(CurveSpec::from_strings({"t", "t^2/2", "t^3/6"}, -1, 1), grid);
    CHECK(cub.extremal);
    const auto hel = equiaffine_space_extremal_check(CurveSpec::from_strings({"t", "cos(t)", "sin(t)"}, -1, 1), grid);
    CHECK_FALSE(hel.extremal);
    CHECK(hel.ell.front() == Approx(1.0).epsilon(1e-8));
    const auto ex = equiaffine_space_extremal_check(
        CurveSpec::from_strings({"exp(t)", "t*exp(t)", "exp(-2*t)"}, -1, 1), grid);
    CHECK_FALSE(ex.extremal);
    CHECK(ex.ell.front() == Approx(-3 * std::pow(18.0, -1.0 / 3.0)).epsilon(1e-8));
    CHECK(std::abs(ex.m.front()) == Approx(2 / std::sqrt(18.0)).epsilon(1e-8));
}

TEST_CASE("equation ids round trip") {
    for (Equation e : {Equation::GaPlane, Equation::GaSpace2, Equation::ProjSpace1, Equation::EquiaffineSpace}) {
        Equation back{};
        REQUIRE(equation_from_id(equation_id(e), back));
        CHECK(back == e);
    }
    Equation tmp{};
    CHECK_FALSE(equation_from_id("nope", tmp));
}
