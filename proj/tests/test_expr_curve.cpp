#include <cmath>

#include "doctest.h"

#include "gaffine/catalog.hpp"
#include "gaffine/curve.hpp"
#include "gaffine/errors.hpp"
#include "gaffine/expr.hpp"
#include "gaffine/numeric.hpp"
#include "gaffine/profile.hpp"

using namespace gaffine;
using doctest::Approx;

TEST_CASE("operator precedence and associativity") {
    CHECK(parse_expression("2^3^2").eval(0.0) == Approx(512.0));
    CHECK(parse_expression("-2^2").eval(0.0) == Approx(-4.0));
    CHECK(parse_expression("1 - 2 - 3").eval(0.0) == Approx(-4.0));
    CHECK(parse_expression("8 / 4 / 2").eval(0.0) == Approx(1.0));
    CHECK(parse_expression("2*t^2 + 1").eval(3.0) == Approx(19.0));
    CHECK(parse_expression("pi").eval(0.0) == Approx(M_PI));
    CHECK(parse_expression("e^t").eval(1.0) == Approx(std::exp(1.0)));
}

TEST_CASE("functions and parameters") {
    const Expr e = parse_expression("a*exp(b*t) + sqrt(abs(t)) + atan(t)");
    const std::map<std::string, double> p{{"a", 2.0}, {"b", -0.5}};
    CHECK(e.eval(0.8, p) == Approx(2 * std::exp(-0.4) + std::sqrt(0.8) + std::atan(0.8)));
    CHECK(e.symbols() == std::set<std::string>{"a", "b", "t"});
    CHECK_THROWS_AS(e.eval(0.8), DomainError);
}

TEST_CASE("parse errors carry a position") {
    try {
        parse_expression("1 + * 2");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 4);
    }
    CHECK_THROWS_AS(parse_expression("sin(t"), ParseError);
    CHECK_THROWS_AS(parse_expression("foo(t)"), ParseError);
    CHECK_THROWS_AS(parse_expression(""), ParseError);
}

TEST_CASE("round trip through to_string") {
    for (const char* src : {"-(t + 1)^2 / 3", "sin(2*t)*cos(t) - t^-1", "exp(-t^2)"}) {
        const Expr a = parse_expression(src);
        const Expr b = parse_expression(a.to_string());
        for (double t : {0.3, 1.1, 2.7}) CHECK(b.eval(t) == Approx(a.eval(t)));
    }
}

TEST_CASE("vector expressions split at top-level commas") {
    const auto v = parse_vector_expression("(1+cos(2*t), sin(2*t), 2*sin(t))");
    REQUIRE(v.size() == 3);
    CHECK(v[2].eval(0.5) == Approx(2 * std::sin(0.5)));
    CHECK(parse_vector_expression("t^2").size() == 1);
}

TEST_CASE("expression curves give exact derivative jets") {
    const CurveSpec c = CurveSpec::from_strings({"cos(t)", "t*exp(t)"}, 0, 1);
    const auto j = eval_curve(c, 0.4, 6);
    REQUIRE(j.size() == 2);
    CHECK(j[0].derivative(3) == Approx(std::sin(0.4)));
    // (t e^t)^(n) = (t + n) e^t
    CHECK(j[1].derivative(5) == Approx((0.4 + 5) * std::exp(0.4)));
}

TEST_CASE("builtin curves use catalog defaults and overrides") {
    const CurveSpec c = CurveSpec::builtin("ellipse", {{"a", 3.0}});
    CHECK(c.dimension == 2);
    CHECK(c.t_max == Approx(2 * M_PI));
    const auto j = eval_curve(c, 0.0, 2);
    CHECK(j[0][0] == Approx(3.0));
    CHECK(j[1][1] == Approx(1.0));
    CHECK_FALSE(has_catalog_entry("no-such-curve"));
    CHECK(catalog_entry("cv8").kind == CatalogKind::Projective);
    CHECK(CurveSpec::builtin("cv1").dimension == 4);
}

TEST_CASE("reversed orientation reflects the parameter") {
    const CurveSpec c = CurveSpec::from_strings({"t", "t^3"}, 0.5, 2);
    const CurveSpec r = reverse_orientation(c);
    const auto a = eval_curve(c, 1.2, 3);
    const auto b = eval_curve(r, -1.2, 3);
    CHECK(b[1][0] == Approx(a[1][0]));
    CHECK(b[1].derivative(1) == Approx(-a[1].derivative(1)));
    CHECK(b[1].derivative(2) == Approx(a[1].derivative(2)));
}

TEST_CASE("sampled curves") {
    SampledCurve s;
    s.t = linspace(0, 1, 101);
    s.coords.assign(2, {});
    for (double t : s.t) {
        s.coords[0].push_back(std::cos(t));
        s.coords[1].push_back(std::sin(t));
    }
    const CurveSpec c = CurveSpec::from_samples(s);
    const auto j = eval_curve(c, 0.5, 4);
    CHECK(j[0].derivative(1) == Approx(-std::sin(0.5)).epsilon(1e-8));
    CHECK(j[1].derivative(2) == Approx(-std::sin(0.5)).epsilon(1e-6));
    CHECK_THROWS(eval_curve(c, 0.5, kMaxSampledOrder + 1));
    CHECK_THROWS_AS(eval_curve(c, 1.5, 2), OutOfIntervalError);

    SampledCurve bad = s;
    bad.t[3] = bad.t[2];
    CHECK_THROWS(CurveSpec::from_samples(bad));
}

TEST_CASE("scalar profiles") {
    const ScalarProfile k = ScalarProfile::parse("3*sqrt(2)*tanh(sqrt(2)*t)");
    CHECK(k(0.3) == Approx(3 * std::sqrt(2.0) * std::tanh(std::sqrt(2.0) * 0.3)));
    CHECK(k.jet(0.3, 4).order() == 4);
    CHECK_THROWS_AS(ScalarProfile::parse("a*t"), DomainError);
    CHECK(ScalarProfile::constant(2.5)(10.0) == 2.5);

    const auto g = linspace(0, 2, 201);
    std::vector<double> v;
    for (double t : g) v.push_back(std::exp(t));
    const ScalarProfile s = ScalarProfile::from_samples(g, v);
    CHECK(s.is_sampled());
    CHECK(s.jet(1.0, 3).derivative(3) == Approx(std::exp(1.0)).epsilon(1e-5));
    CHECK(s.jet(0.0, 2).derivative(1) == Approx(1.0).epsilon(1e-7));
    CHECK_THROWS(ScalarProfile::from_samples({0, 1, 2}, {0, 1, 2}));
}
