#include "gaffine/catalog.hpp"

#include <numbers>

#include "gaffine/errors.hpp"

namespace gaffine {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<CatalogEntry> build() {
    using K = CatalogKind;
    return {
        // Plane curves.
        {"ellipse", K::Plane, "ellipse", {"a*cos(t)", "b*sin(t)"}, {{"a", 2}, {"b", 1}}, 0, 2 * kPi,
         "conic, k = 0, eps = +1"},
        {"hyperbola", K::Plane, "hyperbola", {"a*cosh(t)", "b*sinh(t)"}, {{"a", 1}, {"b", 1}}, -2, 2,
         "conic, k = 0, eps = -1"},
        {"log-spiral", K::Plane, "log-spiral", {"exp(gamma*t)*cos(alpha*t)", "exp(gamma*t)*sin(alpha*t)"},
         {{"gamma", 1}, {"alpha", 1}}, 0, 2 * kPi, "k = -4 gamma / sqrt(gamma^2 + 9 alpha^2)"},
        {"catenary", K::Plane, "", {"t", "cosh(t)"}, {}, -2, 2, "L changes sign at cosh^2 t = 5/2"},
        {"rose", K::Plane, "", {"cos(n*t)*cos(t)", "cos(n*t)*sin(t)"}, {{"n", 1.0 / 3.0}}, 0, 3 * kPi,
         "closed, two flat points and two vertices"},
        {"parabola", K::Plane, "", {"t", "c*t^2"}, {{"c", 0.5}}, -2, 2, "L vanishes identically"},
        {"graph-ellipse", K::Plane, "ellipse", {"t", "-sqrt(r^2 - t^2)"}, {{"r", 2}}, -1.5, 1.5, "k = 0, eps = +1"},
        {"graph-hyperbola", K::Plane, "hyperbola", {"t", "sqrt(r^2 + t^2)"}, {{"r", 1}}, -2, 2, "k = 0, eps = -1"},
        {"exp-graph", K::Plane, "exp", {"t", "exp(t)"}, {}, -2, 2, "k = -sqrt(2), eps = -1"},
        {"tlogt", K::Plane, "tlogt", {"t", "t*log(t)"}, {}, 0.2, 3, "k = -4, eps = +1"},
        {"power", K::Plane, "power", {"t", "t^alpha"}, {{"alpha", 3}}, 0.5, 2,
         "k = -2(alpha+1)/sqrt|(2 alpha-1)(alpha-2)|"},
        {"power-elliptic", K::Plane, "power", {"t", "t^alpha"}, {{"alpha", 0.75}}, 0.5, 2, "eps = +1, k < -4"},
        {"power-hyperbolic", K::Plane, "power", {"t", "t^alpha"}, {{"alpha", 0.25}}, 0.5, 2,
         "eps = -1, k < -sqrt(2)"},
        {"power-negative", K::Plane, "power", {"t", "t^alpha"}, {{"alpha", -0.5}}, 0.5, 2,
         "eps = -1, -sqrt(2) < k < 0"},

        // Space curves.
        {"circular-helix", K::Space, "circular-helix", {"t", "cos(t)", "sin(t)"}, {}, 0, 2 * kPi, "k = M = 0, eps = +1"},
        {"hyperbolic-helix", K::Space, "hyperbolic-helix", {"t", "cosh(t)", "sinh(t)"}, {}, -2, 2,
         "k = M = 0, eps = -1"},
        {"space-log-spiral", K::Space, "space-log-spiral",
         {"exp(-2*lambda*t)", "exp(lambda*t)*cos(p*t)", "exp(lambda*t)*sin(p*t)"}, {{"lambda", 0.5}, {"p", 1}}, -2,
         2, "k = 0, M = 2 lambda (p^2 + lambda^2) |3 lambda^2 - p^2|^(-3/2)"},
        {"exp-triple", K::Space, "exp-triple", {"exp(lambda*t)", "exp(mu*t)", "exp(nu*t)"},
         {{"lambda", 1}, {"mu", 0.5}, {"nu", -0.8}}, -1, 1, "three distinct exponents"},
        {"mk", K::Space, "mk", {"t", "exp(lambda*t)", "t*exp(lambda*t)"}, {{"lambda", 1}}, -1, 1,
         "k = -sqrt(2), M = sqrt(2), eps = -1 for lambda > 0"},
        {"viviani", K::Space, "", {"1 + cos(2*t)", "sin(2*t)", "2*sin(t)"}, {}, 0, 2 * kPi,
         "degenerate at cos t = 0, inflections at cos^2 t = 7/31"},
        {"torus-knot", K::Space, "", {"(4 + cos(3*t))*cos(t)", "(4 + cos(3*t))*sin(t)", "sin(3*t)"}, {}, 0, 2 * kPi,
         "k has period 2 pi/3"},
        {"space-row1", K::Space, "row1", {"t", "exp(lambda*t)", "exp(mu*t)"}, {{"lambda", 1}, {"mu", -0.5}}, -1, 1,
         "roots 0, lambda, mu"},
        {"space-row2", K::Space, "row2", {"exp(t)", "t*exp(t)", "exp(lambda*t)"}, {{"lambda", -1}}, -1, 1,
         "roots 1, 1, lambda"},
        {"space-row3", K::Space, "row3", {"t", "t^2/2", "exp(lambda*t)"}, {{"lambda", 1}}, -1, 1, "roots 0, 0, lambda"},
        {"space-row4", K::Space, "row4", {"exp(t)", "t*exp(t)", "t^2*exp(t)"}, {}, -1, 1, "triple root 1"},
        {"space-row5", K::Space, "row5", {"t", "exp(t)*cos(p*t)", "exp(t)*sin(p*t)"}, {{"p", 2}}, -1, 1,
         "roots 0, 1 +- ip"},
        {"space-row6", K::Space, "row6", {"exp(lambda*t)", "cosh(p*t)", "sinh(p*t)"}, {{"lambda", 1}, {"p", 2}}, -1, 1,
         "roots lambda, +-p"},
        {"space-row7", K::Space, "row7", {"exp(lambda*t)", "exp(mu*t)*cos(p*t)", "exp(mu*t)*sin(p*t)"},
         {{"lambda", 1}, {"mu", 0.3}, {"p", 1.5}}, -1, 1, "roots lambda, mu +- ip"},
        {"cubic-parabola", K::Space, "row8", {"t", "t^2/2", "t^3/6"}, {}, -1, 1, "ell = m = 0"},
        {"equiaffine-1", K::Space, "exp-triple", {"exp(lambda*t)", "exp(mu*t)", "exp(-(lambda + mu)*t)"},
         {{"lambda", 1}, {"mu", 0.5}}, -1, 1, "a = 0, m != 0"},
        {"equiaffine-2", K::Space, "row2", {"t*exp(lambda*t)", "exp(lambda*t)", "exp(-2*lambda*t)"}, {{"lambda", 1}},
         -1, 1, "a = 0, m != 0"},
        {"equiaffine-3", K::Space, "space-log-spiral",
         {"exp(-2*alpha*t)", "exp(alpha*t)*cos(beta*t)", "exp(alpha*t)*sin(beta*t)"}, {{"alpha", 0.5}, {"beta", 1}},
         -1, 1, "a = 0, m != 0"},
        {"equiaffine-4", K::Space, "hyperbolic-helix", {"t", "cosh(t)", "sinh(t)"}, {}, -1, 1, "ell = -1, m = 0"},
        {"equiaffine-5", K::Space, "circular-helix", {"t", "cos(t)", "sin(t)"}, {}, -1, 1, "ell = 1, m = 0"},
        {"equiaffine-6", K::Space, "row8", {"t", "t^2/2", "t^3/6"}, {}, -1, 1, "ell = 0, m = 0"},

        // Projective space curves in homogeneous coordinates.
        {"cv1", K::Projective, "CV1", {"exp(-(lambda + mu + nu)*t)", "exp(lambda*t)", "exp(mu*t)", "exp(nu*t)"},
         {{"lambda", 1}, {"mu", 0.5}, {"nu", -0.3}}, -1, 1, "four distinct real roots"},
        {"cv2", K::Projective, "CV2",
         {"exp(-(lambda + mu)*t)", "t*exp(-(lambda + mu)*t)", "exp(2*lambda*t)", "exp(2*mu*t)"},
         {{"lambda", 1}, {"mu", -0.25}}, -1, 1, "one double real root"},
        {"cv3", K::Projective, "CV3",
         {"exp(2*lambda*t)", "exp(2*mu*t)", "exp(-(lambda + mu)*t)*cos(p*t)", "exp(-(lambda + mu)*t)*sin(p*t)"},
         {{"lambda", 1}, {"mu", -0.25}, {"p", 1}}, -1, 1, "one complex pair"},
        {"cv4", K::Projective, "CV4",
         {"exp(lambda*t)*cos(p*t)", "exp(lambda*t)*sin(p*t)", "exp(-lambda*t)*cos(q*t)", "exp(-lambda*t)*sin(q*t)"},
         {{"lambda", 0.5}, {"p", 1}, {"q", 2}}, -1, 1, "two complex pairs"},
        {"cv5", K::Projective, "CV5",
         {"exp(lambda*t)*cos(p*t)", "exp(lambda*t)*sin(p*t)", "exp(-lambda*t)", "t*exp(-lambda*t)"},
         {{"lambda", 0.5}, {"p", 1}}, -1, 1, "complex pair and double real root"},
        {"cv6", K::Projective, "CV6", {"exp(lambda*t)", "t*exp(lambda*t)", "exp(-lambda*t)", "t*exp(-lambda*t)"},
         {{"lambda", 1}}, -1, 1, "two double roots"},
        {"cv7", K::Projective, "CV7", {"cos(p*t)", "sin(p*t)", "t*cos(p*t)", "t*sin(p*t)"}, {{"p", 1}}, -1, 1,
         "double imaginary pair"},
        {"cv8", K::Projective, "CV8", {"exp(lambda*t)", "t*exp(lambda*t)", "t^2*exp(lambda*t)", "exp(-3*lambda*t)"},
         {{"lambda", 1}}, -1, 1, "triple root"},
        {"cv9", K::Projective, "CV9", {"1", "t", "t^2", "t^3"}, {}, -1, 1, "all roots zero"},
    };
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = build();
    return entries;
}

bool has_catalog_entry(const std::string& name) {
    for (const auto& e : catalog())
        if (e.name == name) return true;
    return false;
}

const CatalogEntry& catalog_entry(const std::string& name) {
    for (const auto& e : catalog())
        if (e.name == name) return e;
    throw DomainError("unknown builtin curve '" + name + "'");
}

}  // namespace gaffine
