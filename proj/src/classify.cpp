#include "gaffine/classify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>

#include <Eigen/Eigenvalues>

#include "gaffine/catalog.hpp"
#include "gaffine/errors.hpp"
#include "gaffine/plane.hpp"
#include "gaffine/space.hpp"

namespace gaffine {

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kSqrt2 = std::sqrt(2.0);

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return v < 0 ? "(" + std::string(buf) + ")" : std::string(buf);
}

std::vector<std::complex<double>> poly_roots(const std::vector<double>& monic_tail) {
    // x^n + t[0] x^(n-1) + ... + t[n-1]
    const int n = static_cast<int>(monic_tail.size());
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j) C(0, j) = -monic_tail[j];
    for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
    if (es.info() != Eigen::Success) {
        const Eigen::JacobiSVD<Eigen::MatrixXd> svd(C);
        const auto sv = svd.singularValues();
        throw RootFinderError("companion eigenvalues failed (condition number " +
                              std::to_string(sv(0) / sv(n - 1)) + ")");
    }
    std::vector<std::complex<double>> out;
    for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()(i));
    return out;
}

std::vector<double> real_roots(const std::vector<std::complex<double>>& r, double tol) {
    std::vector<double> out;
    for (const auto& z : r)
        if (std::abs(z.imag()) <= tol) out.push_back(z.real());
    std::sort(out.begin(), out.end());
    return out;
}

Classification make(std::string family, std::vector<std::string> coords, double t0, double t1) {
    Classification c;
    c.family = std::move(family);
    c.coords = std::move(coords);
    c.t_min = t0;
    c.t_max = t1;
    return c;
}

}  // namespace

CurveSpec Classification::representative() const {
    CurveSpec s = CurveSpec::from_strings(coords, t_min, t_max);
    if (orientation < 0) s = reverse_orientation(s);
    return s;
}

std::string Classification::representative_expression() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords.size(); ++i) s += (i ? ", " : "") + coords[i];
    s += ")";
    if (orientation < 0) s += " with t -> -t";
    return s;
}

double power_curvature(double alpha) {
    return -2.0 * (alpha + 1.0) / std::sqrt(std::abs((2.0 * alpha - 1.0) * (alpha - 2.0)));
}

Classification classify_plane_constant(double k_in, int eps, const ClassifyOptions& opt) {
    if (!std::isfinite(k_in)) throw DomainError("curvature must be finite");
    if (eps != 1 && eps != -1) throw DomainError("eps must be +1 or -1");
    double k = k_in;
    int orientation = 1;
    if (k > opt.tol_k) {
        k = -k;
        orientation = -1;
    }
    Classification c;
    auto power = [&](double lo, double hi, double A, double B, double C) {
        const double disc = B * B - 4 * A * C;
        const double sq = std::sqrt(std::max(disc, 0.0));
        double alpha = std::numeric_limits<double>::quiet_NaN();
        for (double r : {(-B + sq) / (2 * A), (-B - sq) / (2 * A)})
            if (r > lo && r < hi) alpha = r;
        if (!std::isfinite(alpha)) throw RootFinderError("no power exponent in the expected interval");
        Classification p = make("power", {"t", "t^" + num(alpha)}, 0.5, 2.0);
        p.parameters["alpha"] = alpha;
        return p;
    };
    if (eps == 1) {
        if (std::abs(k) <= opt.tol_k) {
            c = make("ellipse", {"cos(t)", "sin(t)"}, 0.0, 2 * kPi);
        } else if (std::abs(k + 4.0) <= opt.tol_k) {
            c = make("tlogt", {"t", "t*log(t)"}, 0.2, 3.0);
        } else if (k > -4.0) {
            const double gamma = 3.0 * std::abs(k) / std::sqrt(16.0 - k * k);
            c = make("log-spiral", {"exp(" + num(gamma) + "*t)*cos(t)", "exp(" + num(gamma) + "*t)*sin(t)"}, 0.0,
                     2 * kPi);
            c.parameters["gamma"] = gamma;
            c.parameters["alpha"] = 1.0;
            c.notes.push_back("log spiral determined up to gamma/alpha; alpha fixed to 1");
        } else {
            const double k2 = k * k;
            c = power(0.5, 1.0, 2 * k2 + 4, 8 - 5 * k2, 4 + 2 * k2);
        }
    } else {
        if (std::abs(k) <= opt.tol_k) {
            c = make("hyperbola", {"cosh(t)", "sinh(t)"}, -2.0, 2.0);
        } else if (std::abs(k + kSqrt2) <= opt.tol_k) {
            c = make("exp", {"t", "exp(t)"}, -2.0, 2.0);
        } else {
            const double k2 = k * k;
            if (k < -kSqrt2)
                c = power(0.0, 0.5, 2 * k2 - 4, -(5 * k2 + 8), 2 * k2 - 4);
            else
                c = power(-1.0, 0.0, 2 * k2 - 4, -(5 * k2 + 8), 2 * k2 - 4);
        }
    }
    c.parameters["k"] = k;
    c.parameters["eps"] = eps;
    c.orientation = orientation;
    if (orientation < 0) c.notes.push_back("k > 0: orientation reversed, classified with k -> -k");
    return c;
}

Classification classify_space_ode(double a, double b, double c, const ClassifyOptions& opt) {
    const double s = std::max({std::abs(a), std::sqrt(std::abs(b)), std::cbrt(std::abs(c))});
    const double tol = opt.tol_root;
    auto P = [&](double x) { return x * x * x - a * x * x - b * x - c; };
    Classification out;
    auto set_roots = [&](const std::vector<double>& r) {
        for (std::size_t i = 0; i < r.size(); ++i) out.parameters["root" + std::to_string(i + 1)] = r[i];
    };
    if (s <= 1e-12) {
        out = make("row8", {"t", "t^2/2", "t^3/6"}, -1, 1);
        return out;
    }
    // Triple root r: a = 3r, b = -3r^2, c = r^3.
    const double rt = a / 3.0;
    if (std::abs(b + 3 * rt * rt) <= tol * s * s && std::abs(c - rt * rt * rt) <= tol * s * s * s) {
        if (std::abs(rt) <= tol * s) return make("row8", {"t", "t^2/2", "t^3/6"}, -1, 1);
        const std::string e = "exp(" + num(rt) + "*t)";
        out = make("row4", {e, "t*" + e, "t^2*" + e}, -1, 1);
        out.parameters["lambda"] = rt;
        set_roots({rt, rt, rt});
        return out;
    }
    // Double root: a real critical point of P where P vanishes.
    const double dq = a * a + 3 * b;
    if (dq > 0) {
        for (double r : {(a + std::sqrt(dq)) / 3.0, (a - std::sqrt(dq)) / 3.0}) {
            if (std::abs(P(r)) > tol * s * s * s) continue;
            const double rho = a - 2 * r;
            if (std::abs(r) <= tol * s) {
                out = make("row3", {"t", "t^2/2", "exp(" + num(rho) + "*t)"}, -1, 1);
                out.parameters["lambda"] = rho;
            } else if (std::abs(rho) <= tol * s) {
                const std::string e = "exp(" + num(r) + "*t)";
                out = make("mk", {"t", e, "t*" + e}, -1, 1);
                out.parameters["lambda"] = r;
            } else {
                const std::string e = "exp(" + num(r) + "*t)";
                out = make("row2", {e, "t*" + e, "exp(" + num(rho) + "*t)"}, -1, 1);
                out.parameters["lambda"] = rho / r;
                out.parameters["scale"] = r;
            }
            set_roots({r, r, rho});
            return out;
        }
    }
    const auto roots = poly_roots({-a, -b, -c});
    const auto re = real_roots(roots, 1e-7 * s);
    const bool zero_root = std::abs(c) <= tol * s * s * s;
    const bool a_zero = std::abs(a) <= tol * s;
    if (re.size() == 3) {
        set_roots(re);
        if (zero_root) {
            std::vector<double> nz;
            for (double r : re)
                if (std::abs(r) > std::sqrt(tol) * s) nz.push_back(r);
            if (nz.size() != 2) nz = {re.front(), re.back()};
            if (a_zero) {
                const double p = std::sqrt(std::max(b, 0.0));
                out = make("hyperbolic-helix", {"t", "cosh(" + num(p) + "*t)", "sinh(" + num(p) + "*t)"}, -1, 1);
                out.parameters["p"] = p;
            } else {
                out = make("row1", {"t", "exp(" + num(nz[0]) + "*t)", "exp(" + num(nz[1]) + "*t)"}, -1, 1);
                out.parameters["lambda"] = nz[0];
                out.parameters["mu"] = nz[1];
            }
        } else if (std::abs(c + a * b) <= tol * s * s * s && b > 0) {
            const double p = std::sqrt(b);
            out = make("row6", {"exp(" + num(a) + "*t)", "cosh(" + num(p) + "*t)", "sinh(" + num(p) + "*t)"}, -1, 1);
            out.parameters["lambda"] = a;
            out.parameters["p"] = p;
        } else {
            out = make("exp-triple",
                       {"exp(" + num(re[0]) + "*t)", "exp(" + num(re[1]) + "*t)", "exp(" + num(re[2]) + "*t)"}, -1, 1);
            out.parameters["lambda"] = re[0];
            out.parameters["mu"] = re[1];
            out.parameters["nu"] = re[2];
        }
        return out;
    }
    // One real root rho and a pair alpha +- i beta.
    double rho = 0.0, alpha = 0.0, beta = 0.0;
    for (const auto& z : roots) {
        if (std::abs(z.imag()) <= 1e-7 * s)
            rho = z.real();
        else {
            alpha = z.real();
            beta = std::abs(z.imag());
        }
    }
    out.parameters["rho"] = rho;
    out.parameters["alpha"] = alpha;
    out.parameters["beta"] = beta;
    if (zero_root) {
        if (a_zero) {
            out = make("circular-helix", {"t", "cos(" + num(beta) + "*t)", "sin(" + num(beta) + "*t)"}, -1, 1);
            out.parameters["p"] = beta;
        } else {
            const std::string e = "exp(" + num(alpha) + "*t)";
            out = make("row5", {"t", e + "*cos(" + num(beta) + "*t)", e + "*sin(" + num(beta) + "*t)"}, -1, 1);
            out.parameters["alpha"] = alpha;
            out.parameters["p"] = beta;
        }
        return out;
    }
    const std::string e = "exp(" + num(alpha) + "*t)";
    out = make(a_zero ? "space-log-spiral" : "row7",
               {"exp(" + num(rho) + "*t)", e + "*cos(" + num(beta) + "*t)", e + "*sin(" + num(beta) + "*t)"}, -1, 1);
    out.parameters["lambda"] = rho;
    out.parameters["mu"] = alpha;
    out.parameters["p"] = beta;
    return out;
}

Classification classify_space_constant(double k, double M, int eps, const ClassifyOptions& opt) {
    if (!std::isfinite(k) || !std::isfinite(M)) throw DomainError("curvatures must be finite");
    if (eps != 1 && eps != -1) throw DomainError("eps must be +1 or -1");
    const double a = -3.0 * k;
    const double b = -eps - 11.0 * a * a / 36.0;
    const double c = -M + eps * a / 6.0 + a * a * a / 36.0;
    Classification out = classify_space_ode(a, b, c, opt);
    out.parameters["a"] = a;
    out.parameters["b"] = b;
    out.parameters["c"] = c;
    return out;
}

Classification classify_projective_constant(double a, double b, double c, const ClassifyOptions& opt) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) throw DomainError("coefficients must be finite");
    const double tol = opt.tol_root;
    Classification out;
    if (std::max({std::abs(a), std::abs(b), std::abs(c)}) <= tol) {
        out = make("CV9", {"1", "t", "t^2", "t^3"}, -1, 1);
        return out;
    }
    const double s = std::max({std::sqrt(std::abs(a)), std::cbrt(std::abs(b)), std::pow(std::abs(c), 0.25)});
    const double s2 = s * s, s4 = s2 * s2;
    auto P = [&](double x) { return x * x * x * x - a * x * x - b * x - c; };
    auto ex = [](double v) { return "exp(" + num(v) + "*t)"; };

    // Triple root l: (l, l, l, -3l) gives a = 6l^2, b = -8l^3, c = 3l^4.
    const double l = std::cbrt(-b / 8.0);
    if (std::abs(a - 6 * l * l) <= tol * s2 && std::abs(c - 3 * l * l * l * l) <= tol * s4) {
        out = make("CV8", {ex(l), "t*" + ex(l), "t^2*" + ex(l), ex(-3 * l)}, -1, 1);
        out.parameters["lambda"] = l;
        return out;
    }
    // Two double roots: b = 0 and c = -a^2/4.
    if (std::abs(b) <= tol * s2 * s && std::abs(c + a * a / 4.0) <= tol * s4) {
        if (a > 0) {
            const double lam = std::sqrt(a / 2.0);
            out = make("CV6", {ex(lam), "t*" + ex(lam), ex(-lam), "t*" + ex(-lam)}, -1, 1);
            out.parameters["lambda"] = lam;
        } else {
            const double p = std::sqrt(-a / 2.0);
            const std::string cs = "cos(" + num(p) + "*t)", sn = "sin(" + num(p) + "*t)";
            out = make("CV7", {cs, sn, "t*" + cs, "t*" + sn}, -1, 1);
            out.parameters["p"] = p;
        }
        return out;
    }
    // One double real root r: a real critical point with P(r) = 0.
    const auto crit = real_roots(poly_roots({0.0, -a / 2.0, -b / 4.0}), 1e-7 * s);
    for (double r : crit) {
        if (std::abs(P(r)) > tol * s4) continue;
        // P = (x - r)^2 (x^2 + 2 r x + q)
        const double q = 3 * r * r - a;
        const double disc = r * r - q;
        if (disc > 0) {
            const double r1 = -r + std::sqrt(disc), r2 = -r - std::sqrt(disc);
            out = make("CV2", {ex(r), "t*" + ex(r), ex(r1), ex(r2)}, -1, 1);
            out.parameters["lambda"] = r1 / 2.0;
            out.parameters["mu"] = r2 / 2.0;
        } else {
            const double lam = -r, p = std::sqrt(-disc);
            const std::string e = ex(lam);
            out = make("CV5", {e + "*cos(" + num(p) + "*t)", e + "*sin(" + num(p) + "*t)", ex(-lam), "t*" + ex(-lam)},
                       -1, 1);
            out.parameters["lambda"] = lam;
            out.parameters["p"] = p;
        }
        return out;
    }
    const auto roots = poly_roots({0.0, -a, -b, -c});
    const auto re = real_roots(roots, 1e-7 * s);
    std::vector<std::complex<double>> cx;
    for (const auto& z : roots)
        if (std::abs(z.imag()) > 1e-7 * s && z.imag() > 0) cx.push_back(z);
    if (re.size() == 4) {
        out = make("CV1", {ex(re[0]), ex(re[1]), ex(re[2]), ex(re[3])}, -1, 1);
        out.parameters["lambda"] = re[1];
        out.parameters["mu"] = re[2];
        out.parameters["nu"] = re[3];
    } else if (re.size() == 2 && cx.size() == 1) {
        const std::string e = ex(cx[0].real());
        const double p = cx[0].imag();
        out = make("CV3", {ex(re[0]), ex(re[1]), e + "*cos(" + num(p) + "*t)", e + "*sin(" + num(p) + "*t)"}, -1, 1);
        out.parameters["lambda"] = re[0] / 2.0;
        out.parameters["mu"] = re[1] / 2.0;
        out.parameters["p"] = p;
    } else if (cx.size() == 2) {
        std::sort(cx.begin(), cx.end(), [](auto x, auto y) { return x.real() > y.real(); });
        const double lam = cx[0].real(), p = cx[0].imag(), q = cx[1].imag();
        out = make("CV4",
                   {ex(lam) + "*cos(" + num(p) + "*t)", ex(lam) + "*sin(" + num(p) + "*t)",
                    ex(-lam) + "*cos(" + num(q) + "*t)", ex(-lam) + "*sin(" + num(q) + "*t)"},
                   -1, 1);
        out.parameters["lambda"] = lam;
        out.parameters["p"] = p;
        out.parameters["q"] = q;
    } else {
        throw RootFinderError("unrecognized root pattern");
    }
    return out;
}

std::array<double, 3> projective_ode_coeffs(const CurveSpec& spec, double t) {
    if (spec.dimension != 4) throw DomainError("projective ODE coefficients need homogeneous coordinates");
    const auto P = projective_coeffs_from_homogeneous(eval_curve(spec, t, kDefaultJetOrder));
    return {-6.0 * P[0][0], -4.0 * P[1][0], -P[2][0]};
}

namespace {

using Roots = std::vector<std::complex<double>>;

double rel_err(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

std::vector<double> interior(double t0, double t1, int n) {
    std::vector<double> g;
    for (int i = 1; i <= n; ++i) g.push_back(t0 + (t1 - t0) * i / (n + 1.0));
    return g;
}

// (a, b, c) of x'''' = a x''' + b x'' + c x' with characteristic roots r.
std::array<double, 3> space_coeffs_from_roots(const Roots& r) {
    const auto e1 = r[0] + r[1] + r[2];
    const auto e2 = r[0] * r[1] + r[0] * r[2] + r[1] * r[2];
    const auto e3 = r[0] * r[1] * r[2];
    return {e1.real(), -e2.real(), e3.real()};
}

// (eps, k, M) from constant ODE coefficients at any scale of the parameter.
std::array<double, 3> space_invariants_from_coeffs(double a, double b, double c) {
    const double w = -b - 11.0 * a * a / 36.0;
    const double eps = w >= 0 ? 1.0 : -1.0;
    const double q = std::sqrt(std::abs(w));
    const double A = a / q;
    return {eps, -A / 3.0, -c / (q * q * q) + eps * A / 6.0 + A * A * A / 36.0};
}

Roots space_roots(const std::string& name, const std::map<std::string, double>& p) {
    using C = std::complex<double>;
    auto g = [&](const char* k) { return p.at(k); };
    if (name == "circular-helix" || name == "equiaffine-5") return {0.0, C(0, 1), C(0, -1)};
    if (name == "hyperbolic-helix" || name == "equiaffine-4") return {0.0, 1.0, -1.0};
    if (name == "space-log-spiral") return {-2 * g("lambda"), C(g("lambda"), g("p")), C(g("lambda"), -g("p"))};
    if (name == "equiaffine-3") return {-2 * g("alpha"), C(g("alpha"), g("beta")), C(g("alpha"), -g("beta"))};
    if (name == "exp-triple") return {g("lambda"), g("mu"), g("nu")};
    if (name == "equiaffine-1") return {g("lambda"), g("mu"), -(g("lambda") + g("mu"))};
    if (name == "equiaffine-2") return {g("lambda"), g("lambda"), -2 * g("lambda")};
    if (name == "mk") return {0.0, g("lambda"), g("lambda")};
    if (name == "space-row1") return {0.0, g("lambda"), g("mu")};
    if (name == "space-row2") return {1.0, 1.0, g("lambda")};
    if (name == "space-row3") return {0.0, 0.0, g("lambda")};
    if (name == "space-row4") return {1.0, 1.0, 1.0};
    if (name == "space-row5") return {0.0, C(1, g("p")), C(1, -g("p"))};
    if (name == "space-row6") return {g("lambda"), g("p"), -g("p")};
    if (name == "space-row7") return {g("lambda"), C(g("mu"), g("p")), C(g("mu"), -g("p"))};
    return {0.0, 0.0, 0.0};
}

std::array<double, 3> projective_oracle(const std::string& family, const std::map<std::string, double>& p) {
    auto g = [&](const char* k) { return p.count(k) ? p.at(k) : 0.0; };
    const double l = g("lambda"), m = g("mu"), n = g("nu"), P = g("p"), q = g("q");
    if (family == "CV1")
        return {l * l + l * m + l * n + m * m + m * n + n * n, -(m + n) * (n + l) * (l + m), l * m * n * (l + m + n)};
    if (family == "CV2")
        return {3 * l * l + 2 * l * m + 3 * m * m, 2 * (l + m) * (l - m) * (l - m), -4 * l * m * (l + m) * (l + m)};
    if (family == "CV3")
        return {3 * l * l + 2 * l * m + 3 * m * m - P * P, 2 * (l + m) * ((l - m) * (l - m) + P * P),
                -4 * l * m * ((l + m) * (l + m) + P * P)};
    if (family == "CV4")
        return {2 * l * l - q * q - P * P, -2 * l * (P - q) * (P + q), -(l * l + q * q) * (l * l + P * P)};
    if (family == "CV5") return {2 * l * l - P * P, -2 * P * P * l, -l * l * (l * l + P * P)};
    if (family == "CV6") return {2 * l * l, 0.0, -l * l * l * l};
    if (family == "CV7") return {-2 * P * P, 0.0, -P * P * P * P};
    if (family == "CV8") return {6 * l * l, -8 * l * l * l, 3 * l * l * l * l};
    return {0.0, 0.0, 0.0};
}

double plane_oracle_k(const CatalogEntry& e, int& eps) {
    const auto& p = e.defaults;
    eps = 1;
    if (e.family == "ellipse") return 0.0;
    if (e.family == "tlogt") return -4.0;
    eps = -1;
    if (e.family == "hyperbola") return 0.0;
    if (e.family == "exp") return -kSqrt2;
    if (e.family == "log-spiral") {
        const double g = p.at("gamma"), a = p.at("alpha");
        eps = 1;
        return -4.0 * g / std::sqrt(g * g + 9 * a * a);
    }
    const double a = p.at("alpha");
    eps = (2 * a - 1) * (a - 2) < 0 ? 1 : -1;
    return power_curvature(a);
}

constexpr double kCatalogTol = 1e-7;
constexpr double kProjectiveTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_plane(const CatalogEntry& e, CatalogCheck& c) {
    const CurveSpec spec = CurveSpec::builtin(e.name);
    int eps_want = 0;
    const double k_want = plane_oracle_k(e, eps_want);
    c.expected = {double(eps_want), k_want};
    for (double t : interior(e.t_min, e.t_max, 5)) {
        const auto r = plane_invariants_at(spec, t);
        if (!r.k) throw DomainError("no curvature at t = " + std::to_string(t));
        if (c.signature.empty()) c.signature = {double(r.eps), *r.k};
        if (r.eps != eps_want) c.max_error = kInf;
        c.max_error = std::max(c.max_error, rel_err(*r.k, k_want));
    }
    const auto cl = classify_plane_constant(c.signature[1], int(c.signature[0]));
    c.classified_family = cl.family;
    const CurveSpec rep = cl.representative();
    for (double t : interior(rep.t_min, rep.t_max, 3)) {
        const auto r = plane_invariants_at(rep, t);
        if (!r.k || r.eps != int(c.signature[0])) {
            c.detail = "representative has a different eps";
            c.max_error = kInf;
            return;
        }
        c.max_error = std::max(c.max_error, rel_err(*r.k, c.signature[1]));
    }
}

void check_space(const CatalogEntry& e, CatalogCheck& c) {
    const CurveSpec spec = CurveSpec::builtin(e.name);
    const auto want = space_coeffs_from_roots(space_roots(e.name, e.defaults));
    const bool cubic = e.family == "row8";
    std::array<double, 3> abc{};
    for (double t : interior(e.t_min, e.t_max, 5)) {
        const auto co = space_ode_coeffs(spec, t);
        abc = {co[0][0], co[1][0], co[2][0]};
        for (int i = 0; i < 3; ++i) c.max_error = std::max(c.max_error, rel_err(abc[i], want[i]));
        if (cubic) {
            const auto eq = equiaffine_space_invariants(spec, t, EquiaffineMode::RequireParameter);
            c.max_error = std::max({c.max_error, std::abs(eq.ell), std::abs(eq.m)});
            continue;
        }
        const auto r = space_invariants_at(spec, t);
        const auto inv = space_invariants_from_coeffs(want[0], want[1], want[2]);
        if (r.eps != int(inv[0]) || !r.k || !r.M)
            c.max_error = kInf;
        else
            c.max_error = std::max({c.max_error, rel_err(*r.k, inv[1]), rel_err(*r.M, inv[2])});
        c.signature = {double(r.eps), r.k.value_or(0.0), r.M.value_or(0.0)};
        c.expected = {inv[0], inv[1], inv[2]};
        if (e.name.rfind("equiaffine-", 0) == 0) {
            const auto eq = equiaffine_space_invariants(spec, t, EquiaffineMode::RequireParameter);
            const int idx = e.name.back() - '0';
            const double ell_want = idx == 4 ? -1.0 : idx == 5 ? 1.0 : eq.ell;
            c.max_error = std::max(c.max_error, std::abs(eq.ell - ell_want));
            if (idx >= 4)
                c.max_error = std::max(c.max_error, std::abs(eq.m));
            else if (std::abs(eq.m) < kCatalogTol)
                c.detail = "expected m != 0";
        }
    }
    if (cubic) {
        c.signature = {abc[0], abc[1], abc[2]};
        c.expected = {want[0], want[1], want[2]};
    }
    const auto cl = classify_space_ode(abc[0], abc[1], abc[2]);
    c.classified_family = cl.family;
    const CurveSpec rep = cl.representative();
    for (double t : interior(rep.t_min, rep.t_max, 3)) {
        const auto co = space_ode_coeffs(rep, t);
        for (int i = 0; i < 3; ++i) c.max_error = std::max(c.max_error, rel_err(co[i][0], abc[i]));
    }
}

void check_projective(const CatalogEntry& e, CatalogCheck& c) {
    const CurveSpec spec = CurveSpec::builtin(e.name);
    const auto want = projective_oracle(e.family, e.defaults);
    std::array<double, 3> abc{};
    for (double t : interior(e.t_min, e.t_max, 3)) {
        abc = projective_ode_coeffs(spec, t);
        for (int i = 0; i < 3; ++i) c.max_error = std::max(c.max_error, rel_err(abc[i], want[i]));
    }
    c.signature = {abc[0], abc[1], abc[2]};
    c.expected = {want[0], want[1], want[2]};
    const auto cl = classify_projective_constant(abc[0], abc[1], abc[2]);
    c.classified_family = cl.family;
    const CurveSpec rep = cl.representative();
    for (double t : interior(rep.t_min, rep.t_max, 3)) {
        const auto co = projective_ode_coeffs(rep, t);
        for (int i = 0; i < 3; ++i) c.max_error = std::max(c.max_error, rel_err(co[i], abc[i]));
    }
}

}  // namespace

CatalogReport verify_catalog() {
    CatalogReport rep;
    rep.all_passed = true;
    for (const CatalogEntry& e : catalog()) {
        if (e.family.empty()) continue;
        CatalogCheck c;
        c.name = e.name;
        c.expected_family = e.family;
        try {
            switch (e.kind) {
                case CatalogKind::Plane: check_plane(e, c); break;
                case CatalogKind::Space: check_space(e, c); break;
                case CatalogKind::Projective: check_projective(e, c); break;
            }
            if (c.classified_family != c.expected_family && c.detail.empty())
                c.detail = "classified as " + c.classified_family;
            c.passed = c.detail.empty() &&
                       c.max_error <= (e.kind == CatalogKind::Projective ? kProjectiveTol : kCatalogTol);
        } catch (const Error& ex) {
            c.passed = false;
            c.detail = ex.what();
        }
        rep.all_passed = rep.all_passed && c.passed;
        rep.checks.push_back(std::move(c));
    }
    return rep;
}

}  // namespace gaffine
