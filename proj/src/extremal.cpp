#include "gaffine/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <cctype>
#include <functional>
#include <limits>

#include "gaffine/errors.hpp"
#include "gaffine/space.hpp"

namespace gaffine {

namespace {

struct IdName {
    Equation eq;
    const char* id;
};

constexpr IdName kIds[] = {
    {Equation::GaPlane, "GA_PLANE"},         {Equation::GaPlaneGeneral, "GA_PLANE_GENERAL"},
    {Equation::GaSpace1, "GA_SPACE_1"},      {Equation::GaSpace2, "GA_SPACE_2"},
    {Equation::EquiaffineSpace, "EQUIAFFINE_SPACE"}, {Equation::ProjPlane, "PROJ_PLANE"},
    {Equation::ProjSpace1, "PROJ_SPACE_1"},  {Equation::ProjSpace2, "PROJ_SPACE_2"},
};

using Pointwise = std::function<double(double)>;

// Evaluates `fn` on the grid, dropping points where any profile in `poles`
// exceeds the threshold or cannot be evaluated.
ResidualReport evaluate(Equation eq, const std::vector<double>& grid, const std::vector<const ScalarProfile*>& poles,
                        const Pointwise& fn, const ExtremalOptions& opt) {
    if (grid.empty()) throw DomainError("empty residual grid");
    ResidualReport r;
    r.equation = eq;
    double sup_k = 0.0;
    for (double t : grid) {
        bool keep = true;
        double local = 0.0;
        for (const ScalarProfile* p : poles) {
            try {
                const double v = std::abs((*p)(t));
                if (!std::isfinite(v) || v > opt.pole_threshold) keep = false;
                local = std::max(local, v);
            } catch (const DomainError&) {
                keep = false;
            } catch (const SingularPointError&) {
                keep = false;
            }
        }
        if (!keep) {
            r.excluded.push_back(t);
            continue;
        }
        double res;
        try {
            res = fn(t);
        } catch (const DomainError&) {
            r.excluded.push_back(t);
            continue;
        } catch (const SingularPointError&) {
            r.excluded.push_back(t);
            continue;
        }
        sup_k = std::max(sup_k, local);
        r.t.push_back(t);
        r.residual.push_back(res);
    }
    double sq = 0.0;
    for (double v : r.residual) {
        r.sup = std::max(r.sup, std::abs(v));
        sq += v * v;
        if (!std::isfinite(v)) r.sup = std::numeric_limits<double>::infinity();
    }
    if (!r.residual.empty()) {
        const double len = r.t.size() > 1 ? r.t.back() - r.t.front() : 1.0;
        r.l2 = std::sqrt(sq / static_cast<double>(r.residual.size()) * len);
    }
    r.tolerance = opt.tolerance ? *opt.tolerance : 1e-7 * std::pow(1.0 + sup_k, 3);
    r.verdict = !r.residual.empty() && r.sup <= r.tolerance;
    return r;
}

double d(const Jet& j, int n) {
    if (j.order() < n) throw SmoothnessError("profile jet of order " + std::to_string(j.order()) +
                                             " cannot supply derivative " + std::to_string(n));
    return j.derivative(n);
}

}  // namespace

const char* equation_id(Equation eq) {
    for (const auto& e : kIds)
        if (e.eq == eq) return e.id;
    return "UNKNOWN";
}

bool equation_from_id(const std::string& id, Equation& out) {
    std::string norm = id;
    for (char& c : norm) c = c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    for (const auto& e : kIds)
        if (norm == e.id) {
            out = e.eq;
            return true;
        }
    return false;
}

CurvatureFunctional CurvatureFunctional::parse(const std::string& src, std::map<std::string, double> params) {
    CurvatureFunctional f;
    f.f = parse_expression(src);
    f.params = std::move(params);
    for (const auto& s : f.f.symbols())
        if (s != "k" && !f.params.count(s)) throw DomainError("unbound symbol '" + s + "' in functional");
    return f;
}

Jet CurvatureFunctional::taylor(double k0, int order) const {
    return f.eval(jet_variable(k0, std::max(order, 1)), params, "k").truncated(order);
}

Jet assemble_G(const Jet& k, int eps, const CurvatureFunctional& f) {
    const int order = k.order() - 3;
    if (order < 0) throw SmoothnessError("G needs k''' (jet of order >= 3)");
    const Jet c = f.taylor(k[0], order + 4);
    // f^(j)(k(t)) as a jet in t.
    auto fj = [&](int j) {
        std::vector<double> outer(order + 1);
        for (int m = 0; m <= order; ++m) {
            double ratio = 1.0;  // (j+m)!/m!
            for (int q = m + 1; q <= j + m; ++q) ratio *= q;
            outer[m] = c[j + m] * ratio;
        }
        return compose(outer, k.truncated(order));
    };
    const Jet k1 = k.differentiate(), k2 = k1.differentiate(), k3 = k2.differentiate();
    const Jet kk = k.truncated(order);
    const Jet a1 = k1.truncated(order), a2 = k2.truncated(order), a3 = k3.truncated(order);
    const double e = eps;
    return 4.0 * fj(4) * pow_int(a1, 3) + 12.0 * fj(3) * a1 * a2 +
           fj(2) * (4.0 * a3 - a1 * kk * kk + 16.0 * e * a1) - fj(1) * kk * a1 + fj(0) * a1;
}

double ga_plane_residual_at(const Jet& k, int eps) {
    const double k0 = k[0], k1 = d(k, 1), k2 = d(k, 2), k3 = d(k, 3);
    return k3 + 1.5 * k0 * k2 + 0.5 * k1 * k1 + 0.5 * k0 * k0 * k1 + eps * k1;
}

double ga_plane_general_residual_at(const Jet& k, int eps, const CurvatureFunctional& f) {
    if (k.order() < 5) throw SmoothnessError("generalized residual needs k up to the fifth derivative");
    const Jet G = assemble_G(k, eps, f);
    const double g0 = G[0], g1 = G.derivative(1), g2 = G.derivative(2);
    const double k0 = k[0], k1 = k.derivative(1);
    return g2 + 1.5 * g1 * k0 + 0.5 * g0 * k1 + 0.5 * g0 * k0 * k0 + eps * g0;
}

std::pair<double, double> ga_space_residuals_at(const Jet& k, const Jet& M, int eps) {
    const double k0 = k[0], k1 = d(k, 1), k2 = d(k, 2), k3 = d(k, 3);
    const double M0 = M[0], M1 = d(M, 1), M2 = d(M, 2);
    const double e = eps;
    const double r1 = k3 + 1.5 * k0 * k2 + 0.5 * k1 * k1 + 0.5 * k0 * k0 * k1 - 0.2 * e * k1 + 1.2 * M1;
    const double r2 = k2 + (2.0 / 3.0) * k1 * k0 + (5.0 / 6.0) * e * k1 * M0 - 1.5 * e * k0 * M1 - e * M2;
    return {r1, r2};
}

ResidualReport ga_plane_residual(const ScalarProfile& k, int eps, const std::vector<double>& grid,
                                 const ExtremalOptions& opt) {
    return evaluate(
        Equation::GaPlane, grid, {&k}, [&](double t) { return ga_plane_residual_at(k.jet(t, 3), eps); }, opt);
}

ResidualReport ga_plane_general_residual(const ScalarProfile& k, int eps, const CurvatureFunctional& f,
                                         const std::vector<double>& grid, const ExtremalOptions& opt) {
    return evaluate(
        Equation::GaPlaneGeneral, grid, {&k},
        [&](double t) { return ga_plane_general_residual_at(k.jet(t, 5), eps, f); }, opt);
}

std::pair<ResidualReport, ResidualReport> ga_space_residuals(const ScalarProfile& k, const ScalarProfile& M, int eps,
                                                             const std::vector<double>& grid,
                                                             const ExtremalOptions& opt) {
    auto r1 = evaluate(
        Equation::GaSpace1, grid, {&k, &M},
        [&](double t) { return ga_space_residuals_at(k.jet(t, 3), M.jet(t, 2), eps).first; }, opt);
    auto r2 = evaluate(
        Equation::GaSpace2, grid, {&k, &M},
        [&](double t) { return ga_space_residuals_at(k.jet(t, 3), M.jet(t, 2), eps).second; }, opt);
    return {r1, r2};
}

LinearComplexReport linear_complex_extremal_check(const ScalarProfile& k, int eps, const std::vector<double>& grid,
                                                  const ExtremalOptions& opt) {
    LinearComplexReport rep;
    rep.plane = ga_plane_residual(k, eps, grid, opt);
    const double e = eps;
    auto space = [&](double t) {
        const Jet kj = k.jet(t, 3);
        return ga_space_residuals_at(kj, e * kj, eps);
    };
    rep.space1 = evaluate(Equation::GaSpace1, grid, {&k}, [&](double t) { return space(t).first; }, opt);
    rep.space2 = evaluate(Equation::GaSpace2, grid, {&k}, [&](double t) { return space(t).second; }, opt);
    for (std::size_t i = 0; i < rep.plane.residual.size() && i < rep.space1.residual.size(); ++i)
        rep.identity_gap = std::max(rep.identity_gap, std::abs(rep.space1.residual[i] - rep.plane.residual[i]));
    const double tol = rep.plane.tolerance;
    rep.consistent = rep.identity_gap <= tol && rep.space2.sup <= tol;
    return rep;
}

EquiaffineExtremalReport equiaffine_space_extremal_check(const CurveSpec& spec, const std::vector<double>& grid,
                                                         double tolerance) {
    EquiaffineExtremalReport r;
    r.tolerance = tolerance;
    for (double t : grid) {
        const auto q = equiaffine_space_invariants(spec, t, EquiaffineMode::AutoReparametrize);
        r.t.push_back(t);
        r.ell.push_back(q.ell);
        r.m.push_back(q.m);
        r.sup_ell = std::max(r.sup_ell, std::abs(q.ell));
        r.sup_m = std::max(r.sup_m, std::abs(q.m));
    }
    r.extremal = !grid.empty() && r.sup_ell + r.sup_m <= tolerance;
    return r;
}

ResidualReport projective_plane_residual(const ScalarProfile& k, const std::vector<double>& grid,
                                         const ExtremalOptions& opt) {
    return evaluate(
        Equation::ProjPlane, grid, {&k},
        [&](double t) {
            const Jet j = k.jet(t, 3);
            return d(j, 3) + 8.0 * j[0] * d(j, 1);
        },
        opt);
}

ProjectiveSpaceReport projective_space_residuals(const ScalarProfile& k1, const ScalarProfile& k2,
                                                 const std::vector<double>& grid, const ExtremalOptions& opt) {
    ProjectiveSpaceReport rep;
    rep.r1 = evaluate(
        Equation::ProjSpace1, grid, {&k1, &k2},
        [&](double t) {
            const Jet a = k1.jet(t, 3), b = k2.jet(t, 1);
            return d(a, 3) + 16.0 * a[0] * d(a, 1) - 0.5 * d(b, 1);
        },
        opt);
    rep.r2 = evaluate(
        Equation::ProjSpace2, grid, {&k1, &k2},
        [&](double t) {
            const Jet a = k1.jet(t, 4), b = k2.jet(t, 2);
            const double a1 = d(a, 1);
            return d(a, 4) + 16.0 * a[0] * d(a, 2) + 16.0 * a1 * a1 + 6.0 * a1 - 0.5 * d(b, 2);
        },
        opt);
    rep.extremal = rep.r1.verdict && rep.r2.verdict;
    double sup_d = 0.0;
    for (double t : rep.r1.t) sup_d = std::max({sup_d, std::abs(k1.jet(t, 1)[1]), std::abs(k2.jet(t, 1)[1])});
    rep.curvatures_constant = !rep.r1.t.empty() && sup_d <= rep.r1.tolerance;
    rep.reduction_holds = rep.extremal == rep.curvatures_constant;
    return rep;
}

}  // namespace gaffine
