#include "gaffine/plane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gaffine/errors.hpp"
#include "gaffine/numeric.hpp"
#include "scan_detail.hpp"

namespace gaffine {

bool PlaneInvariantRecord::has_flag(const std::string& f) const {
    return std::find(flags.begin(), flags.end(), f) != flags.end();
}

std::pair<Jet, Jet> plane_ode_coeffs(const std::vector<Jet>& x, double degenerate_scale) {
    if (x.size() != 2) throw DomainError("plane invariants need a plane curve");
    const int n = std::min(x[0].order(), x[1].order());
    if (n < 3) throw InsufficientOrderError("plane ODE coefficients need jets of order >= 3");
    const int m = n - 3;
    const Jet x1p = x[0].differentiate().truncated(m), x2p = x[1].differentiate().truncated(m);
    const Jet x1pp = x[0].differentiate().differentiate().truncated(m);
    const Jet x2pp = x[1].differentiate().differentiate().truncated(m);
    const Jet x1ppp = x[0].differentiate().differentiate().differentiate().truncated(m);
    const Jet x2ppp = x[1].differentiate().differentiate().differentiate().truncated(m);

    const Jet det = x1pp * x2p - x1p * x2pp;
    const double n1 = std::hypot(x1p[0], x2p[0]), n2 = std::hypot(x1pp[0], x2pp[0]);
    if (std::abs(det[0]) <= degenerate_scale * n1 * n2 || det[0] == 0.0)
        throw DegenerateCurveError("x' and x'' are linearly dependent");
    Jet a = (x1ppp * x2p - x1p * x2ppp) / det;
    Jet b = (x1pp * x2ppp - x1ppp * x2pp) / det;
    return {a, b};
}

std::pair<Jet, Jet> plane_ode_coeffs(const CurveSpec& spec, double t, int order) {
    return plane_ode_coeffs(eval_curve(spec, t, order));
}

PlaneInvariantRecord plane_invariants_from_jets(const std::vector<Jet>& x, double t, const PlaneOptions& opt) {
    auto [a, b] = plane_ode_coeffs(x, opt.degenerate_scale);
    if (a.order() < 2) throw InsufficientOrderError("plane invariants need coordinate jets of order >= 5");
    PlaneInvariantRecord r;
    r.t = t;
    r.a = a[0];
    r.b = b[0];

    const int m = a.order() - 1;
    const Jet ap = a.differentiate();
    const Jet L = -(b.truncated(m) + (2.0 / 9.0) * a.truncated(m) * a.truncated(m) - ap / 3.0);
    r.L = L[0];

    const Jet x1p = x[0].differentiate(), x2p = x[1].differentiate();
    const Jet x1pp = x1p.differentiate(), x2pp = x2p.differentiate();
    const double W = x1p[0] * x2pp[0] - x2p[0] * x1pp[0];

    const double tol = opt.singular_scale * (1.0 + std::abs(r.b) + r.a * r.a);
    if (std::abs(r.L) <= tol) {
        r.flags.push_back(flag::kAffineInflection);
        r.k_a = 0.0;
    } else {
        r.eps = r.L > 0 ? 1 : -1;
        r.ds_dt = std::sqrt(std::abs(r.L));
        r.k_a = r.L / std::pow(std::abs(W), 2.0 / 3.0);
        const Jet sigma1 = sqrt(static_cast<double>(r.eps) * L);
        const int q = m - 1;
        const Jet logL1 = L.differentiate() / L.truncated(q);
        const Jet kj = ((-2.0 / 3.0) * a.truncated(q) + logL1) / sigma1.truncated(q);
        r.k = kj[0];
        if (kj.order() >= 1) r.dk_ds = kj[1] / r.ds_dt;
    }

    // Projective data: the lift (1, x) solves y''' - a y'' - b y' = 0; remove the
    // y'' term to reach y''' + P2 y' + P3 y = 0.
    const Jet p1 = -a, p2 = -b;
    const int m2 = a.order() - 2;
    if (m2 >= 1) {
        const Jet P2 = (p2 - p1 * p1 / 3.0).truncated(m2 + 1) - p1.differentiate().truncated(m2 + 1);
        const Jet P3 = (-(p1 * p2) / 3.0 + 2.0 * p1 * p1 * p1 / 27.0).truncated(m2) -
                       p1.differentiate().differentiate() / 3.0;
        const Jet P = P3.truncated(m2 - 1) - P2.differentiate().truncated(m2 - 1) / 2.0;
        r.P = -P[0];
        const double ptol = opt.singular_scale * std::pow(1.0 + std::abs(r.b) + r.a * r.a, 1.5);
        if (std::abs(P[0]) <= ptol) {
            r.flags.push_back(flag::kSextactic);
        } else if (P.order() >= 2) {
            const double Pv = P[0], P1 = P.derivative(1), Pdd = P.derivative(2);
            r.k_p = std::pow(std::abs(Pv), -2.0 / 3.0) *
                    (P2[0] / 2.0 - Pdd / (3.0 * Pv) + 7.0 / 18.0 * (P1 / Pv) * (P1 / Pv));
        }
    }
    return r;
}

PlaneInvariantRecord plane_invariants_at(const CurveSpec& spec, double t, const PlaneOptions& opt) {
    if (spec.dimension != 2) throw DomainError("plane_invariants_at needs a plane curve");
    return plane_invariants_from_jets(eval_curve(spec, t, opt.order), t, opt);
}

GraphInvariants plane_graph_invariants(const Expr& f, double t, const std::map<std::string, double>& params) {
    const Jet fj = f.eval(jet_variable(t, 7), params);
    const double f2 = fj.derivative(2), f3 = fj.derivative(3), f4 = fj.derivative(4), f5 = fj.derivative(5);
    if (!(f2 > 0.0)) throw NonconvexGraphError("graph needs f'' > 0, got f''(t) = " + std::to_string(f2));
    GraphInvariants g;
    const Jet f2j = fj.differentiate().differentiate();
    const Jet mu = pow_real(f2j, -2.0 / 3.0);
    g.mu = mu.derivative(0);
    g.mu1 = mu.derivative(1);
    g.mu2 = mu.derivative(2);
    g.mu3 = mu.derivative(3);

    const double Q = 3.0 * f2 * f4 - 5.0 * f3 * f3;
    g.inflection = std::abs(Q) <= 1e-9 * (3.0 * std::abs(f2 * f4) + 5.0 * f3 * f3 + 1e-300);
    g.ds_dt = std::sqrt(std::abs(Q) / (9.0 * f2 * f2));
    if (!g.inflection) {
        const double num = 9.0 * f2 * f2 * f5 - 45.0 * f2 * f3 * f4 + 40.0 * f3 * f3 * f3;
        g.k_squared = num * num / std::pow(std::abs(Q), 3.0);
        const std::vector<Jet> x{jet_variable(t, kDefaultJetOrder), f.eval(jet_variable(t, kDefaultJetOrder), params)};
        const PlaneInvariantRecord r = plane_invariants_from_jets(x, t);
        if (r.k) {
            g.k_squared_ode = *r.k * *r.k;
            g.consistent = std::abs(g.k_squared - g.k_squared_ode) <= 1e-8 * std::max(1.0, g.k_squared);
        }
    }
    return g;
}

std::vector<double> equiaffine_to_ga(const std::vector<double>& k_a, double h) {
    std::vector<double> K(k_a.size());
    for (std::size_t i = 0; i < k_a.size(); ++i) {
        if (k_a[i] == 0.0 || !std::isfinite(k_a[i]))
            throw DomainError("zero equiaffine curvature in window (sample " + std::to_string(i) + ")");
        K[i] = std::abs(k_a[i]);
    }
    const std::vector<double> dK = fd_derivative(K, h);
    std::vector<double> k(K.size());
    for (std::size_t i = 0; i < K.size(); ++i) k[i] = dK[i] * std::pow(K[i], -1.5);
    return k;
}

double plane_equiaffine_length(const CurveSpec& spec, double t0, double t1, double rel_tol) {
    auto density = [&](double t) {
        const auto x = eval_curve(spec, t, 2);
        return std::cbrt(std::abs(x[0][1] * 2 * x[1][2] - x[1][1] * 2 * x[0][2]));
    };
    return adaptive_simpson(density, t0, t1, rel_tol);
}

namespace detail {

void sign_change_events(const std::vector<double>& t, const std::vector<std::optional<double>>& v,
                        const std::function<bool(std::size_t, std::size_t)>& same_branch,
                        const std::function<double(double)>& f, bool periodic, double root_tol,
                        const std::string& kind, std::vector<ScanEvent>& out) {
    const std::size_t n = t.size();
    if (n < 2) return;
    auto sgn = [](double x) { return x >= 0.0 ? 1 : -1; };
    auto check = [&](std::size_t i, std::size_t j, double lo, double hi) {
        if (!v[i] || !v[j] || !same_branch(i, j)) return;
        if (sgn(*v[i]) == sgn(*v[j])) return;
        double root;
        try {
            root = bisect_root(f, lo, hi, root_tol);
        } catch (const Error&) {
            // Root sits on a grid point where f rounds to the wrong sign.
            const double fl = f(lo), fh = f(hi);
            root = std::isfinite(fl) && std::isfinite(fh) ? (std::abs(fl) <= std::abs(fh) ? lo : hi) : 0.5 * (lo + hi);
        }
        if (periodic && root >= t.back() - 10 * root_tol) root = t.front();
        out.push_back({kind, root});
    };
    const std::size_t last = periodic ? n - 2 : n - 1;
    for (std::size_t i = 0; i < last; ++i) check(i, i + 1, t[i], t[i + 1]);
    if (periodic && n >= 3) check(n - 2, 0, t[n - 2], t[n - 1]);
}

bool endpoints_match(const CurveSpec& spec, int order) {
    try {
        const auto a = eval_curve(spec, spec.t_min, order);
        const auto b = eval_curve(spec, spec.t_max, order);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (int j = 0; j <= order; ++j) {
                const double scale = 1.0 + std::abs(a[i][j]);
                if (std::abs(a[i][j] - b[i][j]) > 1e-9 * scale) return false;
            }
        return true;
    } catch (const Error&) {
        return false;
    }
}

}  // namespace detail

PlaneScan scan_curve(const CurveSpec& spec, const std::vector<double>& grid, const ScanOptions& opt) {
    PlaneScan scan;
    if (grid.empty()) return scan;
    std::vector<double> ts;
    for (double t : grid) {
        try {
            scan.records.push_back(plane_invariants_at(spec, t, opt.plane));
            ts.push_back(t);
        } catch (const DegenerateCurveError&) {
            scan.events.push_back({flag::kDegenerate, t});
        }
    }
    const auto& R = scan.records;
    const std::size_t n = R.size();
    const double span = spec.t_max - spec.t_min;
    scan.periodic = opt.detect_periodic && n == grid.size() && n >= 3 &&
                    std::abs(grid.front() - spec.t_min) <= 1e-12 * std::max(1.0, span) &&
                    std::abs(grid.back() - spec.t_max) <= 1e-12 * std::max(1.0, span) &&
                    detail::endpoints_match(spec, 3);

    auto rec_at = [&](double t) { return plane_invariants_at(spec, t, opt.plane); };
    const double nan = std::numeric_limits<double>::quiet_NaN();

    std::vector<std::optional<double>> Lv(n), kv(n), dkv(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!R[i].has_flag(flag::kAffineInflection)) Lv[i] = R[i].L;
        kv[i] = R[i].k;
        dkv[i] = R[i].dk_ds;
    }
    auto any = [](std::size_t, std::size_t) { return true; };
    auto same_eps = [&](std::size_t i, std::size_t j) { return R[i].eps != 0 && R[i].eps == R[j].eps; };

    detail::sign_change_events(ts, Lv, any, [&](double t) { return rec_at(t).L; }, scan.periodic, opt.root_tol,
                               flag::kAffineInflection, scan.events);
    detail::sign_change_events(
        ts, kv, same_eps, [&](double t) { return rec_at(t).k.value_or(nan); }, scan.periodic, opt.root_tol,
        "flat_point", scan.events);
    detail::sign_change_events(
        ts, dkv, same_eps, [&](double t) { return rec_at(t).dk_ds.value_or(nan); }, scan.periodic, opt.root_tol,
        "vertex", scan.events);
    std::sort(scan.events.begin(), scan.events.end(),
              [](const ScanEvent& a, const ScanEvent& b) { return a.t < b.t; });

    // Total curvature: Simpson over maximal runs of valid records on a uniform grid.
    bool uniform = true;
    for (std::size_t i = 2; i < ts.size(); ++i)
        if (std::abs((ts[i] - ts[i - 1]) - (ts[1] - ts[0])) > 1e-9 * std::abs(ts[1] - ts[0])) uniform = false;
    double total = 0.0;
    bool valid = count_events(scan.events, flag::kAffineInflection) == 0 &&
                 count_events(scan.events, flag::kDegenerate) == 0;
    std::size_t i = 0;
    while (i < n) {
        if (!R[i].k) {
            valid = false;
            ++i;
            continue;
        }
        std::size_t j = i;
        std::vector<double> integrand;
        while (j < n && R[j].k && R[j].eps == R[i].eps) {
            integrand.push_back(*R[j].k * R[j].ds_dt);
            ++j;
        }
        double seg = 0.0;
        if (integrand.size() >= 2) {
            if (uniform) {
                seg = simpson(integrand, ts[i + 1] - ts[i]);
            } else {
                for (std::size_t q = i + 1; q < j; ++q)
                    seg += 0.5 * (ts[q] - ts[q - 1]) * (integrand[q - i] + integrand[q - 1 - i]);
            }
        }
        scan.total_curvature.segments.push_back(seg);
        total += seg;
        if (j < n) valid = false;
        i = j;
    }
    scan.total_curvature.value = total;
    scan.total_curvature.valid = valid && n == grid.size();
    return scan;
}

std::size_t count_events(const std::vector<ScanEvent>& events, const std::string& kind) {
    return static_cast<std::size_t>(
        std::count_if(events.begin(), events.end(), [&](const ScanEvent& e) { return e.kind == kind; }));
}

}  // namespace gaffine
