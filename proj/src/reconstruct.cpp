#include "gaffine/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gaffine/errors.hpp"
#include "gaffine/numeric.hpp"
#include "gaffine/plane.hpp"
#include "gaffine/space.hpp"

namespace gaffine {

CurvatureProfile CurvatureProfile::plane(ScalarProfile k, int eps, double t_min, double t_max) {
    CurvatureProfile p;
    p.kind = Kind::Plane;
    p.k = std::move(k);
    p.eps = eps;
    p.t_min = t_min;
    p.t_max = t_max;
    return p;
}

CurvatureProfile CurvatureProfile::space(ScalarProfile k, ScalarProfile M, int eps, double t_min, double t_max) {
    CurvatureProfile p = plane(std::move(k), eps, t_min, t_max);
    p.kind = Kind::Space;
    p.M = std::move(M);
    return p;
}

State ReconstructionSegment::operator()(double t) const {
    if (t < t_start && backward.dimension() > 0) return backward(t);
    return forward(t);
}

std::vector<double> ReconstructionResult::x(std::size_t i) const {
    return {state[i].begin(), state[i].begin() + dimension};
}

std::vector<std::pair<double, double>> pole_free_segments(const ScalarProfile& k, double t_min, double t_max,
                                                          double threshold, std::size_t prescan) {
    const double inf = std::numeric_limits<double>::infinity();
    auto absk = [&](double t) {
        try {
            const double v = std::abs(k(t));
            return std::isfinite(v) ? v : inf;
        } catch (const Error&) {
            return inf;
        }
    };
    // Boundary of {|k| > threshold} between a good point g and a bad point b.
    auto cut = [&](double g, double b) {
        for (int it = 0; it < 200 && std::abs(b - g) > 1e-15 * (1.0 + std::abs(g)); ++it) {
            const double m = 0.5 * (g + b);
            (absk(m) > threshold ? b : g) = m;
        }
        return g;
    };
    const auto grid = linspace(t_min, t_max, std::max<std::size_t>(prescan, 3));
    const std::size_t n = grid.size();
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = absk(grid[i]);

    std::vector<std::pair<double, double>> excluded;
    for (std::size_t i = 0; i < n; ++i) {
        if (v[i] > threshold) {
            std::size_t j = i;
            while (j + 1 < n && v[j + 1] > threshold) ++j;
            const double lo = i > 0 ? cut(grid[i - 1], grid[i]) : grid[i];
            const double hi = j + 1 < n ? cut(grid[j + 1], grid[j]) : grid[j];
            excluded.emplace_back(lo, hi);
            i = j;
            continue;
        }
        // A pole between nodes shows up as a large local maximum of |k|.
        const bool peak = v[i] >= std::sqrt(threshold) && (i == 0 || v[i] >= v[i - 1]) && (i + 1 == n || v[i] >= v[i + 1]);
        if (!peak) continue;
        double a = grid[i > 0 ? i - 1 : i], b = grid[i + 1 < n ? i + 1 : i];
        const double lo0 = a, hi0 = b;
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double c = b - gr * (b - a), d = a + gr * (b - a);
        double fc = absk(c), fd = absk(d);
        for (int it = 0; it < 200 && (b - a) > 1e-15 * (1.0 + std::abs(a)); ++it) {
            if (fc >= fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - gr * (b - a);
                fc = absk(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + gr * (b - a);
                fd = absk(d);
            }
        }
        const double tp = 0.5 * (a + b);
        if (std::max({fc, fd, absk(tp)}) <= threshold) continue;
        const double lo = absk(lo0) > threshold ? lo0 : cut(lo0, tp);
        const double hi = absk(hi0) > threshold ? hi0 : cut(hi0, tp);
        excluded.emplace_back(lo, hi);
    }
    std::sort(excluded.begin(), excluded.end());
    std::vector<std::pair<double, double>> out;
    const double min_len = 1e-9 * (t_max - t_min);
    double start = t_min;
    for (const auto& [lo, hi] : excluded) {
        if (lo - start > min_len) out.emplace_back(start, lo);
        start = std::max(start, hi);
    }
    if (t_max - start > min_len) out.emplace_back(start, t_max);
    return out;
}

namespace {

void validate(const CurvatureProfile& p) {
    if (p.eps != 1 && p.eps != -1) throw DomainError("eps must be +1 or -1");
    if (!(p.t_min < p.t_max)) throw DomainError("profile interval must satisfy t_min < t_max");
    if (p.k.empty()) throw DomainError("curvature profile k is missing");
    if (p.kind == CurvatureProfile::Kind::Space && p.M.empty()) throw DomainError("space profile needs M");
}

Eigen::MatrixXd initial_frame(const CurvatureProfile& p) {
    const int n = p.dimension();
    if (p.frame.size() == 0) return Eigen::MatrixXd::Identity(n, n);
    if (p.frame.rows() != n || p.frame.cols() != n) throw FrameError("initial frame has the wrong shape");
    const double scale = p.frame.norm();
    if (!(std::abs(p.frame.determinant()) > 1e-12 * std::pow(scale, n))) throw FrameError("initial frame is singular");
    return p.frame;
}

Eigen::VectorXd initial_origin(const CurvatureProfile& p) {
    const int n = p.dimension();
    if (p.origin.size() == 0) return Eigen::VectorXd::Zero(n);
    if (p.origin.size() != n) throw FrameError("initial point has the wrong dimension");
    return p.origin;
}

// Coefficients of the highest-order linear ODE for Y = x' as jets in t:
// plane Y'' = c[0] Y' + c[1] Y; space Y''' = c[0] Y'' + c[1] Y' + c[2] Y.
std::vector<Jet> ode_coeff_jets(const CurvatureProfile& p, double t, int order) {
    const double e = p.eps;
    const Jet k = p.k.jet(t, order + (p.kind == CurvatureProfile::Kind::Plane ? 1 : 2));
    const Jet kd = k.differentiate();
    if (p.kind == CurvatureProfile::Kind::Plane) {
        return {(-1.5 * k).truncated(order), -(e + 0.5 * kd + 0.5 * k * k).truncated(order)};
    }
    const Jet kdd = kd.differentiate();
    const Jet M = p.M.jet(t, order);
    return {(-3.0 * k).truncated(order), -(2.0 * kd + 2.75 * k * k + e).truncated(order),
            -(M + 0.5 * e * k + 0.5 * kdd + 1.75 * k * kd + 0.75 * pow_int(k, 3)).truncated(order)};
}

// Absolute error for |k| <= 1, relative above.
double rel_err(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

double det_of_state(const State& y, int dim) {
    Eigen::MatrixXd F(dim, dim);
    for (int c = 0; c < dim; ++c)
        for (int r = 0; r < dim; ++r) F(r, c) = y[(c + 1) * dim + r];
    return F.determinant();
}

ReconstructionResult run(const CurvatureProfile& p, const ReconstructOptions& opt) {
    validate(p);
    const int dim = p.dimension();
    const bool plane = p.kind == CurvatureProfile::Kind::Plane;
    const Eigen::MatrixXd F = initial_frame(p);
    const Eigen::VectorXd x0 = initial_origin(p);

    const auto segs = pole_free_segments(p.k, p.t_min, p.t_max, opt.pole_threshold, opt.pole_prescan);
    if (segs.empty()) throw DomainError("curvature profile exceeds the pole threshold on the whole interval");

    const double e = p.eps;
    OdeRhs rhs;
    if (plane) {
        rhs = [&](double t, const State& y, State& dy) {
            const Jet k = p.k.jet(t, 1);
            const double kv = k[0], kd = k[1];
            const double q = -(e + 0.5 * kd + 0.5 * kv * kv);
            for (int i = 0; i < 2; ++i) {
                dy[i] = y[2 + i];
                dy[2 + i] = y[4 + i];
                dy[4 + i] = -1.5 * kv * y[4 + i] + q * y[2 + i];
            }
        };
    } else {
        rhs = [&](double t, const State& y, State& dy) {
            const Jet k = p.k.jet(t, 2);
            const double kv = k[0], kd = k[1], kdd = 2.0 * k[2];
            const double M = p.M(t);
            const double c2 = -3.0 * kv;
            const double c1 = -(2.0 * kd + 2.75 * kv * kv + e);
            const double c0 = -(M + 0.5 * e * kv + 0.5 * kdd + 1.75 * kv * kd + 0.75 * kv * kv * kv);
            for (int i = 0; i < 3; ++i) {
                dy[i] = y[3 + i];
                dy[3 + i] = y[6 + i];
                dy[6 + i] = y[9 + i];
                dy[9 + i] = c2 * y[9 + i] + c1 * y[6 + i] + c0 * y[3 + i];
            }
        };
    }

    ReconstructionResult res;
    res.dimension = dim;
    const DormandPrince dp(opt.ode);
    const double span = p.t_max - p.t_min;
    double det_sign = 0.0;
    res.min_abs_det = std::numeric_limits<double>::infinity();
    for (const auto& [a, b] : segs) {
        State y0(static_cast<std::size_t>((dim + 1) * dim));
        for (int r = 0; r < dim; ++r) {
            y0[r] = x0(r);
            for (int c = 0; c < dim; ++c) y0[(c + 1) * dim + r] = F(r, c);
        }
        ReconstructionSegment seg;
        seg.t_begin = a;
        seg.t_end = b;
        seg.t_start = res.segments.empty() && a == p.t_min ? a : 0.5 * (a + b);
        std::vector<OdeResult> runs;
        runs.push_back(dp.integrate(rhs, seg.t_start, y0, b));
        if (seg.t_start > a) runs.push_back(dp.integrate(rhs, seg.t_start, y0, a));
        for (const auto& r : runs) {
            res.stats.steps += r.stats.steps;
            res.stats.evaluations += r.stats.evaluations;
        }
        seg.forward = std::move(runs[0].solution);
        if (runs.size() > 1) seg.backward = std::move(runs[1].solution);

        const std::size_t n = std::max<std::size_t>(
            2, static_cast<std::size_t>(std::llround(static_cast<double>(opt.samples) * (b - a) / span)));
        for (double t : linspace(a, b, n)) {
            State y = seg(t);
            const double d = det_of_state(y, dim);
            res.min_abs_det = std::min(res.min_abs_det, std::abs(d));
            if (det_sign == 0.0) det_sign = d > 0 ? 1.0 : -1.0;
            if (d * det_sign <= 0.0) res.det_sign_constant = false;
            res.t.push_back(t);
            res.state.push_back(std::move(y));
        }
        res.segments.push_back(std::move(seg));
    }

    // Round trip through the invariant formulas on jets rebuilt from the ODE.
    RoundtripReport& rt = res.roundtrip;
    rt.tolerance = plane ? 1e-6 : 1e-5;
    if (p.k.is_sampled() || (!plane && p.M.is_sampled())) rt.tolerance = std::max(rt.tolerance, 1e-4);
    bool ok = true;
    for (const auto& seg : res.segments) {
        const std::size_t n = std::max<std::size_t>(2, opt.roundtrip_points);
        for (double t : linspace(seg.t_begin, seg.t_end, n)) {
            if (!(std::abs(p.k(t)) <= opt.roundtrip_k_limit)) continue;
            ++rt.checked;
            try {
                const auto x = solution_jets(p, res, t, 8);
                if (plane) {
                    const PlaneInvariantRecord r = plane_invariants_from_jets(x, t);
                    if (!r.k || r.eps != p.eps) {
                        rt.eps_ok = rt.eps_ok && r.eps == p.eps;
                        ok = false;
                        continue;
                    }
                    rt.max_k_error = std::max(rt.max_k_error, rel_err(*r.k, p.k(t)));
                    rt.max_ds_error = std::max(rt.max_ds_error, std::abs(r.ds_dt - 1.0));
                } else {
                    const SpaceInvariantRecord r = space_invariants_from_jets(x, t);
                    if (!r.k || !r.M || r.eps != p.eps) {
                        rt.eps_ok = rt.eps_ok && r.eps == p.eps;
                        ok = false;
                        continue;
                    }
                    rt.max_k_error = std::max(rt.max_k_error, rel_err(*r.k, p.k(t)));
                    rt.max_M_error = std::max(rt.max_M_error, rel_err(*r.M, p.M(t)));
                    rt.max_ds_error = std::max(rt.max_ds_error, std::abs(r.ds_dt - 1.0));
                }
            } catch (const Error&) {
                ok = false;
            }
        }
    }
    rt.passed = ok && rt.eps_ok && rt.max_k_error <= rt.tolerance && rt.max_M_error <= rt.tolerance &&
                rt.max_ds_error <= rt.tolerance;
    return res;
}

}  // namespace

ReconstructionResult reconstruct_plane(const CurvatureProfile& profile, const ReconstructOptions& opt) {
    if (profile.kind != CurvatureProfile::Kind::Plane) throw DomainError("reconstruct_plane needs a plane profile");
    return run(profile, opt);
}

ReconstructionResult reconstruct_space(const CurvatureProfile& profile, const ReconstructOptions& opt) {
    if (profile.kind != CurvatureProfile::Kind::Space) throw DomainError("reconstruct_space needs a space profile");
    return run(profile, opt);
}

ReconstructionResult reconstruct(const CurvatureProfile& profile, const ReconstructOptions& opt) {
    return run(profile, opt);
}

std::vector<Jet> solution_jets(const CurvatureProfile& p, const ReconstructionResult& result, double t, int order) {
    const ReconstructionSegment* seg = nullptr;
    for (const auto& s : result.segments)
        if (t >= s.t_begin - 1e-12 && t <= s.t_end + 1e-12) seg = &s;
    if (!seg) throw OutOfIntervalError("t = " + std::to_string(t) + " outside the reconstructed segments");
    const int dim = result.dimension;
    const bool plane = dim == 2;
    const State y = (*seg)(t);
    const int R = order - 1;  // order of the x' jet
    const int ode_order = plane ? 2 : 3;
    const auto c = ode_coeff_jets(p, t, R - ode_order);

    std::vector<Jet> out;
    for (int i = 0; i < dim; ++i) {
        std::vector<double> Y(R + 1, 0.0);
        Y[0] = y[dim + i];
        Y[1] = y[2 * dim + i];
        if (!plane) Y[2] = 0.5 * y[3 * dim + i];
        for (int n = 0; n + ode_order <= R; ++n) {
            double s = 0.0;
            for (int j = 0; j <= n; ++j) {
                if (plane) {
                    s += c[0][n - j] * (j + 1) * Y[j + 1] + c[1][n - j] * Y[j];
                } else {
                    s += c[0][n - j] * (j + 2) * (j + 1) * Y[j + 2] + c[1][n - j] * (j + 1) * Y[j + 1] +
                         c[2][n - j] * Y[j];
                }
            }
            const double f = plane ? double(n + 2) * (n + 1) : double(n + 3) * (n + 2) * (n + 1);
            Y[n + ode_order] = s / f;
        }
        out.push_back(Jet(Y).integrate(y[i]));
    }
    return out;
}

GaAlignment ga_normalize(const ReconstructionResult& a, const ReconstructionResult& b) {
    if (a.dimension != b.dimension || a.t.size() != b.t.size() || a.t.empty())
        throw DomainError("reconstructions must share dimension and sample grid");
    for (std::size_t i = 0; i < a.t.size(); ++i)
        if (std::abs(a.t[i] - b.t[i]) > 1e-12 * (1.0 + std::abs(a.t[i])))
            throw DomainError("reconstructions must share the sample grid");
    const int n = a.dimension;
    auto frame = [n](const State& y) {
        Eigen::MatrixXd F(n, n);
        for (int c = 0; c < n; ++c)
            for (int r = 0; r < n; ++r) F(r, c) = y[(c + 1) * n + r];
        return F;
    };
    const Eigen::MatrixXd Fa = frame(a.state.front()), Fb = frame(b.state.front());
    auto check = [n](const Eigen::MatrixXd& F) {
        if (!(std::abs(F.determinant()) > 1e-12 * std::pow(F.norm(), n))) throw FrameError("frame is not invertible");
    };
    check(Fa);
    check(Fb);
    GaAlignment g;
    g.G = Fb * Fa.inverse();
    Eigen::VectorXd xa(n), xb(n);
    for (int r = 0; r < n; ++r) {
        xa(r) = a.state.front()[r];
        xb(r) = b.state.front()[r];
    }
    g.v = xb - g.G * xa;
    double scale = 1.0;
    for (std::size_t i = 0; i < a.t.size(); ++i) {
        for (int r = 0; r < n; ++r) {
            xa(r) = a.state[i][r];
            xb(r) = b.state[i][r];
        }
        g.sup_distance = std::max(g.sup_distance, (g.G * xa + g.v - xb).lpNorm<Eigen::Infinity>());
        scale = std::max(scale, xb.lpNorm<Eigen::Infinity>());
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(g.G);
    const double cond = svd.singularValues()(0) / svd.singularValues()(n - 1);
    g.tolerance = 1e-8 * cond * scale;
    g.coincide = g.sup_distance <= g.tolerance;
    return g;
}

}  // namespace gaffine
