#include "gaffine/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gaffine/errors.hpp"
#include "gaffine/numeric.hpp"
#include "scan_detail.hpp"

namespace gaffine {

bool SpaceInvariantRecord::has_flag(const std::string& f) const {
    return std::find(flags.begin(), flags.end(), f) != flags.end();
}

std::vector<Jet> solve_jet_system(std::vector<std::vector<Jet>> A, std::vector<Jet> rhs) {
    const std::size_t n = rhs.size();
    if (A.size() != n) throw DomainError("solve_jet_system: dimension mismatch");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(A[r][col][0]) > std::abs(A[piv][col][0])) piv = r;
        if (A[piv][col][0] == 0.0) throw DegenerateCurveError("singular jet system");
        std::swap(A[piv], A[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const Jet f = A[r][col] / A[col][col];
            for (std::size_t c = col; c < n; ++c) A[r][c] -= f * A[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<Jet> x(n);
    for (std::size_t i = n; i-- > 0;) {
        Jet s = rhs[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= A[i][c] * x[c];
        x[i] = s / A[i][i];
    }
    return x;
}

namespace {

Jet det3(const Jet* u, const Jet* v, const Jet* w) {
    return u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0]) +
           u[2] * (v[0] * w[1] - v[1] * w[0]);
}

struct Derivs {
    std::vector<std::vector<Jet>> d;  // d[j][i] = j-th derivative of coordinate i
};

Derivs derivs(const std::vector<Jet>& x, int upto) {
    Derivs r;
    r.d.push_back(x);
    for (int j = 1; j <= upto; ++j) {
        std::vector<Jet> next;
        for (const Jet& c : r.d.back()) next.push_back(c.differentiate());
        r.d.push_back(next);
    }
    return r;
}

double norm3(const std::vector<Jet>& v) {
    return std::sqrt(v[0][0] * v[0][0] + v[1][0] * v[1][0] + v[2][0] * v[2][0]);
}

// det(x', x'', x''') as a jet of order N - 3.
Jet frame_det(const Derivs& d) {
    return det3(d.d[1].data(), d.d[2].data(), d.d[3].data());
}

std::array<Jet, 3> coeffs_from_p(const Jet& p1, const Jet& p2, const Jet& p3, const Jet& p4) {
    const Jet p1d = p1.differentiate(), p1dd = p1d.differentiate(), p1ddd = p1dd.differentiate();
    const Jet P2 = p2 - p1 * p1 - p1d;
    const Jet P3 = p3 - 3.0 * p1 * p2 + 2.0 * p1 * p1 * p1 - p1dd;
    const Jet P4 = p4 - 4.0 * p1 * p3 + 6.0 * p1 * p1 * p2 - 6.0 * p1d * p2 - 3.0 * pow_int(p1, 4) +
                   6.0 * p1 * p1 * p1d + 3.0 * p1d * p1d - p1ddd;
    return {P2, P3, P4};
}

struct SpaceCore {
    Jet a, b, c, L, mlam, D;
};

SpaceCore space_core(const std::vector<Jet>& x, double degenerate_scale) {
    const auto abc = space_ode_coeffs(x, degenerate_scale);
    SpaceCore s{abc[0], abc[1], abc[2], {}, {}, {}};
    if (s.a.order() < 2) throw InsufficientOrderError("space invariants need coordinate jets of order >= 6");
    const Jet& a = s.a;
    const Jet ad = a.differentiate(), add = ad.differentiate();
    s.L = -(s.b + (11.0 / 36.0) * a * a - (2.0 / 3.0) * ad);
    s.mlam = -s.c - a * s.b / 6.0 - pow_int(a, 3) / 36.0 + add / 6.0 - a * ad / 12.0 + pow_int(a, 3) / 216.0;
    s.D = frame_det(derivs(x, 3));
    return s;
}

}  // namespace

std::array<Jet, 3> space_ode_coeffs(const std::vector<Jet>& x, double degenerate_scale) {
    if (x.size() != 3) throw DomainError("space invariants need a space curve");
    int n = x[0].order();
    for (const Jet& c : x) n = std::min(n, c.order());
    if (n < 4) throw InsufficientOrderError("space ODE coefficients need jets of order >= 4");
    const Derivs d = derivs(x, 4);
    const double D0 = frame_det(d)[0];
    if (std::abs(D0) <= degenerate_scale * norm3(d.d[1]) * norm3(d.d[2]) * norm3(d.d[3]) || D0 == 0.0)
        throw DegenerateCurveError("x', x'', x''' are linearly dependent");
    std::vector<std::vector<Jet>> A(3, std::vector<Jet>(3));
    std::vector<Jet> rhs(3);
    for (int i = 0; i < 3; ++i) {
        A[i][0] = d.d[3][i];
        A[i][1] = d.d[2][i];
        A[i][2] = d.d[1][i];
        rhs[i] = d.d[4][i];
    }
    const auto sol = solve_jet_system(A, rhs);
    return {sol[0], sol[1], sol[2]};
}

std::array<Jet, 3> space_ode_coeffs(const CurveSpec& spec, double t, int order) {
    return space_ode_coeffs(eval_curve(spec, t, order));
}

SpaceInvariantRecord space_invariants_from_jets(const std::vector<Jet>& x, double t, const SpaceOptions& opt) {
    const SpaceCore s = space_core(x, opt.degenerate_scale);
    SpaceInvariantRecord r;
    r.t = t;
    r.a = s.a[0];
    r.b = s.b[0];
    r.c = s.c[0];
    r.L = s.L[0];
    const double absD = std::abs(s.D[0]);
    r.ell_equi = r.L * std::pow(absD, -1.0 / 3.0);
    r.m_equi = s.mlam[0] * std::pow(absD, -0.5);

    const double tol = opt.singular_scale * (1.0 + std::abs(r.b) + r.a * r.a);
    if (std::abs(r.L) <= tol) {
        r.flags.push_back(flag::kAffineInflection);
        return r;
    }
    r.eps = r.L > 0 ? 1 : -1;
    r.ds_dt = std::sqrt(std::abs(r.L));
    const Jet sig1 = sqrt(static_cast<double>(r.eps) * s.L);
    const Jet sig2 = sig1.differentiate();
    const Jet A = (s.a - 6.0 * sig2 / sig1) / sig1;
    const Jet kj = -A / 3.0;
    const Jet loglam = (-s.a / 6.0).integrate(0.0);
    const Jet ell = exp(2.0 * loglam) * s.L;
    const Jet kj2 = ell.differentiate() / ell / sig1;
    const Jet Mj = s.mlam / pow_int(sig1, 3);

    r.k = kj[0];
    r.k_log_ell = kj2[0];
    r.M = Mj[0];
    r.theta3 = (*r.M - r.eps * *r.k) / 4.0;
    if (kj.order() >= 1 && Mj.order() >= 1) {
        r.dk_ds = kj[1] / r.ds_dt;
        r.dM_ds = Mj[1] / r.ds_dt;
        const double k = *r.k, M = *r.M, e = r.eps;
        r.theta4 = -0.75 * k * M - 0.5 * *r.dM_ds + e * *r.dk_ds / 5.0 + 0.3 * e * k * k - 0.09;
    }
    const auto P = projective_coeffs_from_ode(s.a, s.b, s.c);
    if (P[2].order() >= 0 && P[1].order() >= 1 && P[0].order() >= 2) {
        const Theta th = projective_space_invariants(P[0], P[1], P[2]);
        r.theta3_proj = th.theta3 / std::pow(r.ds_dt, 3);
        r.theta4_proj = th.theta4 / std::pow(r.ds_dt, 4);
    }
    r.linear_complex = std::abs(*r.theta3) <= opt.complex_tol;
    if (r.linear_complex) r.flags.push_back(flag::kLinearComplex);
    return r;
}

SpaceInvariantRecord space_invariants_at(const CurveSpec& spec, double t, const SpaceOptions& opt) {
    if (spec.dimension != 3) throw DomainError("space_invariants_at needs a space curve");
    SpaceInvariantRecord r = space_invariants_from_jets(eval_curve(spec, t, opt.order), t, opt);
    if (r.has_flag(flag::kAffineInflection))
        throw AffineInflectionError("affine inflection at t = " + std::to_string(t) + " (L = " + std::to_string(r.L) +
                                    ")");
    return r;
}

EquiaffineSpaceResult equiaffine_space_invariants(const CurveSpec& spec, double t, EquiaffineMode mode) {
    if (spec.dimension != 3) throw DomainError("equiaffine_space_invariants needs a space curve");
    const SpaceCore s = space_core(eval_curve(spec, t, kDefaultJetOrder), 1e-12);
    if (mode == EquiaffineMode::RequireParameter && std::abs(s.a[0]) > 1e-8)
        throw NotEquiaffineError("parameter is not equiaffine at t = " + std::to_string(t) +
                                 " (a = " + std::to_string(s.a[0]) + ")");
    EquiaffineSpaceResult r;
    r.a = s.a[0];
    const double sD = s.D[0] > 0 ? 1.0 : -1.0;
    const Jet absD = sD * s.D;
    const Jet ell = s.L * pow_real(absD, -1.0 / 3.0);
    const Jet m = s.mlam * pow_real(absD, -0.5);
    r.ell = ell[0];
    r.m = m[0];
    r.du_dt = std::pow(absD[0], 1.0 / 6.0);
    const double tol = 1e-9 * (1.0 + std::abs(s.b[0]) + s.a[0] * s.a[0]);
    if (std::abs(r.ell) > tol) {
        const double absEll = std::abs(r.ell);
        const double dEll_du = (r.ell > 0 ? 1.0 : -1.0) * ell.derivative(1) / r.du_dt;
        r.ds_du = std::sqrt(absEll);
        r.k = dEll_du * std::pow(absEll, -1.5);
        r.M = r.m * std::pow(absEll, -1.5);
    }
    if (mode == EquiaffineMode::AutoReparametrize) {
        auto density = [&](double tt) {
            const auto x = eval_curve(spec, tt, 3);
            const Derivs d = derivs(x, 3);
            return std::pow(std::abs(frame_det(d)[0]), 1.0 / 6.0);
        };
        r.u = adaptive_simpson(density, spec.t_min, t, 1e-10);
    }
    return r;
}

Theta projective_space_invariants(const Jet& P2, const Jet& P3, const Jet& P4) {
    if (P2.order() < 2 || P3.order() < 1)
        throw InsufficientOrderError("theta4 needs P2 of order >= 2 and P3 of order >= 1");
    const Jet th3 = P3 - 1.5 * P2.differentiate();
    Theta th;
    th.theta3 = th3[0];
    th.theta4 = P4[0] - 1.8 * P2.derivative(2) - 81.0 / 25.0 * P2[0] * P2[0] - 2.0 * th3.derivative(1);
    return th;
}

Theta projective_space_invariants_from_ga(const Jet& k, const Jet& M, int eps) {
    if (k.order() < 1 || M.order() < 1) throw InsufficientOrderError("theta4 needs k' and M'");
    const double e = eps;
    Theta th;
    th.theta3 = (M[0] - e * k[0]) / 4.0;
    th.theta4 = -0.75 * k[0] * M[0] - 0.5 * M.derivative(1) + e * k.derivative(1) / 5.0 + 0.3 * e * k[0] * k[0] - 0.09;
    return th;
}

std::array<Jet, 3> projective_coeffs_from_ode(const Jet& a, const Jet& b, const Jet& c) {
    // The lift (1, x) solves y'''' - a y''' - b y'' - c y' = 0.
    const Jet zero(a.order(), 0.0);
    return coeffs_from_p(-a / 4.0, -b / 6.0, -c / 4.0, zero);
}

std::array<Jet, 3> projective_coeffs_from_ga(const Jet& k, const Jet& M, int eps) {
    const double e = eps;
    const Jet kd = k.differentiate(), kdd = kd.differentiate();
    const Jet a = -3.0 * k;
    const Jet b = -(2.0 * kd + 2.75 * k * k + e);
    const Jet c = -(M + 0.5 * e * k + 0.5 * kdd + 1.75 * k * kd + 0.75 * pow_int(k, 3));
    return projective_coeffs_from_ode(a, b, c);
}

std::array<Jet, 3> projective_coeffs_from_homogeneous(const std::vector<Jet>& y) {
    if (y.size() != 4) throw DomainError("homogeneous curves need four coordinates");
    int n = y[0].order();
    for (const Jet& c : y) n = std::min(n, c.order());
    if (n < 4) throw InsufficientOrderError("homogeneous coefficients need jets of order >= 4");
    const Derivs d = derivs(y, 4);
    std::vector<std::vector<Jet>> A(4, std::vector<Jet>(4));
    std::vector<Jet> rhs(4);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) A[i][j] = d.d[3 - j][i];
        rhs[i] = -d.d[4][i];
    }
    // y'''' + 4p1 y''' + 6p2 y'' + 4p3 y' + p4 y = 0
    const auto q = solve_jet_system(A, rhs);
    return coeffs_from_p(q[0] / 4.0, q[1] / 6.0, q[2] / 4.0, q[3]);
}

Theta projective_space_invariants_at(const CurveSpec& spec, double t, int order) {
    const auto x = eval_curve(spec, t, order);
    if (spec.dimension == 3) {
        const auto abc = space_ode_coeffs(x);
        const auto P = projective_coeffs_from_ode(abc[0], abc[1], abc[2]);
        return projective_space_invariants(P[0], P[1], P[2]);
    }
    if (spec.dimension == 4) {
        const auto P = projective_coeffs_from_homogeneous(x);
        return projective_space_invariants(P[0], P[1], P[2]);
    }
    throw DomainError("projective invariants need a space or homogeneous curve");
}

SpaceScan scan_space_curve(const CurveSpec& spec, const std::vector<double>& grid, const SpaceOptions& opt) {
    if (spec.dimension != 3) throw DomainError("scan_space_curve needs a space curve");
    SpaceScan scan;
    std::vector<double> ts;
    for (double t : grid) {
        try {
            scan.records.push_back(space_invariants_from_jets(eval_curve(spec, t, opt.order), t, opt));
            ts.push_back(t);
        } catch (const DegenerateCurveError&) {
            scan.events.push_back({flag::kDegenerate, t});
        }
    }
    auto& R = scan.records;
    std::vector<std::optional<double>> Lv(R.size());
    for (std::size_t i = 0; i < R.size(); ++i)
        if (!R[i].has_flag(flag::kAffineInflection)) Lv[i] = R[i].L;
    auto L_at = [&](double t) {
        try {
            return space_invariants_from_jets(eval_curve(spec, t, opt.order), t, opt).L;
        } catch (const DegenerateCurveError&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    };
    detail::sign_change_events(
        ts, Lv, [](std::size_t, std::size_t) { return true; }, L_at, false, 1e-12, flag::kAffineInflection,
        scan.events);
    std::sort(scan.events.begin(), scan.events.end(),
              [](const ScanEvent& a, const ScanEvent& b) { return a.t < b.t; });

    bool all = !R.empty();
    for (const auto& r : R) {
        if (!r.theta3) {
            all = false;
            continue;
        }
        scan.theta3_sup = std::max(scan.theta3_sup, std::abs(*r.theta3));
    }
    scan.linear_complex = all && scan.events.empty() && scan.theta3_sup <= opt.complex_tol;
    for (auto& r : R) {
        r.linear_complex = scan.linear_complex;
        auto it = std::find(r.flags.begin(), r.flags.end(), std::string(flag::kLinearComplex));
        if (scan.linear_complex && it == r.flags.end()) r.flags.push_back(flag::kLinearComplex);
        if (!scan.linear_complex && it != r.flags.end()) r.flags.erase(it);
    }
    return scan;
}

}  // namespace gaffine
