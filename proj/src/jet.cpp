#include "gaffine/jet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "gaffine/errors.hpp"

namespace gaffine {

namespace {

std::string fmt_c0(const char* fn, double c0) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s: argument c0 = %.17g outside domain", fn, c0);
    return buf;
}

int common_order(const Jet& a, const Jet& b) { return std::min(a.order(), b.order()); }

}  // namespace

Jet::Jet(int order, double c0) {
    if (order < 0) throw InvalidOrderError("jet order must be >= 0");
    c_.assign(order + 1, 0.0);
    c_[0] = c0;
}

Jet::Jet(std::vector<double> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw InvalidOrderError("jet needs at least one coefficient");
}

double Jet::derivative(int k) const {
    if (k < 0 || k > order())
        throw InsufficientOrderError("derivative of order " + std::to_string(k) +
                                     " requested from jet of order " + std::to_string(order()));
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f * c_[k];
}

Jet Jet::differentiate() const {
    if (order() < 1) throw InsufficientOrderError("cannot differentiate an order-0 jet");
    Jet d(order() - 1);
    for (int j = 1; j <= order(); ++j) d.c_[j - 1] = j * c_[j];
    return d;
}

Jet Jet::integrate(double c0) const {
    Jet r(order() + 1, c0);
    for (int j = 0; j <= order(); ++j) r.c_[j + 1] = c_[j] / (j + 1);
    return r;
}

Jet Jet::truncated(int n) const {
    if (n > order()) throw InsufficientOrderError("cannot extend a jet by truncation");
    return Jet(std::vector<double>(c_.begin(), c_.begin() + n + 1));
}

bool Jet::is_constant() const {
    return std::all_of(c_.begin() + 1, c_.end(), [](double v) { return v == 0.0; });
}

Jet Jet::operator-() const {
    Jet r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
}

Jet& Jet::operator+=(const Jet& o) {
    c_.resize(common_order(*this, o) + 1);
    for (std::size_t j = 0; j < c_.size(); ++j) c_[j] += o.c_[j];
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    c_.resize(common_order(*this, o) + 1);
    for (std::size_t j = 0; j < c_.size(); ++j) c_[j] -= o.c_[j];
    return *this;
}

Jet& Jet::operator*=(const Jet& o) { return *this = *this * o; }
Jet& Jet::operator/=(const Jet& o) { return *this = *this / o; }

Jet& Jet::operator*=(double v) {
    for (auto& c : c_) c *= v;
    return *this;
}

Jet& Jet::operator/=(double v) {
    if (v == 0.0) throw SingularPointError("division of jet by zero");
    for (auto& c : c_) c /= v;
    return *this;
}

Jet jet_variable(double t0, int order) {
    if (order < 1) throw InvalidOrderError("jet_variable needs order >= 1");
    Jet j(order, t0);
    j[1] = 1.0;
    return j;
}

Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }

Jet operator*(const Jet& a, const Jet& b) {
    const int n = common_order(a, b);
    Jet r(n);
    for (int k = 0; k <= n; ++k) {
        double s = 0.0;
        for (int i = 0; i <= k; ++i) s += a[i] * b[k - i];
        r[k] = s;
    }
    return r;
}

Jet operator/(const Jet& a, const Jet& b) {
    if (b[0] == 0.0) throw SingularPointError("division by a series with zero constant term");
    const int n = common_order(a, b);
    Jet r(n);
    for (int k = 0; k <= n; ++k) {
        double s = a[k];
        for (int i = 1; i <= k; ++i) s -= b[i] * r[k - i];
        r[k] = s / b[0];
    }
    return r;
}

Jet operator+(Jet a, double v) { return a += v; }
Jet operator+(double v, Jet a) { return a += v; }
Jet operator-(Jet a, double v) { return a -= v; }
Jet operator-(double v, const Jet& a) { return -a + v; }
Jet operator*(Jet a, double v) { return a *= v; }
Jet operator*(double v, Jet a) { return a *= v; }
Jet operator/(Jet a, double v) { return a /= v; }
Jet operator/(double v, const Jet& a) { return Jet::constant(v, a.order()) / a; }

Jet pow_int(const Jet& x, int n) {
    if (n < 0) {
        if (x[0] == 0.0) throw SingularPointError("negative integer power of a series with zero constant term");
        return 1.0 / pow_int(x, -n);
    }
    Jet result = Jet::constant(1.0, x.order());
    Jet base = x;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

Jet pow_real(const Jet& x, double p) {
    if (!(x[0] > 0.0)) throw DomainError(fmt_c0("pow_real", x[0]));
    const int n = x.order();
    Jet y(n, std::pow(x[0], p));
    for (int k = 1; k <= n; ++k) {
        double s = 0.0;
        for (int j = 1; j <= k; ++j) s += ((p + 1.0) * j - k) * x[j] * y[k - j];
        y[k] = s / (k * x[0]);
    }
    return y;
}

Jet exp(const Jet& x) {
    const int n = x.order();
    Jet e(n, std::exp(x[0]));
    for (int k = 1; k <= n; ++k) {
        double s = 0.0;
        for (int j = 1; j <= k; ++j) s += j * x[j] * e[k - j];
        e[k] = s / k;
    }
    return e;
}

Jet log(const Jet& x) {
    if (!(x[0] > 0.0)) throw DomainError(fmt_c0("log", x[0]));
    const int n = x.order();
    Jet l(n, std::log(x[0]));
    for (int k = 1; k <= n; ++k) {
        double s = 0.0;
        for (int j = 1; j < k; ++j) s += j * l[j] * x[k - j];
        l[k] = (x[k] - s / k) / x[0];
    }
    return l;
}

namespace {

// Simultaneous recurrences for (sin, cos) or (sinh, cosh); sign = -1 for the
// circular pair and +1 for the hyperbolic pair.
void sin_cos(const Jet& x, Jet& s, Jet& c, double sign) {
    const int n = x.order();
    s = Jet(n, sign < 0 ? std::sin(x[0]) : std::sinh(x[0]));
    c = Jet(n, sign < 0 ? std::cos(x[0]) : std::cosh(x[0]));
    for (int k = 1; k <= n; ++k) {
        double ss = 0.0, cc = 0.0;
        for (int j = 1; j <= k; ++j) {
            ss += j * x[j] * c[k - j];
            cc += j * x[j] * s[k - j];
        }
        s[k] = ss / k;
        c[k] = sign * cc / k;
    }
}

// y' = (1 + sign*y^2) x'
Jet tan_like(const Jet& x, double y0, double sign) {
    const int n = x.order();
    Jet y(n, y0);
    std::vector<double> u(n + 1, 0.0);
    u[0] = 1.0 + sign * y0 * y0;
    for (int k = 1; k <= n; ++k) {
        double s = 0.0;
        for (int j = 1; j <= k; ++j) s += j * x[j] * u[k - j];
        y[k] = s / k;
        double q = 0.0;
        for (int i = 0; i <= k; ++i) q += y[i] * y[k - i];
        u[k] = sign * q;
    }
    return y;
}

}  // namespace

Jet sin(const Jet& x) { Jet s, c; sin_cos(x, s, c, -1.0); return s; }
Jet cos(const Jet& x) { Jet s, c; sin_cos(x, s, c, -1.0); return c; }
Jet sinh(const Jet& x) { Jet s, c; sin_cos(x, s, c, 1.0); return s; }
Jet cosh(const Jet& x) { Jet s, c; sin_cos(x, s, c, 1.0); return c; }

Jet tan(const Jet& x) {
    if (std::abs(std::cos(x[0])) < 1e-15) throw DomainError(fmt_c0("tan", x[0]));
    return tan_like(x, std::tan(x[0]), 1.0);
}

Jet tanh(const Jet& x) { return tan_like(x, std::tanh(x[0]), -1.0); }

Jet sqrt(const Jet& x) {
    if (!(x[0] > 0.0)) throw DomainError(fmt_c0("sqrt", x[0]));
    const int n = x.order();
    Jet s(n, std::sqrt(x[0]));
    for (int k = 1; k <= n; ++k) {
        double q = x[k];
        for (int j = 1; j < k; ++j) q -= s[j] * s[k - j];
        s[k] = q / (2.0 * s[0]);
    }
    return s;
}

Jet atan(const Jet& x) {
    if (x.order() == 0) return Jet(0, std::atan(x[0]));
    Jet d = x.differentiate() / (1.0 + x.truncated(x.order() - 1) * x.truncated(x.order() - 1));
    return d.integrate(std::atan(x[0]));
}

Jet abs(const Jet& x) {
    if (x[0] == 0.0) throw DomainError(fmt_c0("abs", x[0]));
    return x[0] > 0.0 ? x : -x;
}

namespace {
struct FnName {
    const char* name;
    ElemFn fn;
};
constexpr FnName kFnNames[] = {
    {"exp", ElemFn::Exp},   {"log", ElemFn::Log},   {"sin", ElemFn::Sin},
    {"cos", ElemFn::Cos},   {"sinh", ElemFn::Sinh}, {"cosh", ElemFn::Cosh},
    {"tan", ElemFn::Tan},   {"tanh", ElemFn::Tanh}, {"sqrt", ElemFn::Sqrt},
    {"atan", ElemFn::Atan}, {"abs", ElemFn::Abs},
};
}  // namespace

bool elem_fn_from_name(std::string_view name, ElemFn& out) {
    for (const auto& f : kFnNames)
        if (name == f.name) {
            out = f.fn;
            return true;
        }
    return false;
}

const char* elem_fn_name(ElemFn fn) {
    for (const auto& f : kFnNames)
        if (f.fn == fn) return f.name;
    return "?";
}

Jet apply(ElemFn fn, const Jet& x) {
    switch (fn) {
        case ElemFn::Exp: return exp(x);
        case ElemFn::Log: return log(x);
        case ElemFn::Sin: return sin(x);
        case ElemFn::Cos: return cos(x);
        case ElemFn::Sinh: return sinh(x);
        case ElemFn::Cosh: return cosh(x);
        case ElemFn::Tan: return tan(x);
        case ElemFn::Tanh: return tanh(x);
        case ElemFn::Sqrt: return sqrt(x);
        case ElemFn::Atan: return atan(x);
        case ElemFn::Abs: return abs(x);
    }
    return x;
}

Jet compose(const std::vector<double>& outer, const Jet& inner) {
    const int n = inner.order();
    Jet d = inner;
    d[0] = 0.0;
    // Horner in d; powers of d beyond n vanish after truncation.
    const int m = std::min<int>(n, static_cast<int>(outer.size()) - 1);
    Jet r = Jet::constant(outer[m], n);
    for (int i = m - 1; i >= 0; --i) r = r * d + outer[i];
    return r;
}

}  // namespace gaffine
