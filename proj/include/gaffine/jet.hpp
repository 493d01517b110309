#pragma once

#include <string_view>
#include <vector>

namespace gaffine {

constexpr int kDefaultJetOrder = 8;

// Truncated Taylor series c_0 + c_1 h + ... + c_N h^N with c_j = f^(j)(t0)/j!.
// Binary operations between jets of different order truncate to the smaller one.
class Jet {
public:
    Jet() : c_(1, 0.0) {}
    explicit Jet(int order, double c0 = 0.0);
    explicit Jet(std::vector<double> coeffs);

    static Jet constant(double v, int order) { return Jet(order, v); }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<double>& coeffs() const { return c_; }
    double operator[](int j) const { return c_[j]; }
    double& operator[](int j) { return c_[j]; }
    double value() const { return c_[0]; }

    // k! * c_k
    double derivative(int k) const;
    // Jet of f' (one order lower).
    Jet differentiate() const;
    // Jet of the antiderivative with the given constant term (one order higher).
    Jet integrate(double c0 = 0.0) const;
    Jet truncated(int order) const;
    // True when every coefficient beyond c_0 is exactly zero.
    bool is_constant() const;

    Jet operator-() const;
    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(const Jet& o);
    Jet& operator/=(const Jet& o);
    Jet& operator+=(double v) { c_[0] += v; return *this; }
    Jet& operator-=(double v) { c_[0] -= v; return *this; }
    Jet& operator*=(double v);
    Jet& operator/=(double v);

private:
    std::vector<double> c_;
};

Jet jet_variable(double t0, int order);

Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator/(const Jet& a, const Jet& b);
Jet operator+(Jet a, double v);
Jet operator+(double v, Jet a);
Jet operator-(Jet a, double v);
Jet operator-(double v, const Jet& a);
Jet operator*(Jet a, double v);
Jet operator*(double v, Jet a);
Jet operator/(Jet a, double v);
Jet operator/(double v, const Jet& a);

Jet pow_int(const Jet& x, int n);
Jet pow_real(const Jet& x, double p);

Jet exp(const Jet& x);
Jet log(const Jet& x);
Jet sin(const Jet& x);
Jet cos(const Jet& x);
Jet sinh(const Jet& x);
Jet cosh(const Jet& x);
Jet tan(const Jet& x);
Jet tanh(const Jet& x);
Jet sqrt(const Jet& x);
Jet atan(const Jet& x);
Jet abs(const Jet& x);

enum class ElemFn { Exp, Log, Sin, Cos, Sinh, Cosh, Tan, Tanh, Sqrt, Atan, Abs };

// Look up an elementary function by name; returns false for unknown names.
bool elem_fn_from_name(std::string_view name, ElemFn& out);
const char* elem_fn_name(ElemFn fn);
Jet apply(ElemFn fn, const Jet& x);

// Composition g(x0 + d(t)) where outer holds the Taylor coefficients of g at x0
// and inner.value() is ignored (treated as the base point).
Jet compose(const std::vector<double>& outer, const Jet& inner);

}  // namespace gaffine
