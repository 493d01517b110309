#include "gaffine/curve.hpp"

#include <cmath>

#include "gaffine/catalog.hpp"
#include "gaffine/errors.hpp"
#include "gaffine/numeric.hpp"

namespace gaffine {

namespace {

void check_dimension(std::size_t n) {
    if (n < 2 || n > 4) throw DomainError("a curve needs 2, 3 or 4 coordinates, got " + std::to_string(n));
}

void check_interval(const CurveSpec& spec, double u) {
    const double slack = 1e-9 * std::max(1.0, spec.t_max - spec.t_min);
    if (u < spec.t_min - slack || u > spec.t_max + slack)
        throw OutOfIntervalError("t = " + std::to_string(u) + " outside [" + std::to_string(spec.t_min) + ", " +
                                 std::to_string(spec.t_max) + "]");
}

Jet flip_odd(Jet j) {
    for (int k = 1; k <= j.order(); k += 2) j[k] = -j[k];
    return j;
}

template <class F>
Jet with_coordinate(std::size_t i, F&& f) {
    try {
        return f();
    } catch (const DomainError& e) {
        throw DomainError("coordinate " + std::to_string(i + 1) + ": " + e.what());
    } catch (const SingularPointError& e) {
        throw SingularPointError("coordinate " + std::to_string(i + 1) + ": " + e.what());
    }
}

}  // namespace

CurveSpec CurveSpec::from_expressions(std::vector<Expr> exprs, double t_min, double t_max,
                                      std::map<std::string, double> params) {
    check_dimension(exprs.size());
    if (!(t_min < t_max)) throw DomainError("curve interval needs t_min < t_max");
    CurveSpec s;
    s.dimension = static_cast<int>(exprs.size());
    s.source = Source::Expressions;
    s.exprs = std::move(exprs);
    s.params = std::move(params);
    s.t_min = t_min;
    s.t_max = t_max;
    return s;
}

CurveSpec CurveSpec::from_strings(const std::vector<std::string>& coords, double t_min, double t_max,
                                  std::map<std::string, double> params) {
    std::vector<Expr> ex;
    for (const auto& c : coords) ex.push_back(parse_expression(c));
    return from_expressions(std::move(ex), t_min, t_max, std::move(params));
}

CurveSpec CurveSpec::from_samples(SampledCurve samples) {
    check_dimension(samples.coords.size());
    const auto& t = samples.t;
    if (t.size() < 9) throw DomainError("sampled curves need at least 9 points");
    for (const auto& c : samples.coords)
        if (c.size() != t.size()) throw DomainError("coordinate arrays must match the t grid");
    const double h = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (!(t[i] > t[i - 1])) throw DomainError("sample grid must be strictly increasing");
        if (std::abs((t[i] - t[i - 1]) - h) > 1e-6 * h) throw DomainError("sample grid must be uniform");
    }
    CurveSpec s;
    s.dimension = static_cast<int>(samples.coords.size());
    s.source = Source::Samples;
    s.t_min = t.front();
    s.t_max = t.back();
    s.samples = std::make_shared<const SampledCurve>(std::move(samples));
    return s;
}

CurveSpec CurveSpec::builtin(const std::string& name, const std::map<std::string, double>& overrides) {
    const CatalogEntry& e = catalog_entry(name);
    auto params = e.defaults;
    for (const auto& [k, v] : overrides) {
        if (!params.count(k)) throw DomainError("builtin '" + name + "' has no parameter '" + k + "'");
        params[k] = v;
    }
    CurveSpec s = from_strings(e.coords, e.t_min, e.t_max, params);
    s.source = Source::Builtin;
    s.builtin_name = name;
    return s;
}

std::vector<Jet> eval_curve(const CurveSpec& spec, double u, int order) {
    if (order < 0) throw InvalidOrderError("negative jet order");
    check_interval(spec, u);
    const double t = spec.orientation * u;
    std::vector<Jet> out;
    out.reserve(spec.dimension);
    if (spec.is_sampled()) {
        if (order > kMaxSampledOrder)
            throw InsufficientOrderError("sampled curves provide derivatives up to order 4 only; order " +
                                         std::to_string(order) +
                                         " was requested (invariants needing 5th or higher derivatives are refused "
                                         "for sampled input)");
        for (const auto& c : spec.samples->coords) out.emplace_back(local_taylor(spec.samples->t, c, t, order));
    } else {
        const Jet tj = order == 0 ? Jet::constant(t, 0) : jet_variable(t, order);
        for (std::size_t i = 0; i < spec.exprs.size(); ++i)
            out.push_back(with_coordinate(i, [&] { return spec.exprs[i].eval(tj, spec.params); }));
    }
    if (spec.orientation < 0)
        for (auto& j : out) j = flip_odd(j);
    return out;
}

std::vector<Jet> eval_curve_at_jet(const CurveSpec& spec, const Jet& tau) {
    if (spec.is_sampled()) throw DomainError("composition with a jet needs an expression curve");
    const Jet t = spec.orientation < 0 ? -tau : tau;
    std::vector<Jet> out;
    for (std::size_t i = 0; i < spec.exprs.size(); ++i)
        out.push_back(with_coordinate(i, [&] { return spec.exprs[i].eval(t, spec.params); }));
    return out;
}

CurveSpec reverse_orientation(const CurveSpec& spec) {
    CurveSpec r = spec;
    r.orientation = -spec.orientation;
    r.t_min = -spec.t_max;
    r.t_max = -spec.t_min;
    return r;
}

}  // namespace gaffine
