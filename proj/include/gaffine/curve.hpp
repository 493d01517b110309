#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gaffine/expr.hpp"
#include "gaffine/jet.hpp"

namespace gaffine {

// Uniformly sampled curve: strictly increasing t and one value array per coordinate.
struct SampledCurve {
    std::vector<double> t;
    std::vector<std::vector<double>> coords;
};

// Plane (dimension 2) or space (dimension 3) curve. Dimension 4 is accepted for
// homogeneous coordinates of projective space curves.
struct CurveSpec {
    enum class Source { Builtin, Expressions, Samples };

    int dimension = 2;
    Source source = Source::Expressions;
    std::string builtin_name;
    std::vector<Expr> exprs;
    std::map<std::string, double> params;
    std::shared_ptr<const SampledCurve> samples;
    double t_min = 0.0;
    double t_max = 1.0;
    int orientation = +1;

    static CurveSpec from_expressions(std::vector<Expr> exprs, double t_min, double t_max,
                                      std::map<std::string, double> params = {});
    static CurveSpec from_strings(const std::vector<std::string>& coords, double t_min, double t_max,
                                  std::map<std::string, double> params = {});
    static CurveSpec from_samples(SampledCurve samples);
    // Catalog entry with its default interval; `overrides` replace default parameters.
    static CurveSpec builtin(const std::string& name, const std::map<std::string, double>& overrides = {});

    bool is_sampled() const { return source == Source::Samples; }
};

// Jets of every coordinate at t. Sampled curves support order <= 4.
std::vector<Jet> eval_curve(const CurveSpec& spec, double t, int order);

// Jets of every coordinate with the parameter replaced by an arbitrary jet
// (composition x(tau(u))); expression curves only, orientation applied.
std::vector<Jet> eval_curve_at_jet(const CurveSpec& spec, const Jet& tau);

CurveSpec reverse_orientation(const CurveSpec& spec);

constexpr int kMaxSampledOrder = 4;

}  // namespace gaffine
