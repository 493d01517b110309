#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gaffine/expr.hpp"
#include "gaffine/jet.hpp"

namespace gaffine {

// A scalar function of one variable given by an expression or by uniform samples.
class ScalarProfile {
public:
    ScalarProfile() = default;
    static ScalarProfile from_expr(Expr e, std::map<std::string, double> params = {}, std::string var = "t");
    static ScalarProfile parse(const std::string& src, std::map<std::string, double> params = {},
                               std::string var = "t");
    static ScalarProfile constant(double v);
    static ScalarProfile from_samples(std::vector<double> grid, std::vector<double> values);

    // Sampled profiles use a 7-point local polynomial (shifted inward at the ends),
    // so at most order 6 and only about 4 reliable derivatives.
    Jet jet(double t, int order) const;
    double operator()(double t) const;
    Jet eval_at(const Jet& t) const;  // expression profiles only

    bool is_sampled() const { return sampled_ != nullptr; }
    bool empty() const { return expr_.empty() && !sampled_; }
    std::string to_string() const;
    const std::vector<double>* grid() const { return sampled_ ? &sampled_->first : nullptr; }

    static constexpr int kMaxSampledOrder = 6;

private:
    Expr expr_;
    std::map<std::string, double> params_;
    std::string var_ = "t";
    std::shared_ptr<const std::pair<std::vector<double>, std::vector<double>>> sampled_;
};

}  // namespace gaffine
