#include "gaffine/profile.hpp"

#include <cmath>

#include "gaffine/errors.hpp"
#include "gaffine/numeric.hpp"

namespace gaffine {

ScalarProfile ScalarProfile::from_expr(Expr e, std::map<std::string, double> params, std::string var) {
    ScalarProfile p;
    p.expr_ = std::move(e);
    p.params_ = std::move(params);
    p.var_ = std::move(var);
    for (const auto& s : p.expr_.symbols())
        if (s != p.var_ && !p.params_.count(s)) throw DomainError("unbound symbol '" + s + "' in profile");
    return p;
}

ScalarProfile ScalarProfile::parse(const std::string& src, std::map<std::string, double> params, std::string var) {
    return from_expr(parse_expression(src), std::move(params), std::move(var));
}

ScalarProfile ScalarProfile::constant(double v) { return from_expr(Expr::constant(v)); }

ScalarProfile ScalarProfile::from_samples(std::vector<double> grid, std::vector<double> values) {
    if (grid.size() != values.size()) throw DomainError("profile grid and values differ in length");
    if (grid.size() < 9) throw DomainError("sampled profile needs at least 9 points");
    const double h = (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);
    if (!(h > 0)) throw DomainError("profile grid must be increasing");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (std::abs(grid[i] - grid[i - 1] - h) > 1e-9 * std::max(1.0, std::abs(h)))
            throw DomainError("profile grid must be uniform");
    ScalarProfile p;
    p.sampled_ = std::make_shared<const std::pair<std::vector<double>, std::vector<double>>>(std::move(grid),
                                                                                            std::move(values));
    return p;
}

Jet ScalarProfile::jet(double t, int order) const {
    if (sampled_) {
        if (order > kMaxSampledOrder)
            throw InsufficientOrderError("sampled profile supports derivatives up to order " +
                                         std::to_string(kMaxSampledOrder));
        return Jet(local_taylor(sampled_->first, sampled_->second, t, order, 7, true));
    }
    if (expr_.empty()) throw DomainError("empty profile");
    return expr_.eval(jet_variable(t, std::max(order, 1)), params_, var_).truncated(order);
}

double ScalarProfile::operator()(double t) const {
    if (sampled_) return jet(t, 0)[0];
    return expr_.eval(t, params_, var_);
}

Jet ScalarProfile::eval_at(const Jet& t) const {
    if (sampled_) throw DomainError("composition needs an expression profile");
    return expr_.eval(t, params_, var_);
}

std::string ScalarProfile::to_string() const {
    if (sampled_) return "<samples:" + std::to_string(sampled_->first.size()) + ">";
    return expr_.to_string();
}

}  // namespace gaffine
