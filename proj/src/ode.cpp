#include "gaffine/ode.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <boost/numeric/odeint.hpp>

#include "gaffine/errors.hpp"

namespace gaffine {

namespace odeint = boost::numeric::odeint;

namespace {

bool finite_state(const State& y) {
    return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

[[noreturn]] void fail(const char* what, double t) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s at t = %.17g", what, t);
    throw IntegratorError(buf);
}

}  // namespace

State DenseSolution::operator()(double t) const {
    if (t_.empty()) throw IntegratorError("empty dense solution");
    const bool forward = t_.back() >= t_.front();
    // Locate the step containing t (clamped to the ends).
    std::size_t i;
    if (forward) {
        auto it = std::upper_bound(t_.begin(), t_.end(), t);
        i = it == t_.begin() ? 0 : static_cast<std::size_t>(it - t_.begin()) - 1;
    } else {
        auto it = std::upper_bound(t_.begin(), t_.end(), t, [](double a, double b) { return a > b; });
        i = it == t_.begin() ? 0 : static_cast<std::size_t>(it - t_.begin()) - 1;
    }
    if (i >= nodes_.size()) i = nodes_.size() - 1;
    const double h = t_[i + 1] - t_[i];
    const double u = h == 0.0 ? 0.0 : 4.0 * (t - t_[i]) / h;
    // Lagrange weights on the nodes u = 0..4.
    double w[kNodes];
    for (int j = 0; j < kNodes; ++j) {
        double num = 1.0, den = 1.0;
        for (int m = 0; m < kNodes; ++m) {
            if (m == j) continue;
            num *= u - m;
            den *= j - m;
        }
        w[j] = num / den;
    }
    const auto& r = nodes_[i];
    State y(dim_, 0.0);
    for (int j = 0; j < kNodes; ++j)
        for (std::size_t k = 0; k < dim_; ++k) y[k] += w[j] * r[j * dim_ + k];
    return y;
}

OdeResult DormandPrince::integrate(const OdeRhs& f, double t0, const State& y0, double t1) const {
    const std::size_t n = y0.size();
    OdeResult out;
    DenseSolution& sol = out.solution;
    sol.dim_ = n;
    sol.t_.push_back(t0);
    if (t0 == t1) {
        std::vector<double> r;
        for (int j = 0; j < DenseSolution::kNodes; ++j) r.insert(r.end(), y0.begin(), y0.end());
        sol.t_.push_back(t1);
        sol.nodes_.push_back(std::move(r));
        return out;
    }
    const double span = std::abs(t1 - t0);
    const double dir = t1 > t0 ? 1.0 : -1.0;
    const double h0 = opt_.initial_step > 0 ? opt_.initial_step : std::min(span, 1e-3 * std::max(1.0, span));
    const double h_floor = opt_.min_step * std::max(1.0, span);

    auto rhs = [&](const State& y, State& dy, double t) {
        dy.resize(n);
        f(t, y, dy);
        ++out.stats.evaluations;
    };
    auto stepper = odeint::make_dense_output(opt_.atol, opt_.rtol, odeint::runge_kutta_dopri5<State>());
    stepper.initialize(y0, t0, dir * h0);

    State y(n);
    double t = t0;
    try {
        while (dir * (t1 - t) > 0) {
            if (out.stats.steps >= opt_.max_steps) fail("step budget exhausted", t);
            // Never let a step sample the rhs past t1.
            if (dir * (t + stepper.current_time_step() - t1) > 0) {
                y = stepper.current_state();
                stepper.initialize(y, t, t1 - t);
            }
            const auto [a, b] = stepper.do_step(rhs);
            if (!finite_state(stepper.current_state())) fail("non-finite state", b);
            ++out.stats.steps;
            const double end = dir * (b - t1) >= 0 ? t1 : b;
            std::vector<double> r(DenseSolution::kNodes * n);
            for (int j = 0; j < DenseSolution::kNodes; ++j) {
                const double s = a + (end - a) * j / (DenseSolution::kNodes - 1.0);
                if (j == 0)
                    y = stepper.previous_state();
                else if (j == DenseSolution::kNodes - 1 && end == b)
                    y = stepper.current_state();
                else
                    stepper.calc_state(s, y);
                std::copy(y.begin(), y.end(), r.begin() + j * n);
            }
            sol.nodes_.push_back(std::move(r));
            sol.t_.push_back(end);
            t = end;
            if (t != t1 && std::abs(stepper.current_time_step()) < h_floor) fail("step size underflow", t);
        }
    } catch (const odeint::odeint_error& e) {
        fail(e.what(), t);
    }
    return out;
}

}  // namespace gaffine
