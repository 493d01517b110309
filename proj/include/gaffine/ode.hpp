#pragma once

#include <functional>
#include <vector>

namespace gaffine {

using State = std::vector<double>;
using OdeRhs = std::function<void(double t, const State& y, State& dydt)>;

struct OdeOptions {
    double rtol = 1e-10;
    double atol = 1e-10;
    double initial_step = 0.0;  // 0 picks a step from the problem scale
    double min_step = 1e-14;    // relative to the interval length
    long max_steps = 2'000'000;
};

struct OdeStats {
    long steps = 0;
    long evaluations = 0;
};

// Piecewise quartic continuous extension of a Dormand-Prince run, stored as
// five equispaced samples per step.
class DenseSolution {
public:
    double t_begin() const { return t_.empty() ? 0.0 : t_.front(); }
    double t_end() const { return t_.empty() ? 0.0 : t_.back(); }
    std::size_t dimension() const { return dim_; }
    State operator()(double t) const;

private:
    friend class DormandPrince;
    std::size_t dim_ = 0;
    std::vector<double> t_;                 // step boundaries, monotone in the run direction
    static constexpr int kNodes = 5;
    std::vector<std::vector<double>> nodes_;  // kNodes*dim samples per step
};

struct OdeResult {
    DenseSolution solution;
    OdeStats stats;
};

// Adaptive Dormand-Prince 5(4) with dense output (Boost.Odeint).
class DormandPrince {
public:
    explicit DormandPrince(OdeOptions opt = {}) : opt_(opt) {}
    // Integrates from t0 to t1 (either direction). Throws IntegratorError on
    // step underflow, step-count exhaustion, or a non-finite state.
    OdeResult integrate(const OdeRhs& f, double t0, const State& y0, double t1) const;

private:
    OdeOptions opt_;
};

}  // namespace gaffine
