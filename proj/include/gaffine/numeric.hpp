#pragma once

#include <functional>
#include <vector>

namespace gaffine {

// Taylor coefficients c_0..c_order at t of the interpolating polynomial through
// the `width` grid nodes nearest to t. On a uniform grid with t at a node and
// width 7 this is the centered difference formula, accurate to O(h^4) or better
// for every derivative up to order 4. With one_sided_ends the stencil is shifted
// inward near the ends instead of throwing.
std::vector<double> local_taylor(const std::vector<double>& grid, const std::vector<double>& values,
                                 double t, int order, int width = 7, bool one_sided_ends = false);

// True when the node nearest to t has `width / 2` neighbours on both sides.
bool stencil_fits(const std::vector<double>& grid, double t, int width = 7);

// First derivative on a uniform grid, fourth order everywhere (one-sided at the ends).
std::vector<double> fd_derivative(const std::vector<double>& values, double h);

// Composite Simpson on a uniform grid; an odd interval count falls back to the
// 3/8 rule on the last three intervals.
double simpson(const std::vector<double>& values, double h);

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double rel_tol = 1e-10,
                        int max_depth = 40);

// Root of f in [a, b] with f(a) f(b) <= 0, by bisection.
double bisect_root(const std::function<double(double)>& f, double a, double b, double tol = 1e-13);

std::vector<double> linspace(double a, double b, std::size_t n);

}  // namespace gaffine
