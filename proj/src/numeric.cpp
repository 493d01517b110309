#include "gaffine/numeric.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <boost/math/tools/roots.hpp>

#include "gaffine/errors.hpp"

namespace gaffine {

namespace {

std::size_t nearest_index(const std::vector<double>& grid, double t) {
    auto it = std::lower_bound(grid.begin(), grid.end(), t);
    if (it == grid.end()) return grid.size() - 1;
    std::size_t i = static_cast<std::size_t>(it - grid.begin());
    if (i > 0 && std::abs(grid[i - 1] - t) <= std::abs(grid[i] - t)) --i;
    return i;
}

}  // namespace

bool stencil_fits(const std::vector<double>& grid, double t, int width) {
    if (grid.size() < static_cast<std::size_t>(width)) return false;
    const std::size_t half = static_cast<std::size_t>(width / 2);
    const std::size_t i = nearest_index(grid, t);
    return i >= half && i + half < grid.size();
}

std::vector<double> local_taylor(const std::vector<double>& grid, const std::vector<double>& values,
                                 double t, int order, int width, bool one_sided_ends) {
    if (order + 1 > width) throw InsufficientOrderError("stencil too narrow for the requested order");
    if (grid.size() < static_cast<std::size_t>(width)) throw InsufficientOrderError("too few samples for the stencil");
    const std::size_t half = static_cast<std::size_t>(width / 2);
    std::size_t lo;
    if (one_sided_ends) {
        if (t < grid.front() || t > grid.back())
            throw OutOfIntervalError("t = " + std::to_string(t) + " outside the sampled interval");
        const std::size_t i = nearest_index(grid, t);
        lo = std::min(i > half ? i - half : 0, grid.size() - static_cast<std::size_t>(width));
    } else {
        if (!stencil_fits(grid, t, width))
            throw OutOfIntervalError("t = " + std::to_string(t) + " outside interior stencil reach of the samples");
        lo = nearest_index(grid, t) - half;
    }
    const double h = (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);

    Eigen::MatrixXd V(width, width);
    Eigen::VectorXd y(width);
    for (int r = 0; r < width; ++r) {
        const double u = (grid[lo + r] - t) / h;
        double p = 1.0;
        for (int c = 0; c < width; ++c) {
            V(r, c) = p;
            p *= u;
        }
        y(r) = values[lo + r];
    }
    const Eigen::VectorXd c = V.partialPivLu().solve(y);
    std::vector<double> out(order + 1);
    double scale = 1.0;
    for (int j = 0; j <= order; ++j) {
        out[j] = c(j) / scale;
        scale *= h;
    }
    return out;
}

std::vector<double> fd_derivative(const std::vector<double>& f, double h) {
    const std::size_t n = f.size();
    if (n < 5) throw InsufficientOrderError("fourth-order differences need at least 5 points");
    std::vector<double> d(n);
    for (std::size_t i = 2; i + 2 < n; ++i) d[i] = (f[i - 2] - 8 * f[i - 1] + 8 * f[i + 1] - f[i + 2]) / (12 * h);
    d[0] = (-25 * f[0] + 48 * f[1] - 36 * f[2] + 16 * f[3] - 3 * f[4]) / (12 * h);
    d[1] = (-3 * f[0] - 10 * f[1] + 18 * f[2] - 6 * f[3] + f[4]) / (12 * h);
    d[n - 1] = (25 * f[n - 1] - 48 * f[n - 2] + 36 * f[n - 3] - 16 * f[n - 4] + 3 * f[n - 5]) / (12 * h);
    d[n - 2] = (3 * f[n - 1] + 10 * f[n - 2] - 18 * f[n - 3] + 6 * f[n - 4] - f[n - 5]) / (12 * h);
    return d;
}

double simpson(const std::vector<double>& f, double h) {
    const std::size_t n = f.size();
    if (n < 2) return 0.0;
    if (n == 2) return 0.5 * h * (f[0] + f[1]);
    if (n == 3) return h / 3 * (f[0] + 4 * f[1] + f[2]);
    const std::size_t intervals = n - 1;
    std::size_t end = intervals % 2 == 0 ? n - 1 : n - 4;
    double s = f[0] + f[end];
    for (std::size_t i = 1; i < end; ++i) s += (i % 2 ? 4.0 : 2.0) * f[i];
    s *= h / 3;
    if (end != n - 1) s += 3 * h / 8 * (f[end] + 3 * f[end + 1] + 3 * f[end + 2] + f[end + 3]);
    return s;
}

namespace {

double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6 * (fa + 4 * flm + fm);
    const double right = (b - m) / 6 * (fm + 4 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15 * tol) return left + right + delta / 15;
    return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double rel_tol,
                        int max_depth) {
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    // Coarse magnitude estimate so the tolerance is relative.
    double mag = 0.0;
    for (int i = 0; i <= 16; ++i) mag += std::abs(f(a + (b - a) * i / 16.0));
    mag = mag / 17 * std::abs(b - a);
    const double tol = rel_tol * std::max(mag, 1e-300);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

double bisect_root(const std::function<double(double)>& f, double a, double b, double tol) {
    const double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0) throw RootFinderError("bisection bracket does not change sign");
    auto done = [tol](double lo, double hi) { return std::abs(hi - lo) <= tol; };
    const auto r = boost::math::tools::bisect(f, a, b, done);
    return 0.5 * (r.first + r.second);
}

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = a;
        return v;
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    v.back() = b;
    return v;
}

}  // namespace gaffine
