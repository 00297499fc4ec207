#include "comonotone/verify.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace comonotone {

namespace {
constexpr double kPi = std::numbers::pi;
}

double divided_difference(std::span<const double> nodes, std::span<const double> values) {
    if (nodes.size() != values.size() || nodes.empty())
        throw std::invalid_argument("divided_difference: node and value counts differ or are zero");
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t k = i + 1; k < nodes.size(); ++k)
            if (nodes[i] == nodes[k]) throw std::invalid_argument("divided_difference: duplicate nodes");
    std::vector<double> t(values.begin(), values.end());
    const std::size_t m = nodes.size();
    for (std::size_t order = 1; order < m; ++order)
        for (std::size_t i = 0; i + order < m; ++i)
            t[i] = (t[i + 1] - t[i]) / (nodes[i + order] - nodes[i]);
    return t[0];
}

double derivative_margin(const TrigPoly& tau_prime, const TrigPoly& pi, std::size_t grid_points) {
    const auto dv = eval_uniform(tau_prime, grid_points);
    const auto pv = eval_uniform(pi, grid_points);
    double lo = 0.0, scale = 0.0;
    for (std::size_t m = 0; m < grid_points; ++m) {
        const double v = dv[m] * pv[m];
        lo = std::min(lo, v);
        scale = std::max(scale, std::abs(v));
    }
    return scale > 0.0 ? lo / scale : 0.0;
}

double comonotonicity_margin(const TrigPoly& tau, const TrigPoly& pi, std::size_t grid_points) {
    return derivative_margin(derivative(tau), pi, grid_points);
}

double sup_error(const std::function<double(double)>& f, const TrigPoly& tau,
                 std::size_t grid_points) {
    const auto tv = eval_uniform(tau, grid_points);
    const double step = 2.0 * kPi / grid_points;
    double best = -1.0;
    std::size_t arg = 0;
    for (std::size_t m = 0; m < grid_points; ++m) {
        const double e = std::abs(f(-kPi + m * step) - tv[m]);
        if (e > best) {
            best = e;
            arg = m;
        }
    }
    const double x0 = -kPi + arg * step;
    auto neg = [&](double x) { return -std::abs(f(x) - tau(x)); };
    const auto [xm, vm] = boost::math::tools::brent_find_minima(neg, x0 - step, x0 + step, 40);
    (void)xm;
    return std::max(best, -vm);
}

std::pair<double, double> value_range(const std::function<double(double)>& f, std::size_t grid_points) {
    const double step = 2.0 * kPi / grid_points;
    double lo = INFINITY, hi = -INFINITY;
    std::size_t arg_lo = 0, arg_hi = 0;
    for (std::size_t m = 0; m < grid_points; ++m) {
        const double v = f(-kPi + m * step);
        if (v < lo) {
            lo = v;
            arg_lo = m;
        }
        if (v > hi) {
            hi = v;
            arg_hi = m;
        }
    }
    const double x_lo = -kPi + arg_lo * step, x_hi = -kPi + arg_hi * step;
    const auto [a, fa] = boost::math::tools::brent_find_minima(f, x_lo - step, x_lo + step, 40);
    auto neg = [&](double x) { return -f(x); };
    const auto [b, fb] = boost::math::tools::brent_find_minima(neg, x_hi - step, x_hi + step, 40);
    (void)a;
    (void)b;
    return {std::min(lo, fa), std::max(hi, -fb)};
}

RateFit fit_rate(const std::vector<double>& n_values, const std::vector<double>& errors) {
    if (n_values.size() != errors.size()) throw std::invalid_argument("fit_rate: size mismatch");
    if (n_values.size() < 3) throw std::invalid_argument("fit_rate: need at least 3 points");
    RateFit fit;
    fit.n_values = n_values;
    fit.errors = errors;
    const double m = static_cast<double>(n_values.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        if (!(errors[i] > 0.0) || !(n_values[i] > 0.0))
            throw std::invalid_argument("fit_rate: values must be positive");
        const double x = std::log(n_values[i]), y = std::log(errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
    }
    const double vx = m * sxx - sx * sx, vy = m * syy - sy * sy, cxy = m * sxy - sx * sy;
    fit.slope = cxy / vx;
    fit.intercept = (sy - fit.slope * sx) / m;
    fit.r_squared = vy > 0.0 ? (cxy * cxy) / (vx * vy) : 1.0;
    return fit;
}

}  // namespace comonotone
