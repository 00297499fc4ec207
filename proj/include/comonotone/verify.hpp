#pragma once

// Measurements and independent checks: divided differences, sampled
// comonotonicity margin, sup-norm error, log-log rate fits.

#include "comonotone/trigpoly.hpp"

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace comonotone {

/// Classical recursive divided difference [t_0, ..., t_m; g].
double divided_difference(std::span<const double> nodes, std::span<const double> values);

/// min over an equispaced grid of tau'(x) Pi(x), divided by max |tau' Pi|.
/// Returns 0 when tau' Pi vanishes on the grid.
double comonotonicity_margin(const TrigPoly& tau, const TrigPoly& pi, std::size_t grid_points);

/// Same, for tau' given directly.
double derivative_margin(const TrigPoly& tau_prime, const TrigPoly& pi, std::size_t grid_points);

/// max |f - tau| over an equispaced grid, refined by golden-section search
/// around the largest grid value.
double sup_error(const std::function<double(double)>& f, const TrigPoly& tau,
                 std::size_t grid_points);

/// (min f, max f) over one period: equispaced scan refined by Brent search
/// around the extreme grid values.
std::pair<double, double> value_range(const std::function<double(double)>& f, std::size_t grid_points);

struct RateFit {
    std::vector<double> n_values;
    std::vector<double> errors;
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

RateFit fit_rate(const std::vector<double>& n_values, const std::vector<double>& errors);

}  // namespace comonotone
