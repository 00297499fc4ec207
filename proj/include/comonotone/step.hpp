#pragma once

// Integrated step approximants: smooth, Pi-monotone surrogates of the unit
// step at a centre x*.

#include "comonotone/kernels.hpp"
#include "comonotone/trigpoly.hpp"

#include <span>

namespace comonotone {

struct StepApproximant {
    LinearPlusTrig value;
    double x_star = 0.0;
    double d = 0.0;  // normalizer: full-period integral of J(t - x*) Pi(t) / Pi(x*)
    int l = 0;
    int n = 0;
    int s = 0;

    double operator()(double x) const { return value(x); }
    TrigPoly derivative() const { return value.derivative(); }
};

/// 0 for x <= x*, 1 otherwise
int chi(double x, double x_star);

/// min{1, 1 / (n |sin((x - x*)/2)|)}
double delta_n(int n, double x, double x_star);

/// Distance from x* to the nearest periodic image of a breakpoint is at
/// least 2 s c12 pi / n.
bool admissible(double x_star, const BreakpointSet& y, int n, double c12);

/// Step approximant for an arbitrary sign polynomial `pi` of degree s.
/// Throws std::domain_error when |pi(x*)| is below `min_pi`.
StepApproximant build_step(int l, int n, double x_star, const TrigPoly& pi, double min_pi = 1e-12);

StepApproximant build_step(int l, int n, double x_star, const BreakpointSet& y);

struct DecayFit {
    double exponent = 0.0;  // slope of log err against log delta_n
    std::vector<double> band_delta;
    std::vector<double> band_error;
};

/// Sup |chi - T| in dyadic bands of |x - x*| within one period, fitted
/// against delta_n on log-log axes.
DecayFit step_sup_error(const StepApproximant& step, int samples_per_band = 400);

}  // namespace comonotone
