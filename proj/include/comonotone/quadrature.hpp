#pragma once

// Thin wrappers over Boost.Math quadrature plus the periodic trapezoid rule.

#include <functional>

namespace comonotone {

using RealFn = std::function<double(double)>;

/// 20-point Gauss-Legendre on [a, b].
double gauss_legendre(const RealFn& f, double a, double b);

/// Gauss-Legendre on `panels` equal panels of [a, b].
double composite_gauss(const RealFn& f, double a, double b, int panels);

/// Adaptive Gauss-Kronrod (61 points) with relative tolerance `tol`.
/// Throws std::runtime_error when the error estimate stays above tolerance.
double adaptive(const RealFn& f, double a, double b, double tol = 1e-12, int max_depth = 25);

/// Trapezoid rule over one period [-pi, pi) on `points` equispaced nodes.
/// Exact for trigonometric polynomials of degree < points.
double periodic_trapezoid(const RealFn& f, int points);

}  // namespace comonotone
