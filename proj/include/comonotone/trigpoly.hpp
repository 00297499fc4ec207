#pragma once

// Trigonometric polynomials of declared degree, their linear-plus-periodic
// extension, breakpoint sets and the sign polynomial Pi.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace comonotone {

/// a0 + sum_{k=1}^{D} (a_k cos kx + b_k sin kx).
///
/// The degree is part of the value: it is set on construction and changed
/// only by operations whose degree rule is known (sum -> max, product -> sum).
/// It is never inferred from coefficient magnitudes.
class TrigPoly {
public:
    TrigPoly() = default;
    explicit TrigPoly(int degree);
    TrigPoly(double a0, std::vector<double> a, std::vector<double> b);

    static TrigPoly constant(double c) { return TrigPoly(c, {}, {}); }
    static TrigPoly cos_term(int k, double amplitude = 1.0);
    static TrigPoly sin_term(int k, double amplitude = 1.0);

    int degree() const { return static_cast<int>(a_.size()); }

    double a0() const { return a0_; }
    double& a0() { return a0_; }
    /// k-th cosine coefficient, 1 <= k <= degree
    double a(int k) const { return a_[static_cast<std::size_t>(k - 1)]; }
    double& a(int k) { return a_[static_cast<std::size_t>(k - 1)]; }
    double b(int k) const { return b_[static_cast<std::size_t>(k - 1)]; }
    double& b(int k) { return b_[static_cast<std::size_t>(k - 1)]; }

    std::span<const double> cos_coeffs() const { return a_; }
    std::span<const double> sin_coeffs() const { return b_; }

    double operator()(double x) const;

    /// Raises the declared degree; new coefficients are zero.
    void raise_degree(int degree);

    TrigPoly& operator+=(const TrigPoly& other);
    TrigPoly& operator-=(const TrigPoly& other);
    TrigPoly& operator*=(double c);
    /// this += c * other
    TrigPoly& add_scaled(const TrigPoly& other, double c);

    /// Largest |coefficient| with index above `k` (0 when k >= degree).
    double tail_magnitude(int k) const;
    double max_abs_coeff() const;

private:
    double a0_ = 0.0;
    std::vector<double> a_;
    std::vector<double> b_;
};

TrigPoly operator+(TrigPoly p, const TrigPoly& q);
TrigPoly operator-(TrigPoly p, const TrigPoly& q);
TrigPoly operator*(TrigPoly p, double c);
TrigPoly operator*(double c, TrigPoly p);

double eval(const TrigPoly& p, double x);
TrigPoly derivative(const TrigPoly& p);
TrigPoly multiply(const TrigPoly& p, const TrigPoly& q);
/// q(x) = p(x - shift)
TrigPoly shifted(const TrigPoly& p, double shift);

/// Values of p at x_m = -pi + 2 pi m / count, m = 0..count-1.
/// Requires count >= 2 * degree + 1.
std::vector<double> eval_uniform(const TrigPoly& p, std::size_t count);

/// Coefficients of the degree-`degree` interpolant of equispaced samples
/// taken at x_m = -pi + 2 pi m / N. Exact for inputs that are trigonometric
/// polynomials of degree <= N - 1 - degree.
TrigPoly from_samples(std::span<const double> values, int degree);

/// slope * x + periodic(x)
struct LinearPlusTrig {
    double slope = 0.0;
    TrigPoly periodic;

    double operator()(double x) const { return slope * x + periodic(x); }
    /// Derivative as a pure trigonometric polynomial (slope goes to a0).
    TrigPoly derivative() const;

    LinearPlusTrig& operator+=(const LinearPlusTrig& other);
    LinearPlusTrig& add_scaled(const LinearPlusTrig& other, double c);
};

/// slope = a0, periodic part = zero-mean antiderivative of the rest.
LinearPlusTrig antiderivative_split(const TrigPoly& p);

/// Kahan-compensated coefficient accumulator. Sums of many large
/// polynomials (hundreds of step approximants) stay independent of the
/// order in which terms are added, to well below 1e-12.
class TrigPolyAccumulator {
public:
    explicit TrigPolyAccumulator(int degree = 0);
    void add(const TrigPoly& p, double scale = 1.0);
    void add_constant(double c);
    TrigPoly result() const;
    int degree() const { return degree_; }

private:
    void grow(int degree);
    int degree_;
    std::vector<double> sum_;   // layout: [a0, a1, b1, a2, b2, ...]
    std::vector<double> comp_;
};

/// 2s points -pi <= y_{2s} < ... < y_1 < pi, extended to all integer indices
/// by y_i = y_{i+2s} + 2 pi.
class BreakpointSet {
public:
    /// Points in any order; they are sorted into decreasing order.
    explicit BreakpointSet(std::vector<double> points);

    int s() const { return static_cast<int>(points_.size() / 2); }
    int size() const { return static_cast<int>(points_.size()); }
    /// y_i for any integer i
    double y(int i) const;
    /// Stored points y_1 > y_2 > ... > y_{2s}.
    std::span<const double> points() const { return points_; }
    /// min over all integers i of |x - y_i|
    double distance(double x) const;
    /// Gaps y_{i-1} - y_i for i = 1..2s (the first wraps through y_0 = y_{2s} + 2 pi).
    std::vector<double> gaps() const;

private:
    std::vector<double> points_;
};

/// prod_i sin((x - p_i) / 2) for an even number of points in any position.
/// Shifting one point by 2 pi flips the sign of the product.
TrigPoly make_sign_poly(std::span<const double> points);

/// Pi(x) = prod_{i=1}^{2s} sin((x - y_i) / 2), degree s.
TrigPoly make_pi(const BreakpointSet& y);

}  // namespace comonotone
