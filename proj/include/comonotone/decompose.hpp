#pragma once

// Split f = G1 + G2: G1 integrates the truncated derivative g1, which keeps
// f' on M* and vanishes off M**, glued by polynomial bumps.

#include "comonotone/partition.hpp"

#include <functional>
#include <vector>

namespace comonotone {

using RealFunction = std::function<double(double)>;

/// Regularized incomplete beta with equal integer exponents r-2, i.e. the
/// normalized integral of t^{r-2}(1-t)^{r-2} over [0, t], for t in [0, 1].
double bump_unit(int r, double t);

/// S_j(x) on I_j = [x_j, x_{j-1}]; throws std::domain_error outside.
double bump_S(int j, const UniformGrid& grid, int r, double x);

class SplitFunctions {
public:
    SplitFunctions(RealFunction f, RealFunction fprime, const PartitionState& partition);

    double g1(double x) const;
    /// slope of G1: (1/2pi) * integral of g1 over one period
    double B() const { return B_; }
    /// G1(x) = f(0) + integral_0^x g1
    double G1(double x) const;
    /// G1 at grid point x_j, any integer j
    double G1_grid(int j) const;
    double G2(double x) const { return f_(x) - G1(x); }
    /// periodic part of G2: G2 + B x
    double tildeG2(double x) const { return G2(x) + B_ * x; }
    /// G2'(x) = f'(x) - g1(x)
    double G2_prime(double x) const { return fprime_(x) - g1(x); }

    /// True when no packs exist, so g1 = f' and G1 = f.
    bool trivial() const { return trivial_; }
    const PartitionState& partition() const { return *partition_; }

private:
    double interval_integral(int j) const;

    RealFunction f_;
    RealFunction fprime_;
    const PartitionState* partition_;
    double B_ = 0.0;
    bool trivial_ = false;
    std::vector<double> grid_values_;  // G1(x_j) for j = -n..n, stored at j + n
};

}  // namespace comonotone
