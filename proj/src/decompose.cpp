#include "comonotone/decompose.hpp"

#include "comonotone/quadrature.hpp"

#include <boost/math/special_functions/binomial.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace comonotone {

namespace {
constexpr double kPi = std::numbers::pi;

// sum_{k=m+1}^{2m+1} C(2m+1, k) t^k (1-t)^{2m+1-k}; accurate for t <= 1/2
double bump_lower_half(int m, double t) {
    const int N = 2 * m + 1;
    double s = 0.0;
    for (int k = m + 1; k <= N; ++k)
        s += boost::math::binomial_coefficient<double>(N, k) * std::pow(t, k) * std::pow(1.0 - t, N - k);
    return s;
}
}  // namespace

double bump_unit(int r, double t) {
    if (r < 2) throw std::invalid_argument("bump_unit: r must be >= 2");
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const int m = r - 2;
    if (m == 0) return t;
    // symmetric integrand: S(t) = 1 - S(1 - t)
    return t <= 0.5 ? bump_lower_half(m, t) : 1.0 - bump_lower_half(m, 1.0 - t);
}

double bump_S(int j, const UniformGrid& grid, int r, double x) {
    const double a = grid.x(j), b = grid.x(j - 1);
    const double tol = 1e-12 * grid.h();
    if (x < a - tol || x > b + tol)
        throw std::domain_error("bump_S: x = " + std::to_string(x) + " outside I_" + std::to_string(j));
    return bump_unit(r, (x - a) / grid.h());
}

SplitFunctions::SplitFunctions(RealFunction f, RealFunction fprime, const PartitionState& partition)
    : f_(std::move(f)), fprime_(std::move(fprime)), partition_(&partition) {
    const auto& grid = partition.grid();
    const int n = grid.n();
    trivial_ = partition.packs().empty();

    std::vector<double> inc(static_cast<std::size_t>(grid.count()));
    double total = 0.0, comp = 0.0;
    for (int s = 0; s < grid.count(); ++s) {
        inc[s] = interval_integral(grid.index_at_slot(s));
        const double y = inc[s] - comp;
        const double t = total + y;
        comp = (t - total) - y;
        total = t;
    }
    B_ = total / (2.0 * kPi);

    // cumulative from x_0 = 0 in both directions
    grid_values_.assign(2 * static_cast<std::size_t>(n) + 1, 0.0);
    grid_values_[n] = f_(0.0);
    for (int j = 0; j >= -n + 1; --j)  // x_{j-1} = x_j + h
        grid_values_[j - 1 + n] = grid_values_[j + n] + inc[grid.slot(j)];
    for (int j = 1; j <= n; ++j)  // x_j = x_{j-1} - h
        grid_values_[j + n] = grid_values_[j - 1 + n] - inc[grid.slot(j)];
}

double SplitFunctions::interval_integral(int j) const {
    const auto& P = *partition_;
    const auto& grid = P.grid();
    const double a = grid.x(j), b = grid.x(j - 1);
    if (P.in_M1(j)) return f_(b) - f_(a);
    if (!P.in_M2(j)) return 0.0;
    return gauss_legendre([&](double t) { return g1(t); }, a, b);
}

double SplitFunctions::g1(double x) const {
    const auto& P = *partition_;
    const auto& grid = P.grid();
    if (trivial_) return fprime_(x);
    const int j = grid.interval_of(x);
    if (P.in_M1(j)) return fprime_(x);
    if (!P.in_M2(j)) return 0.0;
    const double t = (x - grid.x(j)) / grid.h();
    const double S = bump_unit(P.r(), t);
    return P.in_Omega(j + 2) ? fprime_(x) * (1.0 - S) : fprime_(x) * S;
}

double SplitFunctions::G1_grid(int j) const {
    const auto& grid = partition_->grid();
    const int n = grid.n();
    // x_{j + 2n} = x_j - 2 pi, and G1 grows by 2 pi B per period
    const int q = static_cast<int>(std::floor(static_cast<double>(j + n) / (2 * n)));
    const int jr = j - 2 * n * q;
    return grid_values_[jr + n] - 2.0 * kPi * B_ * q;
}

double SplitFunctions::G1(double x) const {
    if (trivial_) return f_(x);
    const auto& grid = partition_->grid();
    const int j = grid.interval_of(x);
    const double a = grid.x(j);
    const auto& P = *partition_;
    double part;
    if (P.in_M1(j))
        part = f_(x) - f_(a);
    else if (!P.in_M2(j))
        part = 0.0;
    else
        part = gauss_legendre([&](double t) { return g1(t); }, a, x);
    return G1_grid(j) + part;
}

}  // namespace comonotone
