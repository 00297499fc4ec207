#include <doctest.h>

#include "comonotone/kernels.hpp"
#include "comonotone/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace comonotone;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;

double raw_power(int l, int n, double t) {
    const double s = std::sin(0.5 * t);
    if (std::abs(s) < 1e-8) return std::pow(static_cast<double>(n), 2 * l);
    return std::pow(std::sin(0.5 * n * t) / s, 2 * l);
}
}  // namespace

TEST_CASE("gamma") {
    for (int l = 1; l <= 5; ++l) CHECK(kernel_gamma(l, 1) == Approx(2 * kPi).epsilon(1e-14));
    CHECK(kernel_gamma(1, 2) == Approx(4 * kPi).epsilon(1e-14));
    // split at the peak so the adaptive oracle resolves it
    auto g = [](double t) { return raw_power(2, 4, t); };
    const double oracle = 2.0 * (adaptive(g, 0.0, 0.5, 1e-13) + adaptive(g, 0.5, kPi, 1e-13));
    CHECK(kernel_gamma(2, 4) == Approx(oracle).epsilon(1e-9));
    for (int n : {8, 16, 32}) CHECK(kernel_gamma(3, n) > 0.0);
}

TEST_CASE("pointwise kernel") {
    for (int l : {1, 2, 4})
        for (int n : {1, 3, 8}) {
            const auto k = make_kernel(l, n);
            CHECK(jackson_eval(k, 0.0) == Approx(std::pow(n, 2 * l) / k.gamma).epsilon(1e-12));
        }
    const auto one = make_kernel(3, 1);
    for (double t : {-2.0, 0.3, 3.0}) CHECK(jackson_eval(one, t) == Approx(1 / (2 * kPi)));

    std::mt19937 rng(2);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    const auto k = make_kernel(3, 7);
    for (int i = 0; i < 50; ++i) {
        const double t = u(rng);
        CHECK(jackson_eval(k, t) == Approx(jackson_eval(k, -t)).epsilon(1e-13));
        CHECK(jackson_eval(k, t) >= 0.0);
    }
}

TEST_CASE("kernel polynomial") {
    const auto p11 = jackson_poly(make_kernel(1, 1));
    CHECK(p11.degree() == 0);
    CHECK(p11.a0() == Approx(1 / (2 * kPi)));
    CHECK(jackson_poly(make_kernel(1, 2)).degree() == 1);

    const auto k = make_kernel(3, 5);
    const auto p = jackson_poly(k);
    CHECK(p.degree() == 12);
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    for (int i = 0; i < 100; ++i) {
        const double t = u(rng);
        CHECK(p(t) == Approx(jackson_eval(k, t)).epsilon(1e-11));
    }
    CHECK(p.a0() * 2 * kPi == Approx(1.0).epsilon(1e-13));
}

TEST_CASE("moments") {
    const auto k = make_kernel(3, 16);
    CHECK(kernel_moment(k, 0, 0.0) == Approx(0.5).epsilon(1e-12));
    CHECK(symmetric_moment(k, 0) == Approx(1.0).epsilon(1e-12));

    auto w = [&](double t) { return (1 + 16 * t) * (1 + 16 * t) * jackson_eval(k, t); };
    const double oracle = adaptive(w, 0.0, 0.2, 1e-13) + adaptive(w, 0.2, kPi, 1e-13);
    const double m2 = kernel_moment(k, 2, 0.0);
    CHECK(std::isfinite(m2));
    CHECK(m2 == Approx(oracle).epsilon(1e-8));
    CHECK(kernel_moment(k, 2, 1.0) < m2);
    CHECK_THROWS(kernel_moment(k, 5, 0.0));
}

TEST_CASE("constants estimation") {
    for (int l = 2; l <= 5; ++l) {
        const auto& c = default_constants(l);
        CHECK(c.C12 >= 1.0);
        CHECK(c.C9 > 0.0);
        CHECK(c.C10 > 0.0);
        CHECK(c.C11 > 0.0);
    }
    std::vector<double> ratio;
    for (int n : {8, 16, 32, 64}) ratio.push_back(kernel_gamma(2, n) / std::pow(n, 3));
    const auto [lo, hi] = std::minmax_element(ratio.begin(), ratio.end());
    CHECK(*hi / *lo < 2.0);

    const auto narrow = estimate_constants(3, {8, 16, 32, 64});
    const auto wide = estimate_constants(3, {8, 16, 32, 64, 128});
    CHECK(std::abs(wide.C12 / narrow.C12 - 1.0) < 0.1);
    CHECK(std::abs(wide.C11 / narrow.C11 - 1.0) < 0.1);
}
