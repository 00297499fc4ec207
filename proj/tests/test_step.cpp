#include <doctest.h>

#include "comonotone/constants.hpp"
#include "comonotone/quadrature.hpp"
#include "comonotone/step.hpp"

#include <cmath>
#include <numbers>

using namespace comonotone;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
const BreakpointSet kHalf({kPi / 2, -kPi / 2});
}  // namespace

TEST_CASE("indicator and distance weight") {
    CHECK(chi(0.4, 0.4) == 0);
    CHECK(chi(0.5, 0.4) == 1);
    CHECK(chi(0.4 - 3, 0.4) == 0);
    CHECK(delta_n(16, 1.2, 1.2) == 1.0);
    CHECK(delta_n(4, 0.3 + kPi, 0.3) == Approx(0.25));
    for (double x : {-2.0, 0.7, 2.9}) CHECK(delta_n(9, x + 2 * kPi, 0.1) == Approx(delta_n(9, x, 0.1)));
}

TEST_CASE("admissibility") {
    const double c12 = resolve_constants(1, 2, Mode::Practical).get("C12_admissible");
    CHECK(!admissible(kPi / 2, kHalf, 1024, c12));
    CHECK(!admissible(0.0, kHalf, 1, c12));
    const int n_min = static_cast<int>(std::ceil(4 * c12));
    CHECK(admissible(0.0, kHalf, n_min, c12));
    CHECK(admissible(0.0, kHalf, 64, c12));
}

TEST_CASE("normalization, slope and degree") {
    const double c12 = resolve_constants(1, 2, Mode::Practical).get("C12_admissible");
    for (int n : {16, 32, 64})
        for (double xs : {0.0, kPi, 0.3, -2.8}) {
            if (!admissible(xs, kHalf, n, c12)) continue;
            const auto T = build_step(3, n, xs, kHalf);
            CHECK(T(xs - kPi) == Approx(0.0).scale(1.0).epsilon(1e-12));
            CHECK(T(xs + kPi) == Approx(1.0).epsilon(1e-8));
            CHECK(T.value.slope == Approx(1 / (2 * kPi)).epsilon(1e-10));
            CHECK(T.value.periodic.degree() <= 3 * (n - 1) + 1);
            CHECK(T.d > 0.5);
            CHECK(T.d < 1.5);
        }
}

TEST_CASE("normalizer against quadrature") {
    const auto T = build_step(3, 32, 0.0, kHalf);
    const auto k = make_kernel(3, 32);
    const auto pi = make_pi(kHalf);
    auto g = [&](double t) { return jackson_eval(k, t) * pi(t) / pi(0.0); };
    const double oracle = adaptive(g, -kPi, -0.1, 1e-13) + adaptive(g, -0.1, 0.1, 1e-13) +
                          adaptive(g, 0.1, kPi, 1e-13);
    CHECK(T.d == Approx(oracle).epsilon(1e-8));
}

TEST_CASE("derivative formula and sign") {
    const auto pi = make_pi(kHalf);
    for (double xs : {0.0, kPi}) {
        const auto T = build_step(3, 32, xs, kHalf);
        const auto k = make_kernel(3, 32);
        const auto dT = T.derivative();
        double scale = 0, lo = 0;
        for (int m = 0; m < 4000; ++m) {
            const double x = -kPi + 2 * kPi * m / 4000;
            const double expect = jackson_eval(k, x - xs) * pi(x) / (pi(xs) * T.d);
            CHECK(dT(x) == Approx(expect).scale(1.0).epsilon(1e-8));
            const double v = pi(xs) * dT(x) * pi(x);
            lo = std::min(lo, v);
            scale = std::max(scale, std::abs(v));
        }
        CHECK(lo >= -1e-10 * scale);
    }
}

TEST_CASE("decay away from the centre") {
    // l = s + 2 gives 2(l - s) - 1 = 3
    for (int n : {32, 64}) {
        const auto fit = step_sup_error(build_step(3, n, 0.0, kHalf));
        CHECK(fit.exponent >= 2.5);
    }
    // at the far point the error shrinks by at least 2^{2.5} per halving of h
    const auto a = build_step(3, 32, 0.0, kHalf);
    const auto b = build_step(3, 64, 0.0, kHalf);
    const double ea = std::abs(1.0 - a(2.0)), eb = std::abs(1.0 - b(2.0));
    CHECK(eb < ea / std::pow(2.0, 2.5));
}

TEST_CASE("degenerate centre") {
    CHECK_THROWS_AS(build_step(3, 16, kPi / 2, kHalf), std::domain_error);
}
