#include "comonotone/step.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace comonotone {

namespace {
constexpr double kPi = std::numbers::pi;
}

int chi(double x, double x_star) { return x <= x_star ? 0 : 1; }

double delta_n(int n, double x, double x_star) {
    const double s = std::abs(std::sin(0.5 * (x - x_star)));
    if (n * s <= 1.0) return 1.0;
    return 1.0 / (n * s);
}

bool admissible(double x_star, const BreakpointSet& y, int n, double c12) {
    return y.distance(x_star) >= 2.0 * y.s() * c12 * kPi / n;
}

StepApproximant build_step(int l, int n, double x_star, const TrigPoly& pi, double min_pi) {
    const double pi_star = pi(x_star);
    if (!(std::abs(pi_star) > min_pi))
        throw std::domain_error("build_step: Pi(x*) = " + std::to_string(pi_star) +
                                " is too close to zero at x* = " + std::to_string(x_star));
    const KernelSpec spec = make_kernel(l, n);
    TrigPoly integrand = multiply(shifted(jackson_poly(spec), x_star), pi);
    integrand *= 1.0 / pi_star;
    const double d = 2.0 * kPi * integrand.a0();
    if (!(d > 0.0))
        throw std::domain_error("build_step: nonpositive normalizer d = " + std::to_string(d));

    StepApproximant out;
    out.value = antiderivative_split(integrand);
    out.value.slope /= d;
    out.value.periodic *= 1.0 / d;
    out.value.periodic.a0() -= out.value(x_star - kPi);
    out.x_star = x_star;
    out.d = d;
    out.l = l;
    out.n = n;
    out.s = pi.degree();
    return out;
}

StepApproximant build_step(int l, int n, double x_star, const BreakpointSet& y) {
    return build_step(l, n, x_star, make_pi(y));
}

DecayFit step_sup_error(const StepApproximant& step, int samples_per_band) {
    DecayFit fit;
    const int n = step.n;
    // bands u in [2^k / n, 2^{k+1} / n) clipped to (0, pi]
    for (double lo = 1.0 / n; lo < kPi; lo *= 2.0) {
        const double hi = std::min(2.0 * lo, kPi);
        double worst = 0.0;
        for (int q = 0; q <= samples_per_band; ++q) {
            const double u = lo + (hi - lo) * q / samples_per_band;
            for (double sgn : {-1.0, 1.0}) {
                const double x = step.x_star + sgn * u;
                worst = std::max(worst, std::abs(chi(x, step.x_star) - step(x)));
            }
        }
        const double mid = std::sqrt(lo * hi);
        const double dlt = delta_n(n, step.x_star + mid, step.x_star);
        if (dlt < 1.0 && worst > 0.0) {
            fit.band_delta.push_back(dlt);
            fit.band_error.push_back(worst);
        }
    }
    const std::size_t m = fit.band_delta.size();
    if (m < 2) throw std::runtime_error("step_sup_error: fewer than two usable distance bands");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double lx = std::log(fit.band_delta[i]), ly = std::log(fit.band_error[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    fit.exponent = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return fit;
}

}  // namespace comonotone
