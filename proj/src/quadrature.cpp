#include "comonotone/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace comonotone {

double gauss_legendre(const RealFn& f, double a, double b) {
    return boost::math::quadrature::gauss<double, 20>::integrate(f, a, b);
}

double composite_gauss(const RealFn& f, double a, double b, int panels) {
    if (panels < 1) throw std::invalid_argument("composite_gauss: panels must be >= 1");
    const double w = (b - a) / panels;
    double sum = 0.0, comp = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * w;
        const double hi = (p + 1 == panels) ? b : lo + w;
        const double y = gauss_legendre(f, lo, hi) - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

double adaptive(const RealFn& f, double a, double b, double tol, int max_depth) {
    double err = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        f, a, b, static_cast<unsigned>(max_depth), tol, &err);
    if (!(err <= std::max(tol * std::abs(v), 1e-300) * 10.0) && err > 1e-15)
        throw std::runtime_error("adaptive quadrature: error estimate " + std::to_string(err) +
                                 " above tolerance");
    return v;
}

double periodic_trapezoid(const RealFn& f, int points) {
    if (points < 1) throw std::invalid_argument("periodic_trapezoid: points must be >= 1");
    const double h = 2.0 * std::numbers::pi / points;
    double sum = 0.0, comp = 0.0;
    for (int m = 0; m < points; ++m) {
        const double y = f(-std::numbers::pi + m * h) - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum * h;
}

}  // namespace comonotone
