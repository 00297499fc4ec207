#include "comonotone/kernels.hpp"

#include "comonotone/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace comonotone {

namespace {

constexpr double kPi = std::numbers::pi;

void check_ln(int l, int n) {
    if (l < 1 || n < 1)
        throw std::invalid_argument("kernel: need l >= 1 and n >= 1 (got l=" + std::to_string(l) +
                                    ", n=" + std::to_string(n) + ")");
}

// (sin(nt/2) / sin(t/2))^2 without normalization, limit n^2 near t = 2 pi k
double fejer_ratio_sq(int n, double t) {
    const double den = std::sin(0.5 * t);
    if (std::abs(den) < 1e-8) return static_cast<double>(n) * n;
    const double q = std::sin(0.5 * n * t) / den;
    return q * q;
}

}  // namespace

double kernel_gamma(int l, int n) {
    check_ln(l, n);
    const int points = std::max(4096, 8 * l * n);
    return periodic_trapezoid([&](double t) { return std::pow(fejer_ratio_sq(n, t), l); }, points);
}

KernelSpec make_kernel(int l, int n) {
    check_ln(l, n);
    return KernelSpec{l, n, kernel_gamma(l, n)};
}

double jackson_eval(const KernelSpec& spec, double t) {
    if (!(spec.gamma > 0.0)) throw std::invalid_argument("jackson_eval: gamma not computed");
    return std::pow(fejer_ratio_sq(spec.n, t), spec.l) / spec.gamma;
}

std::shared_ptr<const std::vector<double>> jackson_fourier(int l, int n) {
    check_ln(l, n);
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const std::vector<double>>> cache;
    {
        std::lock_guard lock(mu);
        auto it = cache.find({l, n});
        if (it != cache.end()) return it->second;
    }
    // Fejer factor: sum_{|k|<n} (n-|k|) e^{ikt}; convolve l times, keep k >= 0 by symmetry
    std::vector<double> cur{1.0};  // one-sided, cur[k] = coefficient of e^{ikt}, k >= 0
    int deg = 0;
    for (int step = 0; step < l; ++step) {
        const int nd = deg + n - 1;
        std::vector<double> next(static_cast<std::size_t>(nd) + 1, 0.0);
        for (int k = 0; k <= nd; ++k) {
            double s = 0.0;
            // sum over i in [-deg, deg], j = k - i in (-n, n)
            const int ilo = std::max(-deg, k - (n - 1));
            const int ihi = std::min(deg, k + (n - 1));
            for (int i = ilo; i <= ihi; ++i) s += cur[std::abs(i)] * (n - std::abs(k - i));
            next[k] = s;
        }
        cur.swap(next);
        deg = nd;
    }
    auto ptr = std::make_shared<const std::vector<double>>(std::move(cur));
    std::lock_guard lock(mu);
    return cache.emplace(std::pair{l, n}, ptr).first->second;
}

TrigPoly jackson_poly(const KernelSpec& spec) {
    const auto e = jackson_fourier(spec.l, spec.n);
    const int d = static_cast<int>(e->size()) - 1;
    TrigPoly p(d);
    p.a0() = (*e)[0] / spec.gamma;
    for (int k = 1; k <= d; ++k) p.a(k) = 2.0 * (*e)[k] / spec.gamma;
    return p;
}

double kernel_moment(const KernelSpec& spec, int nu, double delta) {
    if (nu < 0 || nu > 2 * spec.l - 2)
        throw std::invalid_argument("kernel_moment: nu=" + std::to_string(nu) +
                                    " outside [0, 2l-2]");
    if (delta < 0.0) throw std::invalid_argument("kernel_moment: negative delta");
    if (delta >= kPi) return 0.0;
    const int n = spec.n;
    // panels no wider than a quarter of the shortest oscillation
    const int panels = std::max(16, static_cast<int>(std::ceil((kPi - delta) * spec.l * n / 2.0)));
    return composite_gauss(
        [&](double t) { return std::pow(1.0 + n * t, nu) * jackson_eval(spec, t); }, delta, kPi,
        panels);
}

double symmetric_moment(const KernelSpec& spec, int nu) { return 2.0 * kernel_moment(spec, nu, 0.0); }

KernelConstants estimate_constants(int l, const std::vector<int>& n_values) {
    if (n_values.empty()) throw std::invalid_argument("estimate_constants: empty n range");
    KernelConstants kc;
    kc.l = l;
    kc.n_values = n_values;
    kc.C12_by_nu.assign(static_cast<std::size_t>(2 * l - 1), 0.0);
    for (int n : n_values) {
        const KernelSpec spec = make_kernel(l, n);
        const double scale = std::pow(static_cast<double>(n), 2 * l - 1);
        kc.C10 = std::max(kc.C10, spec.gamma / scale);
        kc.C9 = std::max(kc.C9, scale / spec.gamma);
        for (int nu = 0; nu <= 2 * l - 2; ++nu) {
            const double m = symmetric_moment(spec, nu);
            kc.C12_by_nu[nu] = std::max(kc.C12_by_nu[nu], m);
            kc.C12 = std::max(kc.C12, m);
            // tail bound on a geometric delta grid in units of 1/n
            for (double u = 0.0; u / n < kPi; u = (u == 0.0 ? 0.25 : 2.0 * u)) {
                const double delta = u / n;
                const double tail = kernel_moment(spec, nu, delta);
                kc.C11 = std::max(kc.C11, tail * std::pow(1.0 + u, 2 * l - nu - 1));
            }
        }
    }
    return kc;
}

const KernelConstants& default_constants(int l) {
    static std::mutex mu;
    static std::map<int, KernelConstants> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(l);
    if (it == cache.end())
        it = cache.emplace(l, estimate_constants(l, {8, 16, 32, 64, 128, 256})).first;
    return it->second;
}

}  // namespace comonotone
