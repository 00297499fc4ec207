#pragma once

// Jackson-type kernels J_{l,n}(t) = (sin(nt/2) / sin(t/2))^{2l} / gamma_{l,n}.

#include "comonotone/trigpoly.hpp"

#include <memory>
#include <vector>

namespace comonotone {

struct KernelSpec {
    int l = 1;
    int n = 1;
    double gamma = 0.0;
};

/// Integral over one period of (sin(nt/2)/sin(t/2))^{2l}, by the periodic
/// trapezoid rule on max(4096, 8 l n) nodes.
double kernel_gamma(int l, int n);

KernelSpec make_kernel(int l, int n);

double jackson_eval(const KernelSpec& spec, double t);

/// Cosine coefficients e_0..e_D (D = l(n-1)) of the unnormalized power
/// (sin(nt/2)/sin(t/2))^{2l} = e_0 + 2 sum_k e_k cos kt. Memoized.
std::shared_ptr<const std::vector<double>> jackson_fourier(int l, int n);

/// J_{l,n} as a trigonometric polynomial of degree l(n-1).
TrigPoly jackson_poly(const KernelSpec& spec);

/// Integral over [delta, pi] of (1 + n t)^nu J_{l,n}(t), 0 <= nu <= 2l-2.
double kernel_moment(const KernelSpec& spec, int nu, double delta);

/// Integral over [-pi, pi] of (1 + n|t|)^nu J_{l,n}(t).
double symmetric_moment(const KernelSpec& spec, int nu);

struct KernelConstants {
    int l = 0;
    std::vector<int> n_values;
    double C9 = 0.0;   // max n^{2l-1} / gamma
    double C10 = 0.0;  // max gamma / n^{2l-1}
    double C11 = 0.0;  // max over nu, delta of tail moment * (1 + n delta)^{2l-nu-1}
    double C12 = 0.0;  // max over nu of the symmetric moment
    std::vector<double> C12_by_nu;  // index nu = 0..2l-2
};

KernelConstants estimate_constants(int l, const std::vector<int>& n_values);

/// Memoized estimate over the default range n = 8, 16, ..., 256.
const KernelConstants& default_constants(int l);

}  // namespace comonotone
