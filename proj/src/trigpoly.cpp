#include "comonotone/trigpoly.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

namespace comonotone {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kReseed = 32;

// FFTW's planner is not reentrant; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwBuffers {
    double* real = nullptr;
    fftw_complex* spec = nullptr;
    explicit FftwBuffers(std::size_t n) {
        real = fftw_alloc_real(n);
        spec = fftw_alloc_complex(n / 2 + 1);
        if (!real || !spec) {
            release();
            throw std::bad_alloc();
        }
    }
    ~FftwBuffers() { release(); }
    FftwBuffers(const FftwBuffers&) = delete;
    FftwBuffers& operator=(const FftwBuffers&) = delete;

private:
    void release() {
        if (real) fftw_free(real);
        if (spec) fftw_free(spec);
        real = nullptr;
        spec = nullptr;
    }
};

}  // namespace

TrigPoly::TrigPoly(int degree) {
    if (degree < 0) throw std::invalid_argument("TrigPoly: negative degree");
    a_.assign(static_cast<std::size_t>(degree), 0.0);
    b_.assign(static_cast<std::size_t>(degree), 0.0);
}

TrigPoly::TrigPoly(double a0, std::vector<double> a, std::vector<double> b)
    : a0_(a0), a_(std::move(a)), b_(std::move(b)) {
    if (a_.size() != b_.size())
        throw std::invalid_argument("TrigPoly: cos/sin coefficient lengths differ");
}

TrigPoly TrigPoly::cos_term(int k, double amplitude) {
    if (k == 0) return constant(amplitude);
    TrigPoly p(k);
    p.a(k) = amplitude;
    return p;
}

TrigPoly TrigPoly::sin_term(int k, double amplitude) {
    if (k < 1) throw std::invalid_argument("sin_term: k must be >= 1");
    TrigPoly p(k);
    p.b(k) = amplitude;
    return p;
}

double TrigPoly::operator()(double x) const {
    // rotation recurrence for (cos kx, sin kx) in extended precision, reseeded
    // to keep drift bounded; high-degree sums cancel heavily near breakpoints
    using ext = long double;
    const ext xe = x;
    const ext c1 = std::cos(xe), s1 = std::sin(xe);
    ext c = 1.0L, s = 0.0L;
    ext acc = a0_;
    const int d = degree();
    for (int k = 1; k <= d; ++k) {
        if (k % kReseed == 0) {
            c = std::cos(k * xe);
            s = std::sin(k * xe);
        } else {
            const ext cn = c * c1 - s * s1;
            s = s * c1 + c * s1;
            c = cn;
        }
        acc += a_[k - 1] * c + b_[k - 1] * s;
    }
    return static_cast<double>(acc);
}

void TrigPoly::raise_degree(int degree) {
    if (degree <= this->degree()) return;
    a_.resize(static_cast<std::size_t>(degree), 0.0);
    b_.resize(static_cast<std::size_t>(degree), 0.0);
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& other) { return add_scaled(other, 1.0); }
TrigPoly& TrigPoly::operator-=(const TrigPoly& other) { return add_scaled(other, -1.0); }

TrigPoly& TrigPoly::operator*=(double c) {
    a0_ *= c;
    for (auto& v : a_) v *= c;
    for (auto& v : b_) v *= c;
    return *this;
}

TrigPoly& TrigPoly::add_scaled(const TrigPoly& other, double c) {
    raise_degree(other.degree());
    a0_ += c * other.a0_;
    for (std::size_t k = 0; k < other.a_.size(); ++k) {
        a_[k] += c * other.a_[k];
        b_[k] += c * other.b_[k];
    }
    return *this;
}

double TrigPoly::tail_magnitude(int k) const {
    double m = 0.0;
    for (int q = std::max(k, 0) + 1; q <= degree(); ++q)
        m = std::max({m, std::abs(a(q)), std::abs(b(q))});
    return m;
}

double TrigPoly::max_abs_coeff() const {
    double m = std::abs(a0_);
    for (int q = 1; q <= degree(); ++q) m = std::max({m, std::abs(a(q)), std::abs(b(q))});
    return m;
}

TrigPoly operator+(TrigPoly p, const TrigPoly& q) { return p += q; }
TrigPoly operator-(TrigPoly p, const TrigPoly& q) { return p -= q; }
TrigPoly operator*(TrigPoly p, double c) { return p *= c; }
TrigPoly operator*(double c, TrigPoly p) { return p *= c; }

double eval(const TrigPoly& p, double x) { return p(x); }

TrigPoly derivative(const TrigPoly& p) {
    TrigPoly d(p.degree());
    for (int k = 1; k <= p.degree(); ++k) {
        d.a(k) = k * p.b(k);
        d.b(k) = -k * p.a(k);
    }
    return d;
}

TrigPoly multiply(const TrigPoly& p, const TrigPoly& q) {
    // complex form: p = sum_{|k|<=D} c_k e^{ikx}, c_k = (a_k - i b_k)/2 for k>0
    const int dp = p.degree(), dq = q.degree();
    const int D = dp + dq;
    auto coeffs = [](const TrigPoly& t) {
        const int d = t.degree();
        std::vector<double> re(2 * d + 1), im(2 * d + 1);
        re[d] = t.a0();
        for (int k = 1; k <= d; ++k) {
            re[d + k] = 0.5 * t.a(k);
            im[d + k] = -0.5 * t.b(k);
            re[d - k] = 0.5 * t.a(k);
            im[d - k] = 0.5 * t.b(k);
        }
        return std::pair{re, im};
    };
    auto [pr, pi] = coeffs(p);
    auto [qr, qi] = coeffs(q);
    // only indices m >= 0 of the product are needed
    std::vector<double> rr(D + 1, 0.0), ri(D + 1, 0.0);
    for (int i = -dp; i <= dp; ++i) {
        const double ar = pr[i + dp], ai = pi[i + dp];
        if (ar == 0.0 && ai == 0.0) continue;
        const int jlo = std::max(-dq, -i);
        for (int j = jlo; j <= dq; ++j) {
            const double br = qr[j + dq], bi = qi[j + dq];
            rr[i + j] += ar * br - ai * bi;
            ri[i + j] += ar * bi + ai * br;
        }
    }
    TrigPoly out(D);
    out.a0() = rr[0];
    for (int k = 1; k <= D; ++k) {
        out.a(k) = 2.0 * rr[k];
        out.b(k) = -2.0 * ri[k];
    }
    return out;
}

TrigPoly shifted(const TrigPoly& p, double shift) {
    TrigPoly q(p.degree());
    q.a0() = p.a0();
    const double c1 = std::cos(shift), s1 = std::sin(shift);
    double c = 1.0, s = 0.0;
    for (int k = 1; k <= p.degree(); ++k) {
        if (k % kReseed == 0) {
            c = std::cos(k * shift);
            s = std::sin(k * shift);
        } else {
            const double cn = c * c1 - s * s1;
            s = s * c1 + c * s1;
            c = cn;
        }
        q.a(k) = p.a(k) * c - p.b(k) * s;
        q.b(k) = p.a(k) * s + p.b(k) * c;
    }
    return q;
}

std::vector<double> eval_uniform(const TrigPoly& p, std::size_t count) {
    const auto d = static_cast<std::size_t>(p.degree());
    if (count < 2 * d + 1)
        throw std::invalid_argument("eval_uniform: need at least 2*degree+1 points, got " +
                                    std::to_string(count));
    FftwBuffers buf(count);
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_c2r_1d(static_cast<int>(count), buf.spec, buf.real, FFTW_ESTIMATE);
    }
    const std::size_t half = count / 2 + 1;
    for (std::size_t k = 0; k < half; ++k) buf.spec[k][0] = buf.spec[k][1] = 0.0;
    buf.spec[0][0] = p.a0();
    // x_m = -pi + 2 pi m / N, so e^{ik x_m} = (-1)^k e^{2 pi i k m / N}
    for (std::size_t k = 1; k <= d; ++k) {
        const double sgn = (k % 2 == 0) ? 0.5 : -0.5;
        buf.spec[k][0] = sgn * p.a(static_cast<int>(k));
        buf.spec[k][1] = -sgn * p.b(static_cast<int>(k));
    }
    fftw_execute(plan);
    std::vector<double> out(buf.real, buf.real + count);
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}

TrigPoly from_samples(std::span<const double> values, int degree) {
    const std::size_t count = values.size();
    if (degree < 0) throw std::invalid_argument("from_samples: negative degree");
    if (count < 2 * static_cast<std::size_t>(degree) + 1)
        throw std::invalid_argument("from_samples: " + std::to_string(count) +
                                    " samples cannot determine degree " + std::to_string(degree));
    FftwBuffers buf(count);
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(count), buf.real, buf.spec, FFTW_ESTIMATE);
    }
    std::copy(values.begin(), values.end(), buf.real);
    fftw_execute(plan);
    const double inv = 1.0 / static_cast<double>(count);
    TrigPoly p(degree);
    p.a0() = buf.spec[0][0] * inv;
    for (int k = 1; k <= degree; ++k) {
        const double sgn = (k % 2 == 0) ? 2.0 * inv : -2.0 * inv;
        p.a(k) = sgn * buf.spec[k][0];
        p.b(k) = -sgn * buf.spec[k][1];
    }
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    return p;
}

TrigPoly LinearPlusTrig::derivative() const {
    TrigPoly d = comonotone::derivative(periodic);
    d.a0() += slope;
    return d;
}

LinearPlusTrig& LinearPlusTrig::operator+=(const LinearPlusTrig& other) {
    return add_scaled(other, 1.0);
}

LinearPlusTrig& LinearPlusTrig::add_scaled(const LinearPlusTrig& other, double c) {
    slope += c * other.slope;
    periodic.add_scaled(other.periodic, c);
    return *this;
}

LinearPlusTrig antiderivative_split(const TrigPoly& p) {
    LinearPlusTrig out;
    out.slope = p.a0();
    out.periodic = TrigPoly(p.degree());
    for (int k = 1; k <= p.degree(); ++k) {
        out.periodic.a(k) = -p.b(k) / k;
        out.periodic.b(k) = p.a(k) / k;
    }
    return out;
}

TrigPolyAccumulator::TrigPolyAccumulator(int degree) : degree_(0), sum_(1, 0.0), comp_(1, 0.0) {
    grow(degree);
}

void TrigPolyAccumulator::grow(int degree) {
    if (degree <= degree_) return;
    degree_ = degree;
    sum_.resize(2 * static_cast<std::size_t>(degree) + 1, 0.0);
    comp_.resize(sum_.size(), 0.0);
}

void TrigPolyAccumulator::add(const TrigPoly& p, double scale) {
    grow(p.degree());
    auto kahan = [this](std::size_t idx, double v) {
        const double y = v - comp_[idx];
        const double t = sum_[idx] + y;
        comp_[idx] = (t - sum_[idx]) - y;
        sum_[idx] = t;
    };
    kahan(0, scale * p.a0());
    for (int k = 1; k <= p.degree(); ++k) {
        kahan(2 * k - 1, scale * p.a(k));
        kahan(2 * k, scale * p.b(k));
    }
}

void TrigPolyAccumulator::add_constant(double c) { add(TrigPoly::constant(c)); }

TrigPoly TrigPolyAccumulator::result() const {
    TrigPoly p(degree_);
    p.a0() = sum_[0];
    for (int k = 1; k <= degree_; ++k) {
        p.a(k) = sum_[2 * k - 1];
        p.b(k) = sum_[2 * k];
    }
    return p;
}

BreakpointSet::BreakpointSet(std::vector<double> points) : points_(std::move(points)) {
    if (points_.empty() || points_.size() % 2 != 0)
        throw std::invalid_argument("BreakpointSet: need a positive even number of points");
    std::sort(points_.begin(), points_.end(), std::greater<>());
    for (double y : points_) {
        if (!std::isfinite(y) || y < -kPi || y >= kPi)
            throw std::invalid_argument("BreakpointSet: point " + std::to_string(y) +
                                        " outside [-pi, pi)");
    }
    for (std::size_t i = 1; i < points_.size(); ++i)
        if (!(points_[i - 1] > points_[i]))
            throw std::invalid_argument("BreakpointSet: duplicate point");
}

double BreakpointSet::y(int i) const {
    const int m = size();
    // i = r + q m with r in 1..m
    int q = (i - 1) / m;
    if ((i - 1) % m < 0) --q;
    const int r = i - q * m;
    return points_[static_cast<std::size_t>(r - 1)] - 2.0 * kPi * q;
}

double BreakpointSet::distance(double x) const {
    double best = INFINITY;
    for (double y : points_) {
        double d = std::remainder(x - y, 2.0 * kPi);
        best = std::min(best, std::abs(d));
    }
    return best;
}

std::vector<double> BreakpointSet::gaps() const {
    std::vector<double> g(points_.size());
    for (int i = 1; i <= size(); ++i) g[i - 1] = y(i - 1) - y(i);
    return g;
}

TrigPoly make_sign_poly(std::span<const double> points) {
    if (points.size() % 2 != 0)
        throw std::invalid_argument("make_sign_poly: odd number of points");
    TrigPoly p = TrigPoly::constant(1.0);
    for (std::size_t i = 0; i < points.size(); i += 2) {
        // sin((x-u)/2) sin((x-v)/2) = [cos((v-u)/2) - cos(x - (u+v)/2)] / 2
        const double u = points[i], v = points[i + 1];
        const double m = 0.5 * (u + v);
        TrigPoly pair(0.5 * std::cos(0.5 * (v - u)), {-0.5 * std::cos(m)}, {-0.5 * std::sin(m)});
        p = multiply(p, pair);
    }
    return p;
}

TrigPoly make_pi(const BreakpointSet& y) { return make_sign_poly(y.points()); }

}  // namespace comonotone
