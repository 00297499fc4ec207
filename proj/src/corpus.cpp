#include "comonotone/corpus.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace comonotone {

namespace {

constexpr double kPi = std::numbers::pi;

// f' = Pi q with q = (alpha + 0.6 cos x + 0.8 sin x)^2 > 0, alpha picked so
// that f' has zero mean; then scaled so |f^(r)| <= 1 for r <= 3.
CorpusEntry make_two_pair() {
    const std::vector<double> pts{2.0, 0.5, -1.0, -2.0};
    const TrigPoly pi = make_pi(BreakpointSet(pts));
    const TrigPoly w(0.0, {0.6}, {0.8});
    // mean of Pi (alpha + w)^2 = alpha^2 A + 2 alpha B + C
    const double A = pi.a0();
    const double B = multiply(pi, w).a0();
    const double C = multiply(pi, multiply(w, w)).a0();
    const double disc = B * B - A * C;
    if (disc < 0) throw std::logic_error("two_pair: no zero-mean weight in this family");
    const double alpha = (-B + std::sqrt(disc)) / A;
    TrigPoly q = w;
    q.a0() += alpha;
    TrigPoly fp = multiply(pi, multiply(q, q));
    if (std::abs(fp.a0()) > 1e-12) throw std::logic_error("two_pair: derivative mean not zero");
    fp.a0() = 0.0;
    LinearPlusTrig F = antiderivative_split(fp);
    // sup |f^(r)| <= sum k^r (|a_k| + |b_k|)
    double worst = 0.0;
    for (int r = 1; r <= 3; ++r) {
        double b = 0.0;
        for (int k = 1; k <= F.periodic.degree(); ++k)
            b += std::pow(k, r) * (std::abs(F.periodic.a(k)) + std::abs(F.periodic.b(k)));
        worst = std::max(worst, b);
    }
    const double scale = 1.0 / worst;
    TrigPoly f = F.periodic * scale;
    TrigPoly d = derivative(f);
    CorpusEntry e;
    e.id = "two_pair";
    e.f = [f](double x) { return f(x); };
    e.fprime = [d](double x) { return d(x); };
    e.breakpoints = pts;
    e.r_max = 3;
    e.description = "s = 2, f' = Pi (alpha + 0.6 cos x + 0.8 sin x)^2, scaled";
    return e;
}

std::vector<CorpusEntry> build() {
    std::vector<CorpusEntry> out;
    out.push_back({"const", [](double) { return 0.3; }, [](double) { return 0.0; },
                   {kPi / 2, -kPi / 2}, 16, "f = 0.3"});
    out.push_back({"neg_sin", [](double x) { return -std::sin(x); },
                   [](double x) { return -std::cos(x); }, {kPi / 2, -kPi / 2}, 16, "f = -sin x"});
    // f' = -(1/4) cos x (1 + sin(2x)/2); |f^(r)| <= (1 + 3^r/12 + 1/4) / 4 <= 1 up to r = 3
    out.push_back({"neg_sin_warped",
                   [](double x) { return 0.25 * (-std::sin(x) + std::cos(3 * x) / 12 + std::cos(x) / 4); },
                   [](double x) { return 0.25 * (-std::cos(x) - std::sin(3 * x) / 4 - std::sin(x) / 4); },
                   {kPi / 2, -kPi / 2}, 3, "f' = -cos x (1 + sin 2x / 2) / 4"});
    out.push_back(make_two_pair());
    return out;
}

}  // namespace

const std::vector<CorpusEntry>& corpus() {
    static const std::vector<CorpusEntry> entries = build();
    return entries;
}

const CorpusEntry& corpus_entry(const std::string& id) {
    for (const auto& e : corpus())
        if (e.id == id) return e;
    throw std::invalid_argument("unknown corpus function '" + id + "'");
}

double membership_margin(const CorpusEntry& e, const BreakpointSet& y, int samples) {
    const TrigPoly pi = make_pi(y);
    double lo = 0.0, scale = 0.0;
    for (int m = 0; m < samples; ++m) {
        const double x = -kPi + 2.0 * kPi * m / samples;
        const double v = e.fprime(x) * pi(x);
        lo = std::min(lo, v);
        scale = std::max(scale, std::abs(v));
    }
    return scale > 0.0 ? lo / scale : 0.0;
}

}  // namespace comonotone
