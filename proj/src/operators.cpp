#include "comonotone/operators.hpp"

#include "comonotone/kernels.hpp"
#include "comonotone/verify.hpp"

#include <boost/math/special_functions/binomial.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

namespace comonotone {

namespace {

constexpr double kPi = std::numbers::pi;

double sign_of(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }

LinearPlusTrig average_steps(int l, int n1, double centre, const TrigPoly& pi) {
    const StepApproximant a = build_step(l, n1, centre, pi);
    const StepApproximant b = build_step(l, n1, centre + kPi / n1, pi);
    LinearPlusTrig out = a.value;
    out.add_scaled(b.value, 1.0);
    out.slope *= 0.5;
    out.periodic *= 0.5;
    return out;
}

// representative of x in (lo, lo + 2 pi]
double wrap_above(double x, double lo) {
    const double k = std::ceil((lo - x) / (2.0 * kPi));
    double v = x + 2.0 * kPi * k;
    if (v <= lo) v += 2.0 * kPi;
    return v;
}

class Stopwatch {
public:
    Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
    double lap_ms() {
        const auto t = std::chrono::steady_clock::now();
        const double ms = std::chrono::duration<double, std::milli>(t - t0_).count();
        t0_ = t;
        return ms;
    }

private:
    std::chrono::steady_clock::time_point t0_;
};

}  // namespace

StepFamily::StepFamily(const UniformGrid& grid, TrigPoly pi, int n1, int s)
    : grid_(grid), pi_(std::move(pi)), n1_(n1), s_(s) {
    if (n1 < 1) throw std::invalid_argument("StepFamily: n1 must be >= 1");
}

const LinearPlusTrig& StepFamily::T(int j) {
    auto it = cache_.find(j);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(j, average_steps(s_ + 2, n1_, grid_.midpoint(j), pi_)).first->second;
}

LinearPlusTrig StepFamily::averaged(int j, const TrigPoly& pi) const {
    return average_steps(s_ + 2, n1_, grid_.midpoint(j), pi);
}

LinearPlusTrig StepFamily::T_star(int j) const {
    const double ends[2] = {grid_.x(j), grid_.x(j - 1)};
    const TrigPoly pij = multiply(pi_, make_sign_poly(ends));
    return build_step(s_ + 3, n1_, grid_.midpoint(j), pij).value;
}

TrigPoly StepFamily::T_bar(int j) {
    TrigPoly out = T(j).periodic;
    out -= T_star(j).periodic;
    // Pi keeps one sign on I_j for indices outside the breakpoint neighbourhoods
    out *= sign_of(pi_(grid_.midpoint(j)));
    return out;
}

LinearPlusTrig build_Vn(const std::function<double(int)>& G_grid, const PartitionState& partition,
                        StepFamily& steps, const SignWitness& witness) {
    const auto& grid = partition.grid();
    const int n = grid.n();
    if (n <= witness.N)
        throw std::domain_error("build_Vn: n = " + std::to_string(n) + " must exceed N = " +
                                std::to_string(witness.N));
    const int base = partition.base_index();
    const double x_base = grid.x(base);

    // global steps for increments inside the breakpoint neighbourhoods
    std::optional<LinearPlusTrig> up, down;
    auto global = [&](bool rising) -> const LinearPlusTrig& {
        auto& slot = rising ? up : down;
        if (!slot) {
            const double c = wrap_above(rising ? witness.x_pos : witness.x_neg, x_base);
            slot = build_step(steps.s() + 2, steps.n1(), c, steps.pi()).value;
        }
        return *slot;
    };

    TrigPolyAccumulator acc;
    double slope = 0.0;
    acc.add_constant(G_grid(base));
    for (int j = base - 2 * n + 1; j <= base; ++j) {
        const double dG = G_grid(j - 1) - G_grid(j);
        if (dG == 0.0) continue;
        const LinearPlusTrig& T = partition.in_H(j) ? steps.T(j) : global(dG >= 0.0);
        acc.add(T.periodic, dG);
        slope += dG * T.slope;
    }
    return LinearPlusTrig{slope, acc.result()};
}

TrigPoly build_theta(int n2, int l, int r, const std::function<double(double)>& G_periodic,
                     const ThetaOptions& opts) {
    if (l <= r + 2)
        throw std::invalid_argument("build_theta: need l > r + 2 (l=" + std::to_string(l) +
                                    ", r=" + std::to_string(r) + ")");
    const KernelSpec spec = make_kernel(l, n2);
    const auto e = jackson_fourier(l, n2);
    const int L = static_cast<int>(e->size()) - 1;

    std::vector<double> mult(static_cast<std::size_t>(L) + 1, 0.0);
    for (int jj = 1; jj <= r; ++jj) {
        const double w = ((jj % 2 == 1) ? 1.0 : -1.0) * boost::math::binomial_coefficient<double>(r, jj);
        for (int k = 0; k * jj <= L; ++k) mult[k] += w * 2.0 * kPi * (*e)[k * jj] / spec.gamma;
    }

    auto coeffs = [&](std::size_t N, double& gmax) {
        std::vector<double> v(N);
        gmax = 0.0;
        for (std::size_t m = 0; m < N; ++m) {
            v[m] = G_periodic(-kPi + 2.0 * kPi * m / N);
            gmax = std::max(gmax, std::abs(v[m]));
        }
        return from_samples(v, L);
    };
    auto l1_diff = [](const TrigPoly& a, const TrigPoly& b) {
        double s = std::abs(a.a0() - b.a0());
        for (int k = 1; k <= a.degree(); ++k) s += std::abs(a.a(k) - b.a(k)) + std::abs(a.b(k) - b.b(k));
        return s;
    };

    std::size_t N = 1;
    while (N < 4 * static_cast<std::size_t>(L) + 2) N <<= 1;
    double gmax = 0.0;
    TrigPoly g = coeffs(N, gmax);
    const double tol = opts.tolerance > 0.0
                           ? opts.tolerance
                           : 1e-3 * std::pow(kPi / n2, r) * std::max(1.0, gmax);
    bool converged = false;
    for (int it = 0; it < opts.max_refinements; ++it) {
        N <<= 1;
        TrigPoly finer = coeffs(N, gmax);
        const double d = l1_diff(g, finer);
        g = std::move(finer);
        if (d <= tol) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw std::runtime_error("build_theta: coefficients did not stabilize with " +
                                 std::to_string(N) + " samples");

    TrigPoly out(L);
    out.a0() = mult[0] * g.a0();
    for (int k = 1; k <= L; ++k) {
        out.a(k) = mult[k] * g.a(k);
        out.b(k) = mult[k] * g.b(k);
    }
    return out;
}

RParts build_R(const SplitFunctions& split, StepFamily& steps, int n2, const ConstantsLedger& ledger) {
    const auto& P = split.partition();
    const auto& grid = P.grid();
    const int n = grid.n();
    const int r = P.r();
    const int s = steps.s();
    RParts out;
    if (split.trivial()) {
        out.theta = TrigPoly::constant(0.0);
    } else {
        out.theta = build_theta(n2, 2 * (s + 1) + r, r, [&](double x) { return split.tildeG2(x); });
    }

    TrigPolyAccumulator acc;
    double c23 = 0.0;
    for (int j = -n + 1; j <= n; ++j) {
        if (!P.in_H(j) || !P.in_V2_minus_W1(j)) continue;
        const TrigPoly tb = steps.T_bar(j);
        out.tbar_indices.push_back(j);
        acc.add(tb);
        const TrigPoly d = derivative(tb);
        for (int q = 0; q <= 40; ++q) {
            const double x = grid.x(j) + grid.h() * q / 40.0;
            c23 = std::max(c23, std::abs(d(x)) / n);
        }
    }
    out.tbar_sum = acc.result();
    const bool measured = ledger.mode == Mode::Practical && !ledger.overridden("c23") && c23 > 0.0;
    out.c23 = measured ? c23 : ledger.get("c23");
    out.weight = out.tbar_indices.empty() ? 0.0 : std::pow(kPi, r - 1) / (2.0 * out.c23 * std::pow(n, r));

    out.value.slope = -split.B();
    out.value.periodic = out.theta;
    out.value.periodic.add_scaled(out.tbar_sum, out.weight);
    return out;
}

BreakpointCorrection build_correction(int i, const LinearPlusTrig& R, const PartitionState& partition,
                                      const BreakpointSet& y, StepFamily& steps, int r) {
    const auto& grid = partition.grid();
    const int n = grid.n();
    BreakpointCorrection c;
    c.i = i;
    c.j = partition.breakpoint_interval()[static_cast<std::size_t>(i - 1)];
    const int j = c.j;
    const double yi = y.y(i);

    std::vector<double> others;
    for (int k = 1; k <= y.size(); ++k)
        if (k != i) others.push_back(y.y(k));
    std::vector<double> upper_pts = others, lower_pts = others;
    upper_pts.push_back(grid.x(j + 1));
    lower_pts.push_back(grid.x(j - 2));
    const TrigPoly pi_upper = make_sign_poly(upper_pts);
    const TrigPoly pi_lower = make_sign_poly(lower_pts);

    const double sp = sign_of(steps.pi()(grid.midpoint(j + 2)));
    const double sm = sign_of(steps.pi()(grid.midpoint(j - 2)));
    const LinearPlusTrig& Tp = steps.T(j + 2);
    const LinearPlusTrig& Tm = steps.T(j - 2);

    auto make_K = [&](const LinearPlusTrig& T, const LinearPlusTrig& Pavg, double sgn) {
        TrigPoly k = T.periodic;
        k -= Pavg.periodic;
        k *= sgn;
        return k;
    };

    c.R_prime = R.slope + derivative(R.periodic)(yi);
    c.upper = c.R_prime * sign_of(steps.pi()(grid.x(j + 2))) >= 0.0;
    const TrigPoly Kraw = c.upper ? make_K(Tp, steps.averaged(j - 2, pi_upper), sp)
                                  : make_K(Tm, steps.averaged(j + 2, pi_lower), sm);
    const double kd = derivative(Kraw)(yi);
    // the guaranteed size decays like (n/n1)^{2(s+2)} n; only reject rounding-level values
    if (!(std::abs(kd) > 1e-13 * n))
        throw std::domain_error("build_correction: degenerate correction slope at breakpoint " +
                                std::to_string(i));
    c.K = Kraw * std::abs(c.R_prime / kd);
    // rescaling rounds every coefficient; K'(y_i) is a heavily cancelled sum, so
    // absorb the leftover with eps sin(x - y_i), whose slope at y_i is eps
    const double eps = -(c.R_prime + derivative(c.K)(yi));
    c.K.a(1) -= eps * std::sin(yi);
    c.K.b(1) += eps * std::cos(yi);
    c.K_prime = derivative(c.K)(yi);

    c.U = Tp.periodic;
    c.U -= Tm.periodic;
    c.U *= sp / std::pow(n, r);
    return c;
}

ApproximationResult assemble_tau(const Instance& inst, int r, int n, const ConstantsLedger& ledger,
                                 const AssembleOptions& opts) {
    if (n < 1) throw std::invalid_argument("assemble_tau: n must be >= 1");
    if (r < 2) throw std::invalid_argument("assemble_tau: r must be >= 2");
    ApproximationResult res;
    res.mode = ledger.mode;
    res.ledger = ledger;
    const auto& y = inst.y;
    const int s = y.s();
    const TrigPoly pi = make_pi(y);
    const SignWitness witness = find_N(y);
    const int N1 = find_N1(y);
    const int N2 = std::max(witness.N, N1);
    res.ledger.set("N", witness.N, Provenance::Formula, "sign-arc radius pi/N");
    res.ledger.set("N1", N1, Provenance::Formula, "floor(6 pi / min gap) + 1");
    res.ledger.set("N2", N2, Provenance::Formula, "max(N, N1)");
    Stopwatch clock;

    auto margin_points = [&](int degree) {
        return std::max<std::size_t>(static_cast<std::size_t>(opts.grid_density) * n,
                                     8 * static_cast<std::size_t>(degree) + 16);
    };

    if (n <= N2) {
        // small n: the constant midrange already meets the bound
        const std::size_t M = std::max<std::size_t>(margin_points(0), 1 << 16);
        const auto [lo, hi] = value_range(inst.f, M);
        res.whitney = true;
        res.tau = TrigPoly::constant(0.5 * (lo + hi));
        res.degree = 0;
        res.times.verify = clock.lap_ms();
        res.sup_error = sup_error(inst.f, res.tau, M);
        res.margin = comonotonicity_margin(res.tau, pi, M);
        return res;
    }

    const int n1 = static_cast<int>(std::ceil(ledger.get("n1_multiplier") * n - 1e-9));
    const int n2 = static_cast<int>(std::ceil(ledger.get("n2_multiplier") * n - 1e-9));
    const int l_theta = 2 * (s + 1) + r;
    const long long planned =
        std::max<long long>(static_cast<long long>(s + 3) * (n1 - 1) + s + 1,
                            static_cast<long long>(l_theta) * (n2 - 1));
    if (planned > opts.max_degree)
        throw std::domain_error("assemble_tau: planned degree " + std::to_string(planned) +
                                " exceeds the cap " + std::to_string(opts.max_degree) + " (" +
                                to_string(ledger.mode) + " mode, n1=" + std::to_string(n1) +
                                ", n2=" + std::to_string(n2) + ")");

    const PartitionState partition = build_partition(inst.fprime, r, n, y, opts.partition);
    if (partition.longest_type3_run() > 2 * r - 4)
        throw std::domain_error("partition: " + std::to_string(partition.longest_type3_run()) +
                                " consecutive Type3 intervals; f is outside the smoothness class");
    res.times.partition = clock.lap_ms();

    const SplitFunctions split(inst.f, inst.fprime, partition);
    res.no_packs = split.trivial();
    res.times.split = clock.lap_ms();

    StepFamily steps(partition.grid(), pi, n1, s);
    const LinearPlusTrig V = build_Vn([&](int j) { return split.G1_grid(j); }, partition, steps, witness);
    res.times.vn = clock.lap_ms();

    if (res.no_packs) {
        res.tau = V.periodic;
        res.linear_residue = std::abs(V.slope);
        res.degree = res.tau.degree();
        res.u_weight = 0.0;
        const std::size_t M = margin_points(res.degree);
        res.margin = comonotonicity_margin(res.tau, pi, M);
        res.sup_error = sup_error(inst.f, res.tau, M);
        res.times.verify = clock.lap_ms();
        return res;
    }

    const RParts R = build_R(split, steps, n2, ledger);
    res.ledger.set("c23", R.c23, R.c23 == ledger.get("c23") ? ledger.entry("c23").provenance
                                                            : Provenance::Estimated,
                   "max |Tbar_j'| / n over I_j");
    res.ledger.set("n1", n1, Provenance::Formula, "ceil(n1_multiplier n)");
    res.ledger.set("n2", n2, Provenance::Formula, "ceil(n2_multiplier n)");
    res.times.theta = clock.lap_ms();

    TrigPolyAccumulator base;
    base.add(V.periodic);
    base.add(R.value.periodic);
    TrigPolyAccumulator usum;
    for (int i = 1; i <= y.size(); ++i) {
        BreakpointCorrection c = build_correction(i, R.value, partition, y, steps, r);
        base.add(c.K);
        usum.add(c.U);
        res.corrections.push_back(std::move(c));
    }
    const TrigPoly tau0 = base.result();
    const TrigPoly U = usum.result();
    res.linear_residue = std::abs(V.slope + R.value.slope);
    res.times.corrections = clock.lap_ms();

    const int degree = std::max(tau0.degree(), U.degree());
    const std::size_t M = margin_points(degree);
    const auto d0 = eval_uniform(derivative(tau0), M);
    const auto du = eval_uniform(derivative(U), M);
    const auto pv = eval_uniform(pi, M);
    // min of (tau0' + kappa U') Pi and max |.|; candidates are compared on the kappa = 1 scale
    auto extremes = [&](double kappa) {
        double lo = 0.0, scale = 0.0;
        for (std::size_t m = 0; m < M; ++m) {
            const double v = (d0[m] + kappa * du[m]) * pv[m];
            lo = std::min(lo, v);
            scale = std::max(scale, std::abs(v));
        }
        return std::pair{lo, scale};
    };
    auto margin_for = [&](double kappa) {
        const auto [lo, scale] = extremes(kappa);
        return scale > 0.0 ? lo / scale : 0.0;
    };

    double kappa = ledger.get("u_weight");
    if (!ledger.overridden("u_weight")) {
        const double ref = std::max(extremes(1.0).second, 1e-300);
        double best_lo = -INFINITY, best_kappa = 1.0;
        kappa = -1.0;
        for (int q = 0; q <= 10; ++q) {
            const double k = std::ldexp(1.0, q);
            const auto [lo, scale] = extremes(k);
            if (scale == 0.0 || lo / scale >= -opts.margin_tolerance) {
                kappa = k;
                break;
            }
            if (lo / ref > best_lo) {
                best_lo = lo / ref;
                best_kappa = k;
            }
        }
        if (kappa < 0.0) kappa = best_kappa;
        res.ledger.set("u_weight", kappa, Provenance::Estimated,
                       "smallest power of two in 1..1024 passing the sampled sign check");
    }
    res.u_weight = kappa;
    res.tau = tau0;
    res.tau.add_scaled(U, kappa);
    res.degree = res.tau.degree();
    res.margin = margin_for(kappa);
    res.sup_error = sup_error(inst.f, res.tau, M);
    res.times.verify = clock.lap_ms();
    return res;
}

}  // namespace comonotone
