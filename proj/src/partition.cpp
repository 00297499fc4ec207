#include "comonotone/partition.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace comonotone {

namespace {
constexpr double kPi = std::numbers::pi;
}

UniformGrid::UniformGrid(int n) : n_(n), h_(kPi / n) {
    if (n < 1) throw std::invalid_argument("UniformGrid: n must be >= 1");
}

double UniformGrid::x(int j) const { return -static_cast<double>(j) * kPi / n_; }

int UniformGrid::normalize(int j) const {
    const int period = 2 * n_;
    int q = (j + n_ - 1) % period;
    if (q < 0) q += period;
    return q - n_ + 1;
}

int UniformGrid::interval_of(double xv) const {
    int j = static_cast<int>(std::ceil(-xv / h_));
    while (x(j) > xv) ++j;
    while (x(j - 1) <= xv) --j;
    return j;
}

double divided_difference_bound(int r) {
    if (r < 2) throw std::invalid_argument("divided_difference_bound: r must be >= 2");
    const double base = 2.0 * r - 3.0;
    return std::pow(base, r - 1) / std::tgamma(static_cast<double>(r)) +
           (r - 1) * std::pow(base, r - 2);
}

SignWitness find_N(const BreakpointSet& y) {
    const TrigPoly pi = make_pi(y);
    double best_pos = -1.0, best_neg = -1.0;
    SignWitness w;
    for (int i = 1; i <= y.size(); ++i) {
        const double hi = y.y(i - 1), lo = y.y(i);
        const double gap = hi - lo, mid = 0.5 * (hi + lo);
        const double sgn = pi(mid);
        if (sgn > 0 && gap > best_pos) {
            best_pos = gap;
            w.x_pos = std::remainder(mid, 2.0 * kPi);
        } else if (sgn < 0 && gap > best_neg) {
            best_neg = gap;
            w.x_neg = std::remainder(mid, 2.0 * kPi);
        }
    }
    if (best_pos <= 0 || best_neg <= 0)
        throw std::logic_error("find_N: Pi lacks one of the sign classes");
    // arc of radius pi/N fits in a gap g iff N >= 2 pi / g
    auto need = [](double g) { return static_cast<int>(std::ceil(2.0 * kPi / g - 1e-12)); };
    w.N = std::max(need(best_pos), need(best_neg));
    return w;
}

int find_N1(const BreakpointSet& y) {
    const auto g = y.gaps();
    const double min_gap = *std::min_element(g.begin(), g.end());
    return static_cast<int>(std::floor(6.0 * kPi / min_gap)) + 1;
}

std::vector<IntervalType> classify(const std::function<double(double)>& fprime, int r,
                                   const UniformGrid& grid, double c1, int samples_per_interval) {
    if (r < 2) throw std::invalid_argument("classify: r must be >= 2");
    if (samples_per_interval < 8)
        throw std::invalid_argument("classify: need at least 8 samples per interval");
    const double small = c1 * std::pow(grid.h(), r - 1);
    const double large = std::pow(grid.h(), r - 1);
    std::vector<IntervalType> types(static_cast<std::size_t>(grid.count()));
    for (int slot = 0; slot < grid.count(); ++slot) {
        const int j = grid.index_at_slot(slot);
        const double a = grid.x(j), b = grid.x(j - 1);
        double lo = INFINITY, hi = 0.0;
        for (int q = 0; q <= samples_per_interval; ++q) {
            const double v = std::abs(fprime(a + (b - a) * q / samples_per_interval));
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (hi <= small)
            types[slot] = IntervalType::Type1;
        else if (lo >= large)
            types[slot] = IntervalType::Type2;
        else
            types[slot] = IntervalType::Type3;
    }
    return types;
}

PartitionState::PartitionState(UniformGrid grid, int r, double c1, std::vector<IntervalType> types)
    : grid_(grid), r_(r), c1_(c1), types_(std::move(types)), base_(grid.n()) {
    if (static_cast<int>(types_.size()) != grid_.count())
        throw std::invalid_argument("PartitionState: type vector has wrong length");
    const auto m = static_cast<std::size_t>(grid_.count());
    groups_.assign(m, Group::W1);
    for (auto& v : m_) v.assign(m, true);
    o_.assign(m, false);
    for (int s = 0; s < grid_.count(); ++s) h_.push_back(grid_.index_at_slot(s));
}

std::vector<bool> PartitionState::dilate(const std::vector<bool>& set) const {
    const int m = grid_.count();
    std::vector<bool> out(set.size(), false);
    for (int s = 0; s < m; ++s)
        out[s] = set[s] || set[(s + 1) % m] || set[(s + m - 1) % m];
    return out;
}

void PartitionState::build_groups_and_regions() {
    const int m = grid_.count();
    auto is2 = [&](int s) { return types_[s] == IntervalType::Type2; };
    packs_.clear();
    std::vector<int> pack_id(m, -1);

    const int start = [&] {
        for (int s = 0; s < m; ++s)
            if (!is2(s)) return s;
        return -1;
    }();
    if (start < 0) {
        // the whole period is one pack
        std::vector<int> all;
        for (int s = 0; s < m; ++s) {
            all.push_back(grid_.index_at_slot(s));
            pack_id[s] = 0;
        }
        packs_.push_back(std::move(all));
    } else {
        std::vector<int> run;
        auto flush = [&] {
            if (run.size() >= 7) {
                std::vector<int> idx;
                for (int s : run) {
                    pack_id[s] = static_cast<int>(packs_.size());
                    idx.push_back(grid_.index_at_slot(s));
                }
                packs_.push_back(std::move(idx));
            }
            run.clear();
        };
        // walk one period starting just after a non-Type2 slot so runs never wrap
        for (int k = 1; k <= m; ++k) {
            const int s = (start + k) % m;
            if (is2(s))
                run.push_back(s);
            else
                flush();
        }
        flush();
    }

    if (packs_.empty()) {
        groups_.assign(m, Group::W1);
        base_ = grid_.n();
    } else {
        for (int s = 0; s < m; ++s)
            if (pack_id[s] >= 0) groups_[s] = Group::InPack;
        // stretches between consecutive packs
        const int first = [&] {
            for (int s = 0; s < m; ++s)
                if (pack_id[s] >= 0 && pack_id[(s + 1) % m] < 0) return s;
            return -1;
        }();
        if (first >= 0) {
            int s = (first + 1) % m;
            int visited = 0;
            while (visited < m) {
                if (pack_id[s] >= 0) {
                    s = (s + 1) % m;
                    ++visited;
                    continue;
                }
                std::vector<int> stretch;
                while (pack_id[s] < 0 && visited < m) {
                    stretch.push_back(s);
                    s = (s + 1) % m;
                    ++visited;
                }
                const bool has1 = std::any_of(stretch.begin(), stretch.end(), [&](int q) {
                    return types_[q] == IntervalType::Type1;
                });
                for (int q : stretch) groups_[q] = has1 ? Group::W1 : Group::W2;
            }
        }
        const auto& p0 = packs_.front();
        base_ = grid_.normalize(p0[p0.size() / 2]);
    }

    std::vector<bool> M(m);
    for (int s = 0; s < m; ++s) M[s] = groups_[s] == Group::W1;
    m_[0] = M;
    for (int k = 1; k < 4; ++k) m_[k] = dilate(m_[k - 1]);
}

void PartitionState::build_O_and_H(const BreakpointSet& y) {
    const int m = grid_.count();
    o_.assign(m, false);
    bp_interval_.clear();
    for (double yi : y.points()) {
        const int j = grid_.interval_of(yi);
        bp_interval_.push_back(j);
        for (int d : {1, 0, -1}) {
            const int s = grid_.slot(j + d);
            if (o_[s])
                throw std::domain_error("build_O_and_H: neighbourhoods of breakpoints overlap at n = " +
                                        std::to_string(grid_.n()));
            o_[s] = true;
        }
    }
    h_.clear();
    for (int s = 0; s < m; ++s)
        if (!o_[s]) h_.push_back(grid_.index_at_slot(s));
}

int PartitionState::longest_type3_run() const {
    const int m = grid_.count();
    int best = 0, cur = 0;
    // two passes handle wrap-around
    for (int k = 0; k < 2 * m; ++k) {
        if (types_[k % m] == IntervalType::Type3) {
            cur = std::min(cur + 1, m);
            best = std::max(best, cur);
        } else {
            cur = 0;
        }
    }
    return best;
}

std::string PartitionState::dump_json() const {
    nlohmann::json j;
    j["n"] = grid_.n();
    j["r"] = r_;
    j["c1"] = c1_;
    j["base_index"] = base_;
    j["packs"] = packs_;
    j["breakpoint_interval"] = bp_interval_;
    auto& rows = j["intervals"] = nlohmann::json::array();
    for (int s = 0; s < grid_.count(); ++s) {
        const int idx = grid_.index_at_slot(s);
        const char* group = groups_[s] == Group::W1 ? "W1" : groups_[s] == Group::W2 ? "W2" : "pack";
        rows.push_back({{"j", idx},
                        {"left", grid_.x(idx)},
                        {"right", grid_.x(idx - 1)},
                        {"type", static_cast<int>(types_[s])},
                        {"group", group},
                        {"M", bool(m_[0][s])},
                        {"M1", bool(m_[1][s])},
                        {"M2", bool(m_[2][s])},
                        {"Omega", bool(m_[3][s])},
                        {"O", bool(o_[s])}});
    }
    return j.dump(2);
}

PartitionState build_partition(const std::function<double(double)>& fprime, int r, int n,
                               const BreakpointSet& y, const PartitionOptions& opts) {
    UniformGrid grid(n);
    const double c1 = divided_difference_bound(r);
    PartitionState st(grid, r, c1, classify(fprime, r, grid, c1, opts.samples_per_interval));
    st.build_groups_and_regions();
    st.build_O_and_H(y);
    return st;
}

}  // namespace comonotone
