#include "comonotone/constants.hpp"

#include "comonotone/kernels.hpp"
#include "comonotone/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace comonotone {

namespace {
const std::string kOverrideNote = "override";
}

std::string to_string(Mode m) { return m == Mode::Strict ? "strict" : "practical"; }

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::Formula: return "formula";
        case Provenance::Estimated: return "estimated";
        case Provenance::Configured: return "configured";
    }
    return "unknown";
}

Mode parse_mode(const std::string& s) {
    if (s == "strict") return Mode::Strict;
    if (s == "practical") return Mode::Practical;
    throw std::invalid_argument("unknown mode '" + s + "' (expected strict or practical)");
}

void ConstantsLedger::set(const std::string& key, double value, Provenance p, std::string note) {
    if (!std::isfinite(value) || value <= 0.0)
        throw std::domain_error("ledger: constant " + key + " must be positive and finite, got " +
                                std::to_string(value));
    entries_[key] = LedgerEntry{value, p, std::move(note)};
}

double ConstantsLedger::get(const std::string& key) const { return entry(key).value; }

const LedgerEntry& ConstantsLedger::entry(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) throw std::out_of_range("ledger: no constant named " + key);
    return it->second;
}

bool ConstantsLedger::overridden(const std::string& key) const {
    auto it = entries_.find(key);
    return it != entries_.end() && it->second.provenance == Provenance::Configured &&
           it->second.note == kOverrideNote;
}

const std::vector<std::string>& overridable_keys() {
    static const std::vector<std::string> keys{"n1_multiplier", "n2_multiplier", "c23",
                                               "u_weight",      "c4",            "c25p"};
    return keys;
}

ConstantsLedger resolve_constants(int s, int r, Mode mode,
                                  const std::map<std::string, double>& overrides) {
    if (s < 1) throw std::invalid_argument("resolve_constants: s must be >= 1");
    if (r < 2) throw std::invalid_argument("resolve_constants: r must be >= 2");
    for (const auto& [k, v] : overrides) {
        (void)v;
        if (std::find(overridable_keys().begin(), overridable_keys().end(), k) ==
            overridable_keys().end())
            throw std::invalid_argument("unknown constant override '" + k + "'");
    }

    ConstantsLedger L;
    L.mode = mode;
    L.set("c1", divided_difference_bound(r), Provenance::Formula, "(2r-3)^{r-1}/(r-1)! + (r-1)(2r-3)^{r-2}");

    const int l_step = s + 2, l_aug = s + 3, l_theta = 2 * (s + 1) + r;
    // d-bound uses the moment of order 2s; the aug step has s+1 pairs
    const auto& k2 = default_constants(l_step);
    const auto& k3 = default_constants(l_aug);
    L.set("C12_step", k2.C12, Provenance::Estimated, "max symmetric moment, l = s+2, n = 8..256");
    L.set("C12_aug", k3.C12, Provenance::Estimated, "max symmetric moment, l = s+3, n = 8..256");
    L.set("c12", std::max(k2.C12, k3.C12), Provenance::Formula, "max(C12_step, C12_aug)");
    L.set("C12_admissible", k2.C12_by_nu[static_cast<std::size_t>(2 * s)], Provenance::Estimated,
          "moment of order 2s, l = s+2; used by the admissibility test");
    L.set("c16", 2.0 * s * L.get("C12_admissible"), Provenance::Formula, "2 s C12_admissible");

    const auto& kt = default_constants(l_theta);
    L.set("C11_theta", kt.C11, Provenance::Estimated, "tail moment constant, l = 2(s+1)+r");
    const double pi = std::numbers::pi;
    L.set("c31", 4.0 * kt.C11 * std::pow(r, 2 * l_theta - r) / std::pow(pi, r - 1),
          Provenance::Formula, "4 C11 r^{2l-r} / pi^{r-1}");

    auto pick = [&](const std::string& key, double fallback, Provenance p, const std::string& note) {
        auto it = overrides.find(key);
        if (it != overrides.end())
            L.set(key, it->second, Provenance::Configured, kOverrideNote);
        else
            L.set(key, fallback, p, note);
    };

    pick("c4", 1.0, Provenance::Configured, "existence constant; default 1");
    pick("c25p", 1.0, Provenance::Configured, "existence constant; default 1");
    pick("c23", 1.0, Provenance::Configured,
         mode == Mode::Practical ? "replaced at run time by the measured max |Tbar_j'| / n"
                                 : "existence constant; default 1");
    L.set("c29", L.get("c4") + 1.0, Provenance::Formula, "c4 + 1");

    const double c23 = L.get("c23"), c29 = L.get("c29"), c31 = L.get("c31"),
                 c25p = L.get("c25p");
    const double a = std::pow(4.0 * c29 * c31, 1.0 / (r + 1));
    const double b = std::pow(5.0, 4 * (s + 1)) * 4.0 * c23 * c29 * c31 / c25p;
    // (1 + (r-2) pi) keeps the lower bound on Theta' positive for every r
    const double c = std::pow(4.0 * c23 * c29 * c31 * std::pow(1.0 + (r - 2) * pi, 4 * (s + 1)) / c25p,
                              1.0 / (r - 1));
    L.set("c34", std::max({a, b, c}), Provenance::Formula, "max of the three n2 conditions");

    if (mode == Mode::Strict) {
        pick("n1_multiplier", 4.0 * (s + 1) * L.get("c12"), Provenance::Formula, "4 (s+1) c12");
        pick("n2_multiplier", L.get("c34"), Provenance::Formula, "c34");
    } else {
        pick("n1_multiplier", 2.0, Provenance::Configured,
             "practical default; wider steps keep V_n' from vanishing at grid points");
        pick("n2_multiplier", 4.0, Provenance::Configured, "practical default");
    }
    pick("u_weight", 1.0, Provenance::Configured,
         "smallest power of two in 1..1024 passing the sampled sign check");
    return L;
}

}  // namespace comonotone
