#pragma once

// Test functions with known monotonicity pattern.

#include "comonotone/trigpoly.hpp"

#include <functional>
#include <string>
#include <vector>

namespace comonotone {

struct CorpusEntry {
    std::string id;
    std::function<double(double)> f;
    std::function<double(double)> fprime;
    std::vector<double> breakpoints;
    int r_max = 0;  // largest r with sup |f^(r)| <= 1
    std::string description;
};

/// "const", "neg_sin", "neg_sin_warped", "two_pair".
const std::vector<CorpusEntry>& corpus();
const CorpusEntry& corpus_entry(const std::string& id);

/// min over `samples` equispaced points of f'(x) Pi(x), relative to max |f' Pi|.
double membership_margin(const CorpusEntry& e, const BreakpointSet& y, int samples = 10000);

}  // namespace comonotone
