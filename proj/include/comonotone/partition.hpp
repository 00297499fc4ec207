#pragma once

// Uniform grid x_j = -j pi / n, interval classification, packs, groups and
// the region sets built from them.

#include "comonotone/trigpoly.hpp"

#include <functional>
#include <string>
#include <vector>

namespace comonotone {

class UniformGrid {
public:
    explicit UniformGrid(int n);

    int n() const { return n_; }
    double h() const { return h_; }
    /// x_j = -j pi / n; note x_{j-1} > x_j
    double x(int j) const;
    double midpoint(int j) const { return x(j) + 0.5 * h_; }
    /// Representative of j in the window (-n, n].
    int normalize(int j) const;
    /// Window position 0..2n-1 of index j.
    int slot(int j) const { return normalize(j) + n_ - 1; }
    int index_at_slot(int slot) const { return slot - n_ + 1; }
    /// Index j with x_j <= x < x_{j-1}, for any real x (not normalized).
    int interval_of(double x) const;
    int count() const { return 2 * n_; }

private:
    int n_;
    double h_;
};

enum class IntervalType { Type1 = 1, Type2 = 2, Type3 = 3 };
enum class Group { W1, W2, InPack };

struct PartitionOptions {
    int samples_per_interval = 32;
};

/// Witness centres for the sign classes of Pi.
struct SignWitness {
    int N = 0;
    double x_pos = 0.0;  // Pi >= 0 on the arc of radius pi/N around it
    double x_neg = 0.0;  // Pi <= 0 on the arc of radius pi/N around it
};

SignWitness find_N(const BreakpointSet& y);
int find_N1(const BreakpointSet& y);

/// (2r-3)^{r-1}/(r-1)! + (r-1)(2r-3)^{r-2}
double divided_difference_bound(int r);

class PartitionState {
public:
    PartitionState(UniformGrid grid, int r, double c1, std::vector<IntervalType> types);

    const UniformGrid& grid() const { return grid_; }
    int r() const { return r_; }
    double c1() const { return c1_; }

    IntervalType type_of(int j) const { return types_[slot(j)]; }
    Group group_of(int j) const { return groups_[slot(j)]; }
    /// maximal circular runs of Type2 of length >= 7, as increasing index lists
    const std::vector<std::vector<int>>& packs() const { return packs_; }

    bool in_M(int j) const { return m_[0][slot(j)]; }
    bool in_M1(int j) const { return m_[1][slot(j)]; }  // M*
    bool in_M2(int j) const { return m_[2][slot(j)]; }  // M**
    bool in_Omega(int j) const { return m_[3][slot(j)]; }
    /// I_j lies in the closure of M** \ M*
    bool is_transition(int j) const { return in_M2(j) && !in_M1(j); }
    bool in_O(int j) const { return o_[slot(j)]; }
    bool in_H(int j) const { return !o_[slot(j)]; }
    bool in_V2_minus_W1(int j) const {
        return type_of(j) == IntervalType::Type2 && group_of(j) != Group::W1;
    }

    /// window indices j in (-n, n] with I_j outside every O_i, increasing
    const std::vector<int>& H() const { return h_; }
    /// interval index j with x_j <= y_i < x_{j-1}, for i = 1..2s (0-based storage)
    const std::vector<int>& breakpoint_interval() const { return bp_interval_; }
    /// base index of the rotated window: inside a pack when one exists, else n
    int base_index() const { return base_; }

    /// Longest circular run of Type3 indices.
    int longest_type3_run() const;

    /// Computes packs, groups and M, M*, M**, Omega.
    void build_groups_and_regions();
    /// Marks O_i = three intervals around each breakpoint; throws on overlap.
    void build_O_and_H(const BreakpointSet& y);

    std::string dump_json() const;

private:
    int slot(int j) const { return grid_.slot(j); }
    std::vector<bool> dilate(const std::vector<bool>& set) const;

    UniformGrid grid_;
    int r_;
    double c1_;
    std::vector<IntervalType> types_;
    std::vector<std::vector<int>> packs_;
    std::vector<Group> groups_;
    std::vector<bool> m_[4];
    std::vector<bool> o_;
    std::vector<int> h_;
    std::vector<int> bp_interval_;
    int base_;
};

/// Type of every window index by sampling |f'| on each closed interval.
std::vector<IntervalType> classify(const std::function<double(double)>& fprime, int r,
                                   const UniformGrid& grid, double c1,
                                   int samples_per_interval = 32);

/// classify + groups + regions + O/H.
PartitionState build_partition(const std::function<double(double)>& fprime, int r, int n,
                               const BreakpointSet& y, const PartitionOptions& opts = {});

}  // namespace comonotone
