#include <doctest.h>

#include "comonotone/corpus.hpp"
#include "comonotone/partition.hpp"

#include <json.hpp>

#include <cmath>
#include <numbers>

using namespace comonotone;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
const BreakpointSet kHalf({kPi / 2, -kPi / 2});

using T = IntervalType;

// slots 0-6 and 24-31 form one circular pack, 8-14 and 16-22 two more;
// slot 7 is the only Type1 index
std::vector<T> three_pack_types() {
    std::vector<T> t(32, T::Type2);
    t[7] = T::Type1;
    t[15] = T::Type3;
    t[23] = T::Type3;
    return t;
}

int count_if_index(const PartitionState& p, bool (PartitionState::*pred)(int) const) {
    int c = 0;
    const int n = p.grid().n();
    for (int j = -n + 1; j <= n; ++j) c += (p.*pred)(j) ? 1 : 0;
    return c;
}
}  // namespace

TEST_CASE("grid") {
    const UniformGrid g(8);
    CHECK(g.h() == Approx(kPi / 8));
    for (int j = -20; j <= 20; ++j) {
        CHECK(g.x(j - 1) - g.x(j) == Approx(g.h()).epsilon(1e-15));
        CHECK(g.x(j + 16) == Approx(g.x(j) - 2 * kPi));
        CHECK(g.normalize(j) > -8);
        CHECK(g.normalize(j) <= 8);
        CHECK(g.normalize(j) == g.normalize(j + 16));
    }
    CHECK(g.interval_of(0.0) == 0);
    CHECK(g.interval_of(-0.01) == 1);
    CHECK(g.midpoint(1) == Approx(-kPi / 16));
}

TEST_CASE("divided difference constant") {
    CHECK(divided_difference_bound(2) == Approx(2.0));
    CHECK(divided_difference_bound(3) == Approx(10.5));
    CHECK(divided_difference_bound(4) == Approx(95.0 + 5.0 / 6.0));
}

TEST_CASE("sign witnesses and separation") {
    const auto w = find_N(kHalf);
    CHECK(w.N == 2);
    CHECK(std::cos(w.x_pos) == Approx(-1.0));
    CHECK(std::cos(w.x_neg) == Approx(1.0));
    CHECK(find_N1(kHalf) == 7);
    CHECK(find_N1(BreakpointSet({0.05, -0.05})) == 189);
}

TEST_CASE("classification") {
    const UniformGrid g(16);
    for (auto t : classify([](double) { return 0.0; }, 3, g, 10.5)) CHECK(t == T::Type1);
    for (auto t : classify([](double) { return 1.0; }, 3, g, 10.5)) CHECK(t == T::Type2);

    // dense sampling oracle for f = -sin x, r = 2, n = 8
    const UniformGrid g8(8);
    const auto types = classify([](double x) { return -std::cos(x); }, 2, g8, 2.0);
    const double h = g8.h();
    for (int j = -7; j <= 8; ++j) {
        double lo = 1e300, hi = 0;
        for (int q = 0; q <= 4000; ++q) {
            const double v = std::abs(std::cos(g8.x(j) + h * q / 4000));
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        const T expect = hi <= 2 * h ? T::Type1 : (lo >= h ? T::Type2 : T::Type3);
        CHECK(types[static_cast<std::size_t>(g8.slot(j))] == expect);
    }
    for (int j : {0, 1, 8, -7}) CHECK(types[static_cast<std::size_t>(g8.slot(j))] == T::Type2);
    CHECK(types[static_cast<std::size_t>(g8.slot(4))] != T::Type2);
    CHECK(types[static_cast<std::size_t>(g8.slot(-3))] != T::Type2);

    // scaling f' up never turns Type2 into Type1
    const auto scaled = classify([](double x) { return -3.0 * std::cos(x); }, 2, g8, 2.0);
    for (std::size_t k = 0; k < types.size(); ++k)
        if (types[k] == T::Type2) CHECK(scaled[k] == T::Type2);
    CHECK_THROWS(classify([](double) { return 0.0; }, 2, g8, 2.0, 4));
}

TEST_CASE("packs") {
    const UniformGrid g(16);
    {
        std::vector<T> t(32, T::Type1);
        for (int k = 3; k < 10; ++k) t[k] = T::Type2;
        PartitionState p(g, 2, 2.0, t);
        p.build_groups_and_regions();
        REQUIRE(p.packs().size() == 1);
        CHECK(p.packs()[0].size() == 7);
    }
    {
        std::vector<T> t(32, T::Type1);
        for (int k = 3; k < 9; ++k) t[k] = T::Type2;
        PartitionState p(g, 2, 2.0, t);
        p.build_groups_and_regions();
        CHECK(p.packs().empty());
        for (int j = -15; j <= 16; ++j) CHECK(p.group_of(j) == Group::W1);
    }
    {
        PartitionState p(g, 2, 2.0, std::vector<T>(32, T::Type2));
        p.build_groups_and_regions();
        REQUIRE(p.packs().size() == 1);
        CHECK(p.packs()[0].size() == 32);
        CHECK(count_if_index(p, &PartitionState::in_Omega) == 0);
    }
    {
        // circular run across the window seam
        std::vector<T> t(32, T::Type1);
        for (int k : {0, 1, 2, 3, 28, 29, 30, 31}) t[k] = T::Type2;
        PartitionState p(g, 2, 2.0, t);
        p.build_groups_and_regions();
        REQUIRE(p.packs().size() == 1);
        CHECK(p.packs()[0].size() == 8);
    }
}

TEST_CASE("groups and regions") {
    const UniformGrid g(16);
    PartitionState p(g, 3, 10.5, three_pack_types());
    p.build_groups_and_regions();
    CHECK(p.packs().size() == 3);
    auto j_of = [&](int slot) { return g.index_at_slot(slot); };
    CHECK(p.group_of(j_of(7)) == Group::W1);
    CHECK(p.group_of(j_of(15)) == Group::W2);
    CHECK(p.group_of(j_of(23)) == Group::W2);
    CHECK(p.group_of(j_of(0)) == Group::InPack);

    CHECK(count_if_index(p, &PartitionState::in_M) == 1);
    CHECK(count_if_index(p, &PartitionState::in_M1) == 3);
    CHECK(count_if_index(p, &PartitionState::in_M2) == 5);
    CHECK(count_if_index(p, &PartitionState::in_Omega) == 7);
    for (int s = 4; s <= 10; ++s) CHECK(p.in_Omega(j_of(s)));
    for (int j = -40; j <= 40; ++j) {
        if (p.in_M(j)) CHECK(p.in_M1(j));
        if (p.in_M1(j)) CHECK(p.in_M2(j));
        if (p.in_M2(j)) CHECK(p.in_Omega(j));
        CHECK(p.in_Omega(j) == p.in_Omega(j + 32));
    }
    CHECK(p.is_transition(j_of(5)));
    CHECK(p.is_transition(j_of(9)));
    CHECK(!p.is_transition(j_of(7)));

    // no Type1 between two packs: the whole stretch is W2
    auto t = three_pack_types();
    t[7] = T::Type3;
    PartitionState q(g, 3, 10.5, t);
    q.build_groups_and_regions();
    CHECK(q.group_of(j_of(7)) == Group::W2);
    CHECK(count_if_index(q, &PartitionState::in_Omega) == 0);

    PartitionState all1(g, 3, 10.5, std::vector<T>(32, T::Type1));
    all1.build_groups_and_regions();
    CHECK(count_if_index(all1, &PartitionState::in_Omega) == 32);
}

TEST_CASE("breakpoint neighbourhoods") {
    const auto& e = corpus_entry("neg_sin");
    const auto p = build_partition(e.fprime, 2, 8, kHalf);
    // pi/2 = x_{-4} and -pi/2 = x_4 lie on grid points
    for (int j : {5, 4, 3, -3, -4, -5}) CHECK(p.in_O(j));
    CHECK(p.H().size() == 10);
    for (int j : p.H()) {
        CHECK(!p.in_O(j));
        CHECK(j > -8);
        CHECK(j <= 8);
    }
    CHECK_THROWS_AS(build_partition(e.fprime, 2, 2, kHalf), std::domain_error);
}

TEST_CASE("corpus partitions") {
    for (const auto& e : corpus())
        for (int r = 2; r <= std::min(3, e.r_max); ++r)
            for (int n : {16, 32, 64}) {
                const auto p = build_partition(e.fprime, r, n, BreakpointSet(e.breakpoints));
                CHECK(p.longest_type3_run() <= 2 * r - 4);
            }
    const auto& c = corpus_entry("const");
    const auto p = build_partition(c.fprime, 3, 32, BreakpointSet(c.breakpoints));
    for (int j = -31; j <= 32; ++j) CHECK(p.type_of(j) == T::Type1);
    CHECK(p.packs().empty());

    const auto dump = nlohmann::json::parse(p.dump_json());
    CHECK(dump.is_object());
}
