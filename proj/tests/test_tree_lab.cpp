#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "twintrees/bigint.hpp"
#include "twintrees/profile_enum.hpp"
#include "twintrees/random_source.hpp"
#include "twintrees/rooted_tree.hpp"
#include "twintrees/sampling.hpp"

using namespace twintrees;

namespace {

RootedTree make_tree(uint32_t n, uint32_t root, std::vector<uint32_t> parent) {
    RootedTree t;
    t.n = n;
    t.root = root;
    t.parent = std::move(parent);
    validate_tree(t);
    return t;
}

// identity of a rooted tree on small n as a base-(n+1) integer
uint64_t tree_key(const RootedTree& t) {
    uint64_t key = t.root;
    for (uint32_t v = 1; v <= t.n; ++v) key = key * (t.n + 1) + t.parent[v];
    return key;
}

// fringe profile of one vertex rebuilt from scratch off the parent map
std::vector<uint32_t> fringe_profile_direct(const RootedTree& t, uint32_t v) {
    std::vector<std::vector<uint32_t>> children(t.n + 1);
    for (uint32_t u = 1; u <= t.n; ++u)
        if (u != t.root) children[t.parent[u]].push_back(u);
    std::vector<uint32_t> fringe{v};
    for (size_t i = 0; i < fringe.size(); ++i)
        for (uint32_t c : children[fringe[i]]) fringe.push_back(c);
    std::vector<uint32_t> counts;
    for (uint32_t u : fringe) {
        const auto d = static_cast<uint32_t>(children[u].size());
        if (counts.size() <= d) counts.resize(d + 1, 0);
        ++counts[d];
    }
    while (counts.size() > 1 && counts.back() == 0) counts.pop_back();
    return counts;
}

// ordered twin pairs recounted by independent pairwise comparison of fringes
uint64_t census_by_pairs(const RootedTree& t, uint32_t k) {
    std::vector<std::vector<uint32_t>> profiles(t.n + 1);
    std::vector<uint32_t> sizes(t.n + 1, 0);
    for (uint32_t v = 1; v <= t.n; ++v) {
        profiles[v] = fringe_profile_direct(t, v);
        uint32_t total = 0;
        for (uint32_t c : profiles[v]) total += c;
        sizes[v] = total;
    }
    uint64_t pairs = 0;
    for (uint32_t a = 1; a <= t.n; ++a)
        for (uint32_t b = 1; b <= t.n; ++b)
            if (a != b && sizes[a] == k && sizes[b] == k && profiles[a] == profiles[b])
                ++pairs;
    return pairs;
}

}  // namespace

TEST_CASE("pruefer decode enumerates every rooted tree exactly once") {
    for (uint32_t n : {3u, 4u, 5u}) {
        std::set<uint64_t> seen;
        uint64_t visits = 0;
        enumerate_rooted_trees(n, [&](const RootedTree& t) {
            validate_tree(t);
            seen.insert(tree_key(t));
            ++visits;
        });
        const uint64_t expected = pow_u(BigInt(n), n - 1).get_ui();
        CHECK(visits == expected);
        CHECK(seen.size() == expected);
    }
}

TEST_CASE("pruefer decode handles the smallest trees") {
    enumerate_rooted_trees(1, [&](const RootedTree& t) {
        CHECK(t.root == 1);
        CHECK(t.parent[1] == 0);
    });
    uint64_t count = 0;
    enumerate_rooted_trees(2, [&](const RootedTree& t) {
        validate_tree(t);
        ++count;
    });
    CHECK(count == 2);
}

TEST_CASE("fringe profiles on hand-built trees") {
    // path 1 -> 2 -> 3
    const RootedTree path = make_tree(3, 1, {0, 0, 1, 2});
    const auto recs = fringe_profiles(path);
    REQUIRE(recs.size() == 3);
    CHECK(recs[0].vertex == 1);
    CHECK(recs[0].size == 3);
    CHECK(recs[0].profile == std::vector<uint32_t>{1, 2});
    CHECK(recs[1].size == 2);
    CHECK(recs[1].profile == std::vector<uint32_t>{1, 1});
    CHECK(recs[2].size == 1);
    CHECK(recs[2].profile == std::vector<uint32_t>{1});

    // star rooted at 1 over {2,3}
    const RootedTree star = make_tree(3, 1, {0, 0, 1, 1});
    CHECK(count_twin_pairs(star, 1) == 2);
    CHECK(count_twin_pairs(star, 2) == 0);
    CHECK(max_twin_size(star) == 1);
}

TEST_CASE("two equal-shape branches make a twin pair of their size") {
    // root 7 with children 1 and 4; 1 -> {2,3}, 4 -> {5,6}
    const RootedTree t = make_tree(7, 7, {0, 7, 1, 1, 7, 4, 4, 0});
    CHECK(count_twin_pairs(t, 3) == 2);
    CHECK(count_twin_pairs(t, 1) == 12);
    CHECK(count_twin_pairs(t, 2) == 0);
    CHECK(max_twin_size(t) == 3);
    const auto census = twin_pair_census(fringe_profiles(t));
    CHECK(census.at(1) == 12);
    CHECK(census.at(3) == 2);
    CHECK(census.count(2) == 0);
}

TEST_CASE("the whole tree never counts as a twin") {
    const RootedTree path = make_tree(2, 1, {0, 0, 1});
    CHECK(count_twin_pairs(path, 2) == 0);
    CHECK(max_twin_size(path) == 0);  // one leaf alone is not a pair
}

TEST_CASE("census agrees with quadratic recount on random trees") {
    RandomSource rng(11, 0);
    for (int rep = 0; rep < 40; ++rep) {
        const uint32_t n = 2 + static_cast<uint32_t>(rng.next_below(59));
        RandomSource tree_rng(99, static_cast<uint64_t>(rep));
        const RootedTree t = sample_rooted_cayley(n, tree_rng);
        const auto recs = fringe_profiles(t);
        for (uint32_t v = 1; v <= n; ++v) {
            CHECK(recs[v - 1].vertex == v);
            CHECK(recs[v - 1].profile == fringe_profile_direct(t, v));
        }
        const auto census = twin_pair_census(recs);
        uint64_t census_max = census.empty() ? 0 : census.rbegin()->first;
        CHECK(max_twin_size(t) == census_max);
        for (uint32_t k = 1; k <= n; ++k) {
            const uint64_t direct = census_by_pairs(t, k);
            const auto it = census.find(k);
            CHECK((it == census.end() ? 0 : it->second) == direct);
            CHECK(count_twin_pairs(t, k) == direct);
            CHECK(direct % 2 == 0);
        }
    }
}

TEST_CASE("validate_tree rejects malformed parent maps") {
    RootedTree bad;
    bad.n = 3;
    bad.root = 1;
    bad.parent = {0, 0, 3, 2};  // 2 -> 3 -> 2 cycle
    CHECK_THROWS_AS(validate_tree(bad), std::invalid_argument);
    bad.parent = {0, 0, 0, 1};  // two roots
    CHECK_THROWS_AS(validate_tree(bad), std::invalid_argument);
    bad.parent = {0, 0, 9, 1};  // out of range
    CHECK_THROWS_AS(validate_tree(bad), std::invalid_argument);
    bad.parent = {0, 2, 1, 1};  // root has a parent
    CHECK_THROWS_AS(validate_tree(bad), std::invalid_argument);
}

TEST_CASE("brute force expectation matches the closed formula") {
    for (uint32_t n = 3; n <= 6; ++n)
        for (uint32_t k = 1; 2 * k + 1 <= n; ++k)
            CHECK(brute_force_expected(n, k) == expected_twin_pairs(n, k));
    CHECK_THROWS_AS(brute_force_expected(9, 1), std::domain_error);
}

TEST_CASE("sampler is uniform over rooted trees (chi-squared, n=3)") {
    const uint64_t trials = 180000;
    std::map<uint64_t, uint64_t> cells;
    for (uint64_t i = 0; i < trials; ++i) {
        RandomSource rng(2024, i);
        cells[tree_key(sample_rooted_cayley(3, rng))]++;
    }
    CHECK(cells.size() == 9);
    const double expected = static_cast<double>(trials) / 9.0;
    double chi2 = 0;
    for (const auto& [key, observed] : cells) {
        const double d = static_cast<double>(observed) - expected;
        chi2 += d * d / expected;
    }
    const boost::math::chi_squared dist(8);
    CHECK(chi2 < boost::math::quantile(dist, 1 - 1e-6));
}

TEST_CASE("sampler is uniform over rooted trees (chi-squared, n=4)") {
    const uint64_t trials = 256000;
    std::map<uint64_t, uint64_t> cells;
    for (uint64_t i = 0; i < trials; ++i) {
        RandomSource rng(77, i);
        cells[tree_key(sample_rooted_cayley(4, rng))]++;
    }
    CHECK(cells.size() == 64);
    const double expected = static_cast<double>(trials) / 64.0;
    double chi2 = 0;
    for (const auto& [key, observed] : cells) {
        const double d = static_cast<double>(observed) - expected;
        chi2 += d * d / expected;
    }
    const boost::math::chi_squared dist(63);
    CHECK(chi2 < boost::math::quantile(dist, 1 - 1e-6));
}

TEST_CASE("random source is deterministic and stream-sensitive") {
    RandomSource a(5, 0), b(5, 0), c(5, 1);
    CHECK(a.next_u64() == b.next_u64());
    CHECK(a.next_u64() == b.next_u64());
    RandomSource a2(5, 0);
    CHECK(a2.next_u64() != c.next_u64());
    RandomSource d(6, 0);
    RandomSource e(5, 0);
    CHECK(d.next_u64() != e.next_u64());
    // bounded draws stay in range and hit both endpoints eventually
    RandomSource f(1, 0);
    bool saw_lo = false, saw_hi = false;
    for (int i = 0; i < 1000; ++i) {
        const uint64_t v = f.next_below(7);
        CHECK(v < 7);
        saw_lo |= v == 0;
        saw_hi |= v == 6;
    }
    CHECK(saw_lo);
    CHECK(saw_hi);
}

TEST_CASE("monte carlo estimate brackets the exact mean and ignores threading") {
    const auto est1 = monte_carlo_expected(3, 1, 40000, 7, 1);
    const auto est3 = monte_carlo_expected(3, 1, 40000, 7, 3);
    CHECK(est1.mean == est3.mean);
    CHECK(est1.std_error == est3.std_error);
    CHECK(est1.trials == 40000);
    CHECK(est1.seed == 7);
    const double exact = 2.0 / 3.0;
    CHECK(std::abs(est1.mean - exact) <= 5 * est1.std_error);
    CHECK(est1.std_error > 0);
    CHECK_THROWS_AS(monte_carlo_expected(3, 1, 1, 7, 1), std::domain_error);
}
