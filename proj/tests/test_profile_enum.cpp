#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <vector>

#include "twintrees/bigint.hpp"
#include "twintrees/degree_profile.hpp"
#include "twintrees/profile_enum.hpp"

using namespace twintrees;

namespace {

// partition numbers by Euler's pentagonal recurrence, independent of the
// stream's lattice walk
std::vector<BigInt> partition_numbers(int up_to) {
    std::vector<BigInt> p(up_to + 1);
    p[0] = 1;
    for (int n = 1; n <= up_to; ++n) {
        BigInt acc = 0;
        for (int j = 1;; ++j) {
            const int g1 = j * (3 * j - 1) / 2;
            const int g2 = j * (3 * j + 1) / 2;
            if (g1 > n && g2 > n) break;
            const int sign = (j % 2 == 1) ? 1 : -1;
            if (g1 <= n) acc += sign * p[n - g1];
            if (g2 <= n) acc += sign * p[n - g2];
        }
        p[n] = acc;
    }
    return p;
}

// partitions of w into parts of size at most max_part, by direct DP
BigInt partitions_bounded(int w, int max_part) {
    std::vector<BigInt> dp(w + 1);
    dp[0] = 1;
    for (int part = 1; part <= max_part; ++part)
        for (int s = part; s <= w; ++s) dp[s] += dp[s - part];
    return dp[w];
}

std::vector<std::vector<uint32_t>> collect_profiles(uint32_t k, DegreeCap cap) {
    std::vector<std::vector<uint32_t>> all;
    for_each_profile(k, cap, [&](const DegreeProfile& p) { all.push_back(p.counts()); });
    return all;
}

// every nonnegative vector (r_0..r_{k-1}) with sum k and weighted sum k-1,
// found by bounded odometer search with no pruning cleverness
std::vector<std::vector<uint32_t>> odometer_profiles(uint32_t k) {
    std::vector<std::vector<uint32_t>> all;
    std::vector<uint32_t> r(k, 0);
    while (true) {
        uint64_t total = 0, weight = 0;
        for (uint32_t j = 0; j < k; ++j) {
            total += r[j];
            weight += static_cast<uint64_t>(j) * r[j];
        }
        if (total == k && weight == k - 1) {
            std::vector<uint32_t> canon = r;
            while (canon.size() > 1 && canon.back() == 0) canon.pop_back();
            all.push_back(canon);
        }
        uint32_t pos = 0;
        while (pos < k && r[pos] == k) r[pos++] = 0;
        if (pos == k) break;
        ++r[pos];
    }
    std::sort(all.begin(), all.end());
    return all;
}

}  // namespace

TEST_CASE("profile counts match the partition numbers") {
    const auto p = partition_numbers(40);
    for (uint32_t k = 1; k <= 40; ++k)
        CHECK(count_profiles(k, DegreeCap::unbounded()) == p[k - 1]);
}

TEST_CASE("capped profile counts match bounded partition counts") {
    for (uint32_t d : {2u, 3u, 5u, 7u})
        for (uint32_t k = 1; k <= 30; ++k)
            CHECK(count_profiles(k, DegreeCap::bounded(d)) ==
                  partitions_bounded(static_cast<int>(k) - 1, static_cast<int>(d) - 1));
}

TEST_CASE("cap 1 admits only the single-vertex tree") {
    CHECK(count_profiles(1, DegreeCap::bounded(1)) == 1);
    CHECK(count_profiles(2, DegreeCap::bounded(1)) == 0);
    CHECK(count_profiles(5, DegreeCap::bounded(1)) == 0);
}

TEST_CASE("stream output equals exhaustive odometer search") {
    for (uint32_t k = 1; k <= 7; ++k) {
        auto streamed = collect_profiles(k, DegreeCap::unbounded());
        auto sorted = streamed;
        std::sort(sorted.begin(), sorted.end());
        CHECK(sorted == odometer_profiles(k));
    }
}

TEST_CASE("stream is ascending lexicographic and valid under every cap") {
    for (DegreeCap cap : {DegreeCap::bounded(2), DegreeCap::bounded(3), DegreeCap::unbounded()}) {
        for (uint32_t k = 1; k <= 12; ++k) {
            auto all = collect_profiles(k, cap);
            CHECK(BigInt(static_cast<unsigned long>(all.size())) == count_profiles(k, cap));
            for (size_t i = 0; i + 1 < all.size(); ++i) CHECK(all[i] < all[i + 1]);
            for (const auto& counts : all) {
                uint64_t total = 0, weight = 0;
                for (size_t j = 0; j < counts.size(); ++j) {
                    total += counts[j];
                    weight += j * counts[j];
                }
                CHECK(total == k);
                CHECK(weight == k - 1);
                CHECK(counts[0] >= 1);
                if (counts.size() > 1) CHECK(counts.back() != 0);
                CHECK(cap.allows(static_cast<uint32_t>(counts.size()) - 1));
            }
        }
    }
}

TEST_CASE("skip resumes the stream mid-range") {
    const uint32_t k = 12;
    auto all = collect_profiles(k, DegreeCap::unbounded());
    const std::vector<uint64_t> starts = {0, 1, 7, all.size() - 1};
    for (uint64_t start : starts) {
        ProfileStream s(k, DegreeCap::unbounded());
        s.skip(start);
        DegreeProfile p = DegreeProfile::from_counts({1});
        REQUIRE(s.next(p));
        CHECK(p.counts() == all[start]);
    }
    ProfileStream s(k, DegreeCap::unbounded());
    s.skip(all.size());
    CHECK_FALSE(s.next().has_value());
}

TEST_CASE("tree counts for hand-checked profiles") {
    CHECK(count_trees_with_profile(DegreeProfile::from_counts({1})) == 1);
    CHECK(count_trees_with_profile(DegreeProfile::from_counts({1, 1})) == 2);
    CHECK(count_trees_with_profile(DegreeProfile::from_counts({1, 2})) == 6);
    CHECK(count_trees_with_profile(DegreeProfile::from_counts({2, 0, 1})) == 3);
    // star on k vertices: k ways to pick the hub
    for (uint32_t k = 2; k <= 9; ++k) {
        std::vector<uint32_t> counts(k, 0);
        counts[0] = k - 1;
        counts[k - 1] = 1;
        CHECK(count_trees_with_profile(DegreeProfile::from_counts(counts)) == k);
    }
}

TEST_CASE("profile tree counts sum to the Cayley total") {
    for (uint32_t k = 1; k <= 20; ++k) {
        BigInt total = 0;
        for_each_profile(k, DegreeCap::unbounded(),
                         [&](const DegreeProfile& p) { total += count_trees_with_profile(p); });
        CHECK(total == pow_u(BigInt(k), k - 1));
    }
}

TEST_CASE("direct and series twin counts agree") {
    for (DegreeCap cap : {DegreeCap::bounded(3), DegreeCap::bounded(5), DegreeCap::unbounded()})
        for (uint32_t k : {1u, 2u, 3u, 8u, 15u, 22u})
            CHECK(twin_profile_count_direct(k, cap) == twin_profile_count_series(k, cap));
}

TEST_CASE("threaded direct count equals single-threaded") {
    for (uint32_t k : {6u, 18u, 26u}) {
        const BigInt one = twin_profile_count_direct(k, DegreeCap::unbounded(), 1);
        CHECK(twin_profile_count_direct(k, DegreeCap::unbounded(), 4) == one);
        CHECK(twin_profile_count_direct(k, DegreeCap::unbounded(), 7) == one);
    }
}

TEST_CASE("small twin pair counts by hand") {
    CHECK(twin_profile_count_direct(1, DegreeCap::unbounded()) == 1);
    CHECK(twin_profile_count_direct(2, DegreeCap::unbounded()) == 4);
    CHECK(twin_profile_count_direct(3, DegreeCap::unbounded()) == 45);
    CHECK(to_decimal(twin_profile_count_series(3, DegreeCap::unbounded())) == "45");
}

TEST_CASE("host pair counts and expectations") {
    CHECK(host_pair_count(5, 1) == 1620);
    CHECK(to_fraction(expected_twin_pairs(5, 1)) == "324/125");
    CHECK(host_pair_count(5, 2) == 120);
    CHECK_THROWS_AS(host_pair_count(4, 2), std::domain_error);
    CHECK_THROWS_AS(host_pair_count(2, 1), std::domain_error);
    CHECK_THROWS_AS(expected_twin_pairs(6, 3), std::domain_error);
}
