#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "twintrees/bigint.hpp"
#include "twintrees/degree_profile.hpp"

namespace twintrees {

// Streams every valid out-degree profile on k vertices subject to a cap, in
// ascending lexicographic order of (counts[0], counts[1], ...).  Profiles on
// k vertices are in bijection with partitions of k-1 (out-degree j >= 1 with
// multiplicity counts[j]), so enumeration walks that partition lattice with
// feasibility pruning; every descent emits, making next() O(profile length).
// Restartable: construct a fresh stream and skip() to resume mid-range.
class ProfileStream {
  public:
    ProfileStream(uint32_t k, DegreeCap cap);

    bool next(DegreeProfile& out);
    std::optional<DegreeProfile> next();
    void skip(uint64_t count);
    uint64_t emitted() const { return emitted_; }

  private:
    struct Frame {
        uint32_t j;      // part size being assigned
        int64_t s, w;    // parts and weight still unassigned at entry
        int64_t r, r_hi; // current and last multiplicity to try
    };

    bool advance(std::vector<uint32_t>* out_counts);
    bool push_frame(uint32_t j, int64_t s, int64_t w);

    uint32_t k_;
    int64_t maxpart_;
    int64_t m_ = 0, m_min_ = 0;  // current / smallest admissible part count
    bool fresh_m_ = true;
    bool done_ = false;
    std::vector<Frame> stack_;
    uint64_t emitted_ = 0;
};

void for_each_profile(uint32_t k, DegreeCap cap,
                      const std::function<void(const DegreeProfile&)>& fn);

// number of profiles the stream yields (= partitions of k-1 into parts < cap)
BigInt count_profiles(uint32_t k, DegreeCap cap);

// rooted labeled trees on k vertices realizing the profile:
//   (k-1)! k! / (prod_j (j!)^{r_j} * prod_j r_j!)
BigInt count_trees_with_profile(const DegreeProfile& profile);

// ordered pairs of rooted trees on two fixed disjoint k-sets sharing a
// profile: sum over profiles of count_trees_with_profile squared
BigInt twin_profile_count_direct(uint32_t k, DegreeCap cap, unsigned threads = 1);

// same quantity through the generating function
//   sum_r z^r / (r!)^2   evaluated at z = x1*x2^j/(j!)^2 per out-degree j,
// as (k!(k-1)!)^2 times the coefficient of x1^k x2^(k-1) in the product;
// exact rationals throughout, with an integrality assertion at the end
BigInt twin_profile_count_series(uint32_t k, DegreeCap cap);

// hosts of an ordered twin pair of size k inside rooted trees on n vertices:
//   C(n,k) C(n-k,k) N(k) (n-2k)^(n-2k+1),  requires n >= 2k+1
BigInt host_pair_count(uint64_t n, uint32_t k);

// expected ordered twin pairs of size k in a uniform rooted tree on n
// vertices, host_pair_count / n^(n-1), reduced to lowest terms
BigRat expected_twin_pairs(uint64_t n, uint32_t k);

}  // namespace twintrees
