#pragma once

#include <cstdint>
#include <functional>

#include "twintrees/bigint.hpp"
#include "twintrees/random_source.hpp"
#include "twintrees/rooted_tree.hpp"

namespace twintrees {

// uniform over the n^(n-1) rooted labeled trees: uniform length-(n-2)
// sequence decoded to the tree, root drawn uniformly and independently
RootedTree sample_rooted_cayley(uint32_t n, RandomSource& rng);

// visits all n^(n-1) rooted trees (every sequence, every root)
void enumerate_rooted_trees(uint32_t n, const std::function<void(const RootedTree&)>& fn);

// exact expectation of ordered twin pairs of size k by full enumeration;
// cost grows as n^(n-1), so n > max_n is refused
BigRat brute_force_expected(uint32_t n, uint32_t k, uint32_t max_n = 8);

struct EstimateWithCI {
    double mean = 0.0;
    double std_error = 0.0;
    uint64_t trials = 0;
    uint64_t seed = 0;
};

// sample mean of the twin pair count over independent trees; trial i draws
// from RandomSource(seed, i), so any trial partition reproduces the same sums
EstimateWithCI monte_carlo_expected(uint32_t n, uint32_t k, uint64_t trials,
                                    uint64_t seed, unsigned threads = 1);

}  // namespace twintrees
