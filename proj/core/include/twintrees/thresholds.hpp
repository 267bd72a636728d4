#pragma once

#include <cstdint>

#include "twintrees/bigint.hpp"
#include "twintrees/hp.hpp"

namespace twintrees {

// All logarithms default to natural; pass log_base > 1 to rebase every log
// (and the matching exponential) consistently.  0 means natural.

// floor(2 log k / log log k), the out-degree cap under which the lower-bound
// machinery operates; k >= 16 keeps log log k comfortably positive
uint32_t default_degree_cap(uint64_t k, double log_base = 0.0);

// floor exp((2 + delta) sqrt(log n loglog n)): above this size, expected twin
// pairs vanish; n >= 3, delta > 0
BigInt vanishing_size_threshold(uint64_t n, double delta, double log_base = 0.0);

// floor exp((2 - delta) sqrt(log n loglog n)): at this size, expected twin
// pairs diverge; n >= 3, 0 < delta < 2
BigInt divergent_size_threshold(uint64_t n, double delta, double log_base = 0.0);

// log envelope over expected pairs for sizes at least k:
//   2 log n - 3 log k - eps2 (1 - eps2) log^2 k / loglog k,
// k >= 16, 0 < eps2 < 1/2
HPReal expected_pairs_upper_log(uint64_t n, const BigInt& k, double eps2,
                                double log_base = 0.0);

// log of the dominant lower estimate at size k:
//   2 log n - log^2 k / (4 loglog k),  k >= 16
HPReal expected_pairs_lower_log(uint64_t n, const BigInt& k, double log_base = 0.0);

}  // namespace twintrees
