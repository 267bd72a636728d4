#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "twintrees/bigint.hpp"
#include "twintrees/degree_profile.hpp"

namespace twintrees {

// Rooted labeled tree on vertices 1..n as a parent map; parent[root] == 0.
// parent is 1-indexed (entry 0 unused) to keep vertex labels literal.
struct RootedTree {
    uint32_t n = 0;
    uint32_t root = 0;
    std::vector<uint32_t> parent;  // size n+1, parent[0] == 0 unused
};

// throws std::invalid_argument unless parent describes a single tree rooted
// at root (every non-root walks up to the root, no cycles)
void validate_tree(const RootedTree& t);

// decodes a length-(n-2) sequence over [1..n] to the unique labeled tree on
// [1..n] whose edge set it encodes, then orients away from root
RootedTree tree_from_pruefer(const std::vector<uint32_t>& seq, uint32_t n,
                             uint32_t root);

// fringe subtree of v = v plus all its descendants
struct FringeRecord {
    uint32_t vertex;
    uint32_t size;
    std::vector<uint32_t> profile;  // canonical out-degree counts
};

// one record per vertex, vertex order 1..n, computed in a single post-order
// pass; the root's record describes the whole tree
std::vector<FringeRecord> fringe_profiles(const RootedTree& t);

// ordered pairs of distinct vertices whose fringe subtrees have size k and
// identical profiles; the whole tree never pairs (only the root reaches size n)
BigInt count_twin_pairs(const RootedTree& t, uint32_t k);

// same census for every k at once: k -> ordered pair count, zero counts omitted
std::map<uint32_t, uint64_t> twin_pair_census(const std::vector<FringeRecord>& records);

// largest k with a twin pair, 0 if none
uint32_t max_twin_size(const RootedTree& t);

}  // namespace twintrees
