#include "twintrees/rooted_tree.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace twintrees {

void validate_tree(const RootedTree& t) {
    if (t.n == 0) throw std::invalid_argument("tree: n must be >= 1");
    if (t.root < 1 || t.root > t.n) throw std::invalid_argument("tree: root out of range");
    if (t.parent.size() != static_cast<size_t>(t.n) + 1)
        throw std::invalid_argument("tree: parent array must have n+1 entries");
    if (t.parent[t.root] != 0) throw std::invalid_argument("tree: root must map to 0");
    // 0 = unvisited, 1 = on current walk, 2 = known good
    std::vector<uint8_t> state(t.n + 1, 0);
    state[t.root] = 2;
    std::vector<uint32_t> walk;
    for (uint32_t v = 1; v <= t.n; ++v) {
        uint32_t u = v;
        walk.clear();
        while (state[u] == 0) {
            state[u] = 1;
            walk.push_back(u);
            uint32_t p = t.parent[u];
            if (p < 1 || p > t.n)
                throw std::invalid_argument("tree: non-root vertex with parent out of range");
            u = p;
        }
        if (state[u] == 1) throw std::invalid_argument("tree: parent map contains a cycle");
        for (uint32_t w : walk) state[w] = 2;
    }
}

RootedTree tree_from_pruefer(const std::vector<uint32_t>& seq, uint32_t n,
                             uint32_t root) {
    if (n == 0) throw std::invalid_argument("tree_from_pruefer: n must be >= 1");
    if (root < 1 || root > n) throw std::invalid_argument("tree_from_pruefer: root out of range");
    if (seq.size() + 2 != n && n >= 2)
        throw std::invalid_argument("tree_from_pruefer: sequence must have n-2 entries");

    RootedTree t;
    t.n = n;
    t.root = root;
    t.parent.assign(n + 1, 0);
    if (n == 1) return t;

    std::vector<std::pair<uint32_t, uint32_t>> edges;
    edges.reserve(n - 1);
    if (n == 2) {
        edges.emplace_back(1, 2);
    } else {
        std::vector<uint32_t> degree(n + 1, 1);
        for (uint32_t v : seq) {
            if (v < 1 || v > n)
                throw std::invalid_argument("tree_from_pruefer: label out of range");
            ++degree[v];
        }
        // classic pointer scan: repeatedly join the smallest leaf to the next
        // sequence entry
        uint32_t ptr = 1;
        while (degree[ptr] != 1) ++ptr;
        uint32_t leaf = ptr;
        for (uint32_t v : seq) {
            edges.emplace_back(leaf, v);
            if (--degree[v] == 1 && v < ptr) {
                leaf = v;
            } else {
                ++ptr;
                while (degree[ptr] != 1) ++ptr;
                leaf = ptr;
            }
        }
        edges.emplace_back(leaf, n);
    }

    std::vector<uint32_t> head(n + 1, 0), nxt(2 * (n - 1) + 1, 0), dst(2 * (n - 1) + 1, 0);
    uint32_t slot = 1;
    for (auto [a, b] : edges) {
        dst[slot] = b; nxt[slot] = head[a]; head[a] = slot++;
        dst[slot] = a; nxt[slot] = head[b]; head[b] = slot++;
    }
    std::vector<uint32_t> queue{root};
    queue.reserve(n);
    std::vector<uint8_t> seen(n + 1, 0);
    seen[root] = 1;
    for (size_t i = 0; i < queue.size(); ++i) {
        uint32_t u = queue[i];
        for (uint32_t e = head[u]; e; e = nxt[e]) {
            uint32_t v = dst[e];
            if (!seen[v]) {
                seen[v] = 1;
                t.parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    return t;
}

namespace {

struct VecHash {
    size_t operator()(const std::vector<uint32_t>& v) const {
        uint64_t h = 0x9E3779B97F4A7C15ull ^ v.size();
        for (uint32_t x : v) {
            h ^= x + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
            h *= 0xBF58476D1CE4E5B9ull;
        }
        return static_cast<size_t>(h);
    }
};

}  // namespace

std::vector<FringeRecord> fringe_profiles(const RootedTree& t) {
    uint32_t n = t.n;
    std::vector<uint32_t> outdeg(n + 1, 0);
    for (uint32_t v = 1; v <= n; ++v)
        if (v != t.root) ++outdeg[t.parent[v]];

    // children adjacency in one flat array
    std::vector<uint32_t> start(n + 2, 0);
    for (uint32_t v = 1; v <= n; ++v) start[v + 1] = start[v] + outdeg[v];
    std::vector<uint32_t> child(n > 0 ? n - 1 : 0);
    std::vector<uint32_t> fill(start.begin(), start.end() - 1);
    for (uint32_t v = 1; v <= n; ++v)
        if (v != t.root) child[fill[t.parent[v]]++] = v;

    // iterative post-order: children fully processed before their parent
    std::vector<uint32_t> order;
    order.reserve(n);
    std::vector<uint32_t> stack{t.root};
    while (!stack.empty()) {
        uint32_t v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (uint32_t i = start[v]; i < start[v + 1]; ++i) stack.push_back(child[i]);
    }

    std::vector<uint32_t> size(n + 1, 0);
    std::vector<std::vector<uint32_t>> prof(n + 1);
    // finalized per-vertex copies; prof holds working vectors that parents
    // are free to cannibalize
    std::vector<std::vector<uint32_t>> canon(n + 1);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        uint32_t v = *it;
        uint32_t d = outdeg[v];
        size[v] = 1;
        // adopt the widest child profile, then fold in the rest
        uint32_t widest = 0;
        for (uint32_t i = start[v]; i < start[v + 1]; ++i) {
            uint32_t c = child[i];
            size[v] += size[c];
            if (widest == 0 || prof[c].size() > prof[widest].size()) widest = c;
        }
        std::vector<uint32_t> p;
        if (widest != 0) p = std::move(prof[widest]);
        if (p.size() < d + 1u) p.resize(d + 1u, 0);
        for (uint32_t i = start[v]; i < start[v + 1]; ++i) {
            uint32_t c = child[i];
            if (c == widest) continue;
            for (size_t j = 0; j < prof[c].size(); ++j) p[j] += prof[c][j];
            prof[c].clear();
            prof[c].shrink_to_fit();
        }
        ++p[d];
        canon[v] = p;
        while (!canon[v].empty() && canon[v].back() == 0) canon[v].pop_back();
        prof[v] = std::move(p);
    }

    std::vector<FringeRecord> out;
    out.reserve(n);
    for (uint32_t v = 1; v <= n; ++v)
        out.push_back(FringeRecord{v, size[v], std::move(canon[v])});
    return out;
}

std::map<uint32_t, uint64_t> twin_pair_census(const std::vector<FringeRecord>& records) {
    std::map<uint32_t, std::unordered_map<std::vector<uint32_t>, uint64_t, VecHash>> by_size;
    for (const auto& r : records) by_size[r.size][r.profile] += 1;
    std::map<uint32_t, uint64_t> census;
    for (const auto& [size, groups] : by_size) {
        uint64_t pairs = 0;
        for (const auto& [prof, c] : groups) pairs += c * (c - 1);
        if (pairs > 0) census[size] = pairs;
    }
    return census;
}

BigInt count_twin_pairs(const RootedTree& t, uint32_t k) {
    if (k == 0) throw std::domain_error("count_twin_pairs: k must be >= 1");
    auto records = fringe_profiles(t);
    std::unordered_map<std::vector<uint32_t>, uint64_t, VecHash> groups;
    for (auto& r : records)
        if (r.size == k) groups[r.profile] += 1;
    uint64_t pairs = 0;
    for (const auto& [prof, c] : groups) pairs += c * (c - 1);
    return BigInt(static_cast<unsigned long>(pairs));
}

uint32_t max_twin_size(const RootedTree& t) {
    auto census = twin_pair_census(fringe_profiles(t));
    if (census.empty()) return 0;
    return census.rbegin()->first;
}

}  // namespace twintrees
