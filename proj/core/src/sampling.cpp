#include "twintrees/sampling.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace twintrees {

RootedTree sample_rooted_cayley(uint32_t n, RandomSource& rng) {
    if (n == 0) throw std::domain_error("sample_rooted_cayley: n must be >= 1");
    std::vector<uint32_t> seq(n >= 2 ? n - 2 : 0);
    for (auto& v : seq) v = static_cast<uint32_t>(rng.next_below(n)) + 1;
    uint32_t root = static_cast<uint32_t>(rng.next_below(n)) + 1;
    return tree_from_pruefer(seq, n, root);
}

void enumerate_rooted_trees(uint32_t n, const std::function<void(const RootedTree&)>& fn) {
    if (n == 0) throw std::domain_error("enumerate_rooted_trees: n must be >= 1");
    std::vector<uint32_t> seq(n >= 2 ? n - 2 : 0, 1);
    for (;;) {
        for (uint32_t root = 1; root <= n; ++root) fn(tree_from_pruefer(seq, n, root));
        // odometer over [1..n]^(n-2)
        size_t i = 0;
        while (i < seq.size() && seq[i] == n) seq[i++] = 1;
        if (i == seq.size()) return;
        ++seq[i];
    }
}

BigRat brute_force_expected(uint32_t n, uint32_t k, uint32_t max_n) {
    if (n == 0 || k == 0)
        throw std::domain_error("brute_force_expected: n and k must be >= 1");
    if (n > max_n)
        throw std::domain_error("brute_force_expected: n exceeds the enumeration guard");
    BigInt total = 0;
    enumerate_rooted_trees(n, [&](const RootedTree& t) {
        total += count_twin_pairs(t, k);
    });
    return make_rat(total, pow_u(BigInt(n), n - 1));
}

namespace {

// twin pair count of one sampled tree, as a plain integer
uint64_t sampled_pair_count(uint32_t n, uint32_t k, uint64_t seed, uint64_t trial) {
    RandomSource rng(seed, trial);
    RootedTree t = sample_rooted_cayley(n, rng);
    return count_twin_pairs(t, k).get_ui();
}

}  // namespace

EstimateWithCI monte_carlo_expected(uint32_t n, uint32_t k, uint64_t trials,
                                    uint64_t seed, unsigned threads) {
    if (n == 0 || k == 0)
        throw std::domain_error("monte_carlo_expected: n and k must be >= 1");
    if (trials < 2)
        throw std::domain_error("monte_carlo_expected: needs at least 2 trials");

    BigInt sum = 0, sumsq = 0;
    if (threads <= 1) {
        uint64_t s = 0;
        BigInt sq = 0;
        for (uint64_t i = 0; i < trials; ++i) {
            uint64_t c = sampled_pair_count(n, k, seed, i);
            s += c;
            sq += BigInt(c) * BigInt(c);
        }
        sum = s;
        sumsq = sq;
    } else {
        unsigned T = threads;
        std::vector<BigInt> psum(T, 0), psq(T, 0);
        std::vector<std::thread> pool;
        pool.reserve(T);
        for (unsigned t = 0; t < T; ++t) {
            pool.emplace_back([&, t]() {
                BigInt s = 0, sq = 0;
                for (uint64_t i = trials * t / T; i < trials * (t + 1) / T; ++i) {
                    uint64_t c = sampled_pair_count(n, k, seed, i);
                    s += static_cast<unsigned long>(c);
                    sq += BigInt(c) * BigInt(c);
                }
                psum[t] = std::move(s);
                psq[t] = std::move(sq);
            });
        }
        for (auto& th : pool) th.join();
        // exact integer partials: any partition yields the same totals
        for (unsigned t = 0; t < T; ++t) {
            sum += psum[t];
            sumsq += psq[t];
        }
    }

    BigInt T(static_cast<unsigned long>(trials));
    BigRat mean = make_rat(sum, T);
    // unbiased sample variance of the mean: (T*sumsq - sum^2) / (T^2 (T-1))
    BigInt num = T * sumsq - sum * sum;
    BigRat var_of_mean = make_rat(num, T * T * (T - 1));

    EstimateWithCI e;
    e.mean = mean.get_d();
    e.std_error = std::sqrt(var_of_mean.get_d());
    e.trials = trials;
    e.seed = seed;
    return e;
}

}  // namespace twintrees
