#include "twintrees/profile_enum.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace twintrees {

ProfileStream::ProfileStream(uint32_t k, DegreeCap cap) : k_(k) {
    if (k == 0) throw std::domain_error("ProfileStream: k must be >= 1");
    maxpart_ = static_cast<int64_t>(k) - 1;
    if (cap.is_bounded())
        maxpart_ = std::min<int64_t>(maxpart_, static_cast<int64_t>(*cap.limit) - 1);
    if (k_ == 1) {
        m_ = 0;
        m_min_ = 0;
        return;
    }
    if (maxpart_ <= 0) {  // k >= 2 under cap 1: nothing can absorb the edges
        done_ = true;
        return;
    }
    m_ = static_cast<int64_t>(k_) - 1;
    m_min_ = (static_cast<int64_t>(k_) - 1 + maxpart_ - 1) / maxpart_;
}

// parts of size in [j, maxpart_], exactly s of them, total weight w; computes
// the feasible multiplicity range for size-j parts and pushes a frame
bool ProfileStream::push_frame(uint32_t j, int64_t s, int64_t w) {
    int64_t jj = j;
    if (jj > maxpart_) return false;
    int64_t r_lo, r_hi;
    if (jj == maxpart_) {
        if (jj * s != w) return false;
        r_lo = r_hi = s;
    } else {
        r_lo = std::max<int64_t>(0, s * (jj + 1) - w);
        if (s * maxpart_ < w) return false;
        r_hi = std::min(s, (s * maxpart_ - w) / (maxpart_ - jj));
        if (r_lo > r_hi) return false;
    }
    stack_.push_back(Frame{j, s, w, r_lo, r_hi});
    return true;
}

bool ProfileStream::advance(std::vector<uint32_t>* out_counts) {
    if (done_) return false;
    if (k_ == 1) {
        if (out_counts) *out_counts = {1};
        done_ = true;
        ++emitted_;
        return true;
    }
    for (;;) {
        if (fresh_m_) {
            if (m_ < m_min_) {
                done_ = true;
                return false;
            }
            if (!push_frame(1, m_, static_cast<int64_t>(k_) - 1)) {
                --m_;
                continue;
            }
            fresh_m_ = false;
        } else {
            while (!stack_.empty() && stack_.back().r == stack_.back().r_hi)
                stack_.pop_back();
            if (stack_.empty()) {
                --m_;
                fresh_m_ = true;
                continue;
            }
            ++stack_.back().r;
        }
        // every frame range is feasibility-checked, so this descent emits
        for (;;) {
            const Frame& f = stack_.back();
            int64_t s2 = f.s - f.r;
            int64_t w2 = f.w - static_cast<int64_t>(f.j) * f.r;
            if (s2 == 0) {
                if (out_counts) {
                    auto& c = *out_counts;
                    c.assign(stack_.back().j + 1, 0);
                    c[0] = static_cast<uint32_t>(k_ - m_);
                    for (const Frame& g : stack_)
                        c[g.j] = static_cast<uint32_t>(g.r);
                    while (c.back() == 0) c.pop_back();
                }
                ++emitted_;
                return true;
            }
            bool ok = push_frame(f.j + 1, s2, w2);
            (void)ok;  // guaranteed by the parent's range computation
        }
    }
}

bool ProfileStream::next(DegreeProfile& out) {
    std::vector<uint32_t> counts;
    if (!advance(&counts)) return false;
    uint32_t k = k_;
    out = DegreeProfile(std::move(counts), k);
    return true;
}

std::optional<DegreeProfile> ProfileStream::next() {
    DegreeProfile p(std::vector<uint32_t>{1}, 1);
    if (!next(p)) return std::nullopt;
    return p;
}

void ProfileStream::skip(uint64_t count) {
    while (count-- > 0)
        if (!advance(nullptr)) return;
}

void for_each_profile(uint32_t k, DegreeCap cap,
                      const std::function<void(const DegreeProfile&)>& fn) {
    ProfileStream stream(k, cap);
    DegreeProfile p = DegreeProfile::from_counts({1});
    while (stream.next(p)) fn(p);
}

BigInt count_profiles(uint32_t k, DegreeCap cap) {
    if (k == 0) throw std::domain_error("count_profiles: k must be >= 1");
    if (k == 1) return 1;
    int64_t maxpart = static_cast<int64_t>(k) - 1;
    if (cap.is_bounded())
        maxpart = std::min<int64_t>(maxpart, static_cast<int64_t>(*cap.limit) - 1);
    if (maxpart <= 0) return 0;
    // partitions of k-1 into parts <= maxpart
    std::vector<BigInt> p(k, 0);
    p[0] = 1;
    for (int64_t j = 1; j <= maxpart; ++j)
        for (uint32_t w = static_cast<uint32_t>(j); w < k; ++w)
            p[w] += p[w - j];
    return p[k - 1];
}

BigInt count_trees_with_profile(const DegreeProfile& profile) {
    const auto& r = profile.counts();
    unsigned long k = profile.k();
    BigInt num = factorial(k - 1) * factorial(k);
    BigInt den = 1, t;
    for (size_t j = 0; j < r.size(); ++j) {
        if (r[j] == 0) continue;
        if (j >= 2) {
            mpz_pow_ui(t.get_mpz_t(), factorial(j).get_mpz_t(), r[j]);
            den *= t;
        }
        den *= factorial(r[j]);
    }
    BigInt q, rem;
    mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (rem != 0)
        throw std::logic_error("count_trees_with_profile: non-integral result");
    return q;
}

BigInt twin_profile_count_direct(uint32_t k, DegreeCap cap, unsigned threads) {
    if (k == 0) throw std::domain_error("twin_profile_count_direct: k must be >= 1");
    BigInt profile_count = count_profiles(k, cap);
    if (threads <= 1 || profile_count < 4096 || !profile_count.fits_ulong_p()) {
        BigInt sum = 0;
        DegreeProfile p = DegreeProfile::from_counts({1});
        ProfileStream stream(k, cap);
        while (stream.next(p)) {
            BigInt m = count_trees_with_profile(p);
            sum += m * m;
        }
        return sum;
    }
    // contiguous index ranges; exact integer partial sums make the result
    // independent of the partition
    uint64_t total = profile_count.get_ui();
    unsigned T = threads;
    std::vector<BigInt> partial(T, 0);
    std::vector<std::thread> pool;
    pool.reserve(T);
    for (unsigned t = 0; t < T; ++t) {
        pool.emplace_back([&, t]() {
            uint64_t lo = total * t / T, hi = total * (t + 1) / T;
            ProfileStream stream(k, cap);
            stream.skip(lo);
            DegreeProfile p = DegreeProfile::from_counts({1});
            BigInt sum = 0;
            for (uint64_t i = lo; i < hi && stream.next(p); ++i) {
                BigInt m = count_trees_with_profile(p);
                sum += m * m;
            }
            partial[t] = std::move(sum);
        });
    }
    for (auto& th : pool) th.join();
    BigInt sum = 0;
    for (auto& s : partial) sum += s;
    return sum;
}

BigInt twin_profile_count_series(uint32_t k, DegreeCap cap) {
    if (k == 0) throw std::domain_error("twin_profile_count_series: k must be >= 1");
    uint32_t jmax = k - 1;
    if (cap.is_bounded()) jmax = std::min(jmax, *cap.limit == 0 ? 0 : *cap.limit - 1);
    if (cap.is_bounded() && *cap.limit == 1 && k >= 2) return 0;

    // table[a][b] = coefficient of x1^a x2^b in the partial product
    const uint32_t A = k + 1, B = k;  // a in [0,k], b in [0,k-1]
    std::vector<std::vector<BigRat>> table(A, std::vector<BigRat>(B, BigRat(0)));
    table[0][0] = 1;

    for (uint32_t j = 0; j <= jmax; ++j) {
        // factor sum_r c_r x1^r x2^(j r) with c_r = ((j!)^r r!)^(-2)
        uint32_t rmax = (j == 0) ? k : std::min(k, (k - 1) / j);
        std::vector<BigRat> c(rmax + 1);
        c[0] = 1;
        BigInt fj = factorial(j);
        for (uint32_t r = 1; r <= rmax; ++r) {
            BigInt step = fj * r;
            c[r] = c[r - 1] / BigRat(step * step);
        }
        for (uint32_t a = A; a-- > 0;) {
            for (uint32_t b = B; b-- > 0;) {
                for (uint32_t r = 1; r <= rmax; ++r) {
                    if (r > a || static_cast<uint64_t>(j) * r > b) break;
                    const BigRat& src = table[a - r][b - j * r];
                    if (src.get_num() == 0) continue;
                    table[a][b] += c[r] * src;
                }
            }
        }
    }

    BigInt scale = factorial(k) * factorial(k - 1);
    BigRat result = table[k][k - 1] * BigRat(scale * scale);
    if (result.get_den() != 1)
        throw std::logic_error("twin_profile_count_series: non-integral coefficient");
    return result.get_num();
}

BigInt host_pair_count(uint64_t n, uint32_t k) {
    if (k == 0) throw std::domain_error("host_pair_count: k must be >= 1");
    if (n < 2 * static_cast<uint64_t>(k) + 1)
        throw std::domain_error("host_pair_count: requires n >= 2k+1");
    uint64_t rest = n - 2 * static_cast<uint64_t>(k);
    BigInt s = binomial(n, k) * binomial(n - k, k);
    s *= twin_profile_count_direct(k, DegreeCap::unbounded());
    s *= pow_u(BigInt(static_cast<unsigned long>(rest)), static_cast<unsigned long>(rest + 1));
    return s;
}

BigRat expected_twin_pairs(uint64_t n, uint32_t k) {
    BigInt hosts = host_pair_count(n, k);
    BigInt all_trees = pow_u(BigInt(static_cast<unsigned long>(n)),
                             static_cast<unsigned long>(n - 1));
    return make_rat(hosts, all_trees);
}

}  // namespace twintrees
