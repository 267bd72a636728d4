#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace twintrees {

// Restriction on vertex out-degrees: when bounded by d, only out-degrees
// j < d are allowed.  d = 1 admits only isolated roots (k = 1).
struct DegreeCap {
    std::optional<uint32_t> limit;

    static DegreeCap unbounded() { return DegreeCap{std::nullopt}; }
    static DegreeCap bounded(uint32_t d);

    bool is_bounded() const { return limit.has_value(); }
    bool allows(uint32_t out_degree) const { return !limit || out_degree < *limit; }
    std::string to_string() const;
};

// Out-degree profile of a rooted tree on k vertices: counts[j] is the number
// of vertices with exactly j children.  Valid profiles satisfy
//   sum_j counts[j] == k   and   sum_j j*counts[j] == k - 1
// (k vertices, k-1 child edges), which forces counts[0] >= 1.  The canonical
// form carries no trailing zeros.
class DegreeProfile {
  public:
    // trims trailing zeros and checks the two vertex/edge identities
    static DegreeProfile from_counts(std::vector<uint32_t> counts);

    const std::vector<uint32_t>& counts() const { return counts_; }
    uint32_t k() const { return k_; }
    uint32_t count(uint32_t j) const {
        return j < counts_.size() ? counts_[j] : 0;
    }
    uint32_t max_out_degree() const {
        return static_cast<uint32_t>(counts_.size()) - 1;
    }
    bool within(const DegreeCap& cap) const { return cap.allows(max_out_degree()); }

    bool operator==(const DegreeProfile& o) const { return counts_ == o.counts_; }
    std::string to_string() const;  // "(2,0,1)"

  private:
    DegreeProfile(std::vector<uint32_t> counts, uint32_t k)
        : counts_(std::move(counts)), k_(k) {}

    std::vector<uint32_t> counts_;
    uint32_t k_;

    friend class ProfileStream;
};

}  // namespace twintrees
