#include "twintrees/degree_profile.hpp"

#include <cstdint>
#include <stdexcept>

namespace twintrees {

DegreeCap DegreeCap::bounded(uint32_t d) {
    if (d == 0) throw std::domain_error("DegreeCap: bound must be >= 1");
    return DegreeCap{d};
}

std::string DegreeCap::to_string() const {
    return limit ? std::to_string(*limit) : "unbounded";
}

DegreeProfile DegreeProfile::from_counts(std::vector<uint32_t> counts) {
    while (!counts.empty() && counts.back() == 0) counts.pop_back();
    if (counts.empty())
        throw std::invalid_argument("DegreeProfile: empty profile");
    uint64_t vertices = 0, child_edges = 0;
    for (size_t j = 0; j < counts.size(); ++j) {
        vertices += counts[j];
        child_edges += j * static_cast<uint64_t>(counts[j]);
    }
    if (vertices == 0 || vertices > UINT32_MAX || child_edges != vertices - 1)
        throw std::invalid_argument("DegreeProfile: counts violate the tree identities");
    return DegreeProfile(std::move(counts), static_cast<uint32_t>(vertices));
}

std::string DegreeProfile::to_string() const {
    std::string s = "(";
    for (size_t j = 0; j < counts_.size(); ++j) {
        if (j) s += ',';
        s += std::to_string(counts_[j]);
    }
    s += ')';
    return s;
}

}  // namespace twintrees
