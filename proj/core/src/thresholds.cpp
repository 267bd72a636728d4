#include "twintrees/thresholds.hpp"

#include <stdexcept>

namespace twintrees {

namespace {

HPReal base_log(double log_base) {
    if (log_base == 0.0) return HPReal(1);  // natural: divide by ln e = 1
    if (log_base <= 1.0)
        throw std::domain_error("log base must exceed 1 (or 0 for natural)");
    return log(HPReal(log_base));
}

HPReal rebased_log(const HPReal& x, const HPReal& lb) { return log(x) / lb; }

}  // namespace

uint32_t default_degree_cap(uint64_t k, double log_base) {
    if (k < 16) throw std::domain_error("default_degree_cap: k must be >= 16");
    HPReal lb = base_log(log_base);
    HPReal lk = rebased_log(HPReal(static_cast<unsigned long>(k)), lb);
    HPReal llk = rebased_log(lk, lb);
    BigInt cap = floor_to_bigint(2 * lk / llk);
    return static_cast<uint32_t>(cap.get_ui());
}

namespace {

BigInt size_threshold(uint64_t n, double coefficient, double log_base) {
    if (n < 3) throw std::domain_error("size threshold: n must be >= 3");
    HPReal lb = base_log(log_base);
    HPReal ln = rebased_log(HPReal(static_cast<unsigned long>(n)), lb);
    HPReal lln = rebased_log(ln, lb);
    HPReal exponent = HPReal(coefficient) * sqrt(ln * lln);
    // b^x = exp(x ln b)
    return floor_to_bigint(exp(exponent * lb));
}

}  // namespace

BigInt vanishing_size_threshold(uint64_t n, double delta, double log_base) {
    if (delta <= 0) throw std::domain_error("vanishing_size_threshold: delta must be > 0");
    return size_threshold(n, 2.0 + delta, log_base);
}

BigInt divergent_size_threshold(uint64_t n, double delta, double log_base) {
    if (delta <= 0 || delta >= 2)
        throw std::domain_error("divergent_size_threshold: delta must lie in (0, 2)");
    return size_threshold(n, 2.0 - delta, log_base);
}

namespace {

void check_envelope_args(uint64_t n, const BigInt& k) {
    if (n < 3) throw std::domain_error("pair envelope: n must be >= 3");
    if (k < 16) throw std::domain_error("pair envelope: k must be >= 16");
}

}  // namespace

HPReal expected_pairs_upper_log(uint64_t n, const BigInt& k, double eps2,
                                double log_base) {
    check_envelope_args(n, k);
    if (eps2 <= 0 || eps2 >= 0.5)
        throw std::domain_error("expected_pairs_upper_log: eps2 must lie in (0, 1/2)");
    HPReal lb = base_log(log_base);
    HPReal ln = rebased_log(HPReal(static_cast<unsigned long>(n)), lb);
    HPReal lk = log_of_bigint(k) / lb;
    HPReal llk = rebased_log(lk, lb);
    return 2 * ln - 3 * lk - HPReal(eps2) * (1 - HPReal(eps2)) * lk * lk / llk;
}

HPReal expected_pairs_lower_log(uint64_t n, const BigInt& k, double log_base) {
    check_envelope_args(n, k);
    HPReal lb = base_log(log_base);
    HPReal ln = rebased_log(HPReal(static_cast<unsigned long>(n)), lb);
    HPReal lk = log_of_bigint(k) / lb;
    HPReal llk = rebased_log(lk, lb);
    return 2 * ln - lk * lk / (4 * llk);
}

}  // namespace twintrees
