#include "twintrees/bigint.hpp"

#include <stdexcept>

namespace twintrees {

BigInt factorial(unsigned long n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

BigInt pow_u(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

BigRat make_rat(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("make_rat: zero denominator");
    BigRat q(num, den);
    q.canonicalize();
    return q;
}

std::string to_decimal(const BigInt& v) { return v.get_str(); }

std::string to_fraction(const BigRat& v) {
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

}  // namespace twintrees
