#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace twintrees {

using BigInt = mpz_class;
using BigRat = mpq_class;

BigInt factorial(unsigned long n);
BigInt binomial(unsigned long n, unsigned long k);
BigInt pow_u(const BigInt& base, unsigned long e);

// num/den reduced to lowest terms with positive denominator
BigRat make_rat(const BigInt& num, const BigInt& den);

// decimal forms used by the JSON layer: integers as digit strings, rationals as "p/q"
std::string to_decimal(const BigInt& v);
std::string to_fraction(const BigRat& v);

}  // namespace twintrees
