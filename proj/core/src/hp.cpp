#include "twintrees/hp.hpp"

#include <stdexcept>
#include <vector>

namespace twintrees {

namespace {

// process-global (the backend's default precision is shared by all threads),
// so high-precision evaluation stays on one thread at a time
unsigned requested_bits = 256;

unsigned bits_to_digits10(unsigned bits) {
    // ceil(bits * log10(2)); the backend converts back up, never down
    return static_cast<unsigned>((static_cast<uint64_t>(bits) * 301 + 999) / 1000) + 1;
}

}  // namespace

void set_precision_bits(unsigned bits) {
    if (bits < 64) throw std::domain_error("set_precision_bits: need at least 64 bits");
    requested_bits = bits;
    HPReal::default_precision(bits_to_digits10(bits));
}

unsigned precision_bits() { return requested_bits; }

PrecisionScope::PrecisionScope(unsigned bits) : saved_(requested_bits) {
    set_precision_bits(bits);
}

PrecisionScope::~PrecisionScope() { set_precision_bits(saved_); }

HPReal hp_pi() {
    HPReal x;
    mpfr_const_pi(x.backend().data(), MPFR_RNDN);
    return x;
}

HPReal hp_from_bigint(const BigInt& v) {
    HPReal x;
    mpfr_set_z(x.backend().data(), v.get_mpz_t(), MPFR_RNDN);
    return x;
}

HPReal hp_from_bigrat(const BigRat& v) {
    HPReal x;
    mpfr_set_q(x.backend().data(), v.get_mpq_t(), MPFR_RNDN);
    return x;
}

HPReal log_of_bigint(const BigInt& v) {
    if (v < 1) throw std::domain_error("log_of_bigint: argument must be >= 1");
    return log(hp_from_bigint(v));
}

BigInt floor_to_bigint(const HPReal& x) {
    HPReal f = floor(x);
    BigInt z;
    mpfr_get_z(z.get_mpz_t(), f.backend().data(), MPFR_RNDZ);
    return z;
}

std::string hp_to_string(const HPReal& x, unsigned digits10) {
    if (digits10 == 0) digits10 = bits_to_digits10(requested_bits);
    std::vector<char> buf(digits10 + 32);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Re", static_cast<int>(digits10),
                  x.backend().data());
    return std::string(buf.data());
}

HPReal abs(const HPComplex& z) {
    HPReal r;
    mpfr_hypot(r.backend().data(), z.re.backend().data(), z.im.backend().data(),
               MPFR_RNDN);
    return r;
}

HPReal arg(const HPComplex& z) { return atan2(z.im, z.re); }

HPComplex sqrt_principal(const HPComplex& z) {
    if (z.im == 0 && z.re >= 0) return HPComplex(sqrt(z.re));
    // the negative real axis maps onto the positive imaginary axis exactly;
    // rounding arg(z)/2 through cos could otherwise flip the sign of the
    // vanishing real part
    if (z.im == 0) return HPComplex(HPReal(0), sqrt(-z.re));
    return polar(sqrt(abs(z)), arg(z) / 2);
}

HPComplex polar(const HPReal& magnitude, const HPReal& angle) {
    return {magnitude * cos(angle), magnitude * sin(angle)};
}

LogComplex LogComplex::from_complex(const HPComplex& z) {
    return {log(abs(z)), arg(z)};
}

HPComplex LogComplex::to_complex() const {
    return polar(exp(log_abs), angle);
}

}  // namespace twintrees
