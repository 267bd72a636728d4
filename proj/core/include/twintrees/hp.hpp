#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <string>

#include "twintrees/bigint.hpp"

namespace twintrees {

// runtime-precision real; precision is process-global and set in bits
using HPReal = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<0>, boost::multiprecision::et_off>;

// requested mantissa bits (>= 64); new HPReal values pick this up at creation.
// The default precision is process-global, so high-precision work is meant to
// run on a single thread at a time.
void set_precision_bits(unsigned bits);
unsigned precision_bits();

// restores the previous precision on scope exit
class PrecisionScope {
  public:
    explicit PrecisionScope(unsigned bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

  private:
    unsigned saved_;
};

HPReal hp_pi();
HPReal hp_from_bigint(const BigInt& v);
HPReal hp_from_bigrat(const BigRat& v);
HPReal log_of_bigint(const BigInt& v);  // v >= 1
BigInt floor_to_bigint(const HPReal& x);

// decimal scientific form; digits10 = 0 means full working precision
std::string hp_to_string(const HPReal& x, unsigned digits10 = 0);

struct HPComplex {
    HPReal re, im;

    HPComplex() : re(0), im(0) {}
    HPComplex(HPReal r, HPReal i) : re(std::move(r)), im(std::move(i)) {}
    explicit HPComplex(const HPReal& r) : re(r), im(0) {}

    HPComplex operator+(const HPComplex& o) const { return {re + o.re, im + o.im}; }
    HPComplex operator-(const HPComplex& o) const { return {re - o.re, im - o.im}; }
    HPComplex operator*(const HPComplex& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    HPComplex& operator+=(const HPComplex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    HPComplex& operator*=(const HPComplex& o) {
        *this = *this * o;
        return *this;
    }
};

HPReal abs(const HPComplex& z);
HPReal arg(const HPComplex& z);               // principal, in (-pi, pi]
HPComplex sqrt_principal(const HPComplex& z); // branch cut on the negative axis
HPComplex polar(const HPReal& magnitude, const HPReal& angle);

// nonzero complex value stored as log magnitude and phase:
//   value = exp(log_abs) * (cos(angle) + i sin(angle));
// the phase is whatever accumulates, not reduced unless asked
struct LogComplex {
    HPReal log_abs;
    HPReal angle;

    static LogComplex from_complex(const HPComplex& z);
    HPComplex to_complex() const;
    LogComplex operator+(const LogComplex& o) const {  // multiplies the values
        return {log_abs + o.log_abs, angle + o.angle};
    }
};

}  // namespace twintrees
