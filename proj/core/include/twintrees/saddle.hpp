#pragma once

#include <cstdint>

#include "twintrees/bigint.hpp"
#include "twintrees/degree_profile.hpp"
#include "twintrees/hp.hpp"

namespace twintrees {

// stationary point of the Chernoff exponent for the twin profile count:
//   x1 = k^2 e^{-2(k-1)/k},  x2 = ((k-1)/k)^2
struct SaddleParams {
    HPReal x1, x2;
    static SaddleParams at(uint32_t k);  // k >= 2
};

// log upper bound on the twin profile count at evaluation point (x1, x2):
//   2 log(k! (k-1)!) - k log x1 - (k-1) log x2 + sum_j log gf(x1 x2^j / (j!)^2)
// valid for any x1, x2 > 0 because the series has positive coefficients; the
// j-sum stops at the cap, or adaptively once terms stop mattering
HPReal chernoff_log_bound_at(uint32_t k, DegreeCap cap, const HPReal& x1,
                             const HPReal& x2);

// bound at SaddleParams; refine = true runs a derivative-free coordinate
// descent from there and keeps the smaller value
HPReal chernoff_log_bound(uint32_t k, DegreeCap cap = DegreeCap::unbounded(),
                          bool refine = false);

// weaker closed-form variant replacing gf(x) by exp(2 sqrt x); the j-sum
// collapses to 2 sqrt(x1) e^{sqrt(x2)} when unbounded
HPReal chernoff_expform_log_bound(uint32_t k, DegreeCap cap = DegreeCap::unbounded());

struct QuadratureSpec {
    uint32_t nodes_per_axis = 32;      // initial grid edge, must be even
    uint32_t max_nodes_per_axis = 1u << 13;
    unsigned precision_bits = 0;       // 0 = ambient
    double relative_tolerance = 1e-10; // on successive log values
};

// log of the twin profile count recovered from the double contour integral
//   (k!(k-1)!)^2 (2 pi)^{-2} int int prod_j gf(X_j e^{i(xi1 + j xi2)})
//                           e^{-i(k xi1 + (k-1) xi2)} dxi1 dxi2 / (x1^k x2^{k-1})
// with X_j = x1 x2^j / (j!)^2, by torus trapezoid sums with node doubling;
// throws std::runtime_error if the node budget is exhausted or the imaginary
// part survives cancellation
HPReal saddle_integral_log_count(uint32_t k, DegreeCap cap = DegreeCap::unbounded(),
                                 const QuadratureSpec& spec = {});

}  // namespace twintrees
