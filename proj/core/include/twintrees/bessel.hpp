#pragma once

#include <cstdint>
#include <vector>

#include "twintrees/hp.hpp"

namespace twintrees {

// gf(z) = sum_{r>=0} z^r / (r!)^2, the out-degree occupancy generating
// function; equals I0(2 sqrt z) with the principal square root.  Returned in
// log form.  relative_tolerance <= 0 selects 2^-(precision_bits/2 + 8).

// direct series with working precision boosted enough to absorb the
// cancellation (about 2 sqrt|z| log2(e) extra bits); accurate for any z but
// increasingly expensive as |z| grows
LogComplex gf_series_log(const HPComplex& z);

// through the arc integral of I0: needs no precision boost, preferable for
// large |z|
LogComplex gf_integral_log(const HPComplex& z, double relative_tolerance = 0.0);

// route dispatch by |z| against series_cutoff
LogComplex gf_log(const HPComplex& z, double relative_tolerance = 0.0,
                  double series_cutoff = 1e4);

// log I0(2w) for Re w >= 0 via the periodized arc integral
//   I0(2w) = e^{2w} / pi * integral_0^pi exp(-2w (1 - cos t)) dt,
// trapezoid with node doubling until successive values agree relatively
LogComplex bessel_i0_log(const HPComplex& w, double relative_tolerance = 0.0);

// modulus envelope |gf(z)| <= |exp(2 sqrt z)| / max(1, alpha |z|^(1/4))
struct EnvelopeReport {
    HPReal alpha_hat;      // inf of |e^{2 sqrt z}| / (|gf(z)| |z|^{1/4}) over |z| >= 1
    HPReal alpha_tested;
    size_t grid_points = 0;
    size_t violations = 0;         // grid points breaking the envelope at alpha_tested
    HPReal worst_margin_log;       // min over grid of envelope_log - log|gf|; >= 0 iff pass
    HPComplex worst_z;
    bool pass = false;
};

// checks every grid point against the envelope at alpha; alpha <= 0 tests the
// empirically found alpha_hat shaded by 1e-6 so the binding point passes
// strictly; violations are reported, never thrown
EnvelopeReport validate_envelope(const std::vector<HPComplex>& grid, const HPReal& alpha);

// z = 0 plus log-spaced magnitudes in [mag_lo, mag_hi] crossed with equally
// spaced phases in (-pi, pi]
std::vector<HPComplex> envelope_grid(size_t magnitudes, size_t phases,
                                     double mag_lo, double mag_hi);

}  // namespace twintrees
