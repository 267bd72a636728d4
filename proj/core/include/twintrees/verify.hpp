#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "twintrees/degree_profile.hpp"
#include "twintrees/saddle.hpp"

namespace twintrees {

// One cross-validation check.  details is a serialized JSON object holding
// the numbers behind the verdict, so callers can stream machine-readable
// check lines without reconstructing them.
struct CheckResult {
    std::string suite;
    std::string check;
    bool pass = false;
    std::string details;
};

using CheckSink = std::function<void(const CheckResult&)>;

struct SuiteSummary {
    uint64_t checks = 0;
    uint64_t failures = 0;
    bool ok() const { return failures == 0; }
    SuiteSummary& operator+=(const SuiteSummary& o) {
        checks += o.checks;
        failures += o.failures;
        return *this;
    }
};

// Each suite runs its checks, reports every one through sink (which may be
// empty), and returns the tally.  Failures never throw; malformed arguments
// still do.

// sum of squared-count roots: sum_r M(r) = k^(k-1) for k = 1..k_max
SuiteSummary verify_cayley(uint32_t k_max, const CheckSink& sink = {});

// direct enumeration vs generating-function coefficient for k = 1..k_max
// under every cap
SuiteSummary verify_routes(uint32_t k_max, const std::vector<DegreeCap>& caps,
                           unsigned threads, const CheckSink& sink = {});

// full tree enumeration vs the closed-form expectation for n <= n_max
SuiteSummary verify_oracle(uint32_t n_max, const CheckSink& sink = {});

struct MonteCarloCase {
    uint32_t n;
    uint32_t k;
};

// sample mean within 5 standard errors of the exact expectation
SuiteSummary verify_montecarlo(const std::vector<MonteCarloCase>& cases,
                               uint64_t trials, uint64_t seed, unsigned threads,
                               const CheckSink& sink = {});

// upper-bound dominance over exact log N for k = 2..k_max: the product bound
// at the stationary point, its refinement (sandwiched between exact and
// unrefined), the weaker exponential form, capped variants, and the pinned
// k = 2 exponential-form value e^6
SuiteSummary verify_bounds(uint32_t k_max, unsigned threads, const CheckSink& sink = {});

struct SaddleCase {
    uint32_t k;
    DegreeCap cap;
};

// contour quadrature vs exact log N within relative_tolerance per case
SuiteSummary verify_saddle(const std::vector<SaddleCase>& cases,
                           double relative_tolerance, const QuadratureSpec& spec,
                           const CheckSink& sink = {});

// dual-route agreement band, the exp(2 sqrt x) domination on the real axis,
// and the modulus envelope with the empirical constant, all at the given
// working precision
SuiteSummary verify_lemma1(unsigned precision_bits, const CheckSink& sink = {});

// strict maximum of the contour weight at the origin on a grid_nodes^2 grid
// over [-pi,pi]^2 and the analytic-vs-finite-difference Hessian, per x2
SuiteSummary verify_landscape(uint32_t grid_nodes, const std::vector<double>& x2_values,
                              const CheckSink& sink = {});

// threshold monotonicity and the envelope trends along growing tree sizes:
// the upper envelope at the vanishing threshold must fall, the lower
// estimate at the divergence threshold must rise
SuiteSummary verify_thresholds(const std::vector<uint64_t>& sizes, double delta,
                               double eps2, const CheckSink& sink = {});

// canonical parameter sets shared by the command line and the acceptance
// harness
std::vector<DegreeCap> default_route_caps();             // 2, 3, 5, unbounded
std::vector<MonteCarloCase> default_montecarlo_cases();  // (20,1) (50,2) (100,3)
std::vector<SaddleCase> default_saddle_cases();          // 2,5,10,20,40 free; (10,3), (20,4)
std::vector<uint64_t> default_trend_sizes();             // 10^3, 10^6, 10^9, 10^12

}  // namespace twintrees
