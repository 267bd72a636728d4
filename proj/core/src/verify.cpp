#include "twintrees/verify.hpp"

#include <json.hpp>

#include <cmath>
#include <stdexcept>
#include <utility>

#include "twintrees/bessel.hpp"
#include "twintrees/bigint.hpp"
#include "twintrees/hp.hpp"
#include "twintrees/landscape.hpp"
#include "twintrees/profile_enum.hpp"
#include "twintrees/sampling.hpp"
#include "twintrees/thresholds.hpp"

namespace twintrees {

namespace {

using json = nlohmann::ordered_json;

class Reporter {
  public:
    Reporter(std::string suite, const CheckSink& sink)
        : suite_(std::move(suite)), sink_(sink) {}

    void report(const std::string& check, bool pass, const json& details) {
        ++summary_.checks;
        if (!pass) ++summary_.failures;
        if (sink_) sink_(CheckResult{suite_, check, pass, details.dump()});
    }

    SuiteSummary summary() const { return summary_; }

  private:
    std::string suite_;
    const CheckSink& sink_;
    SuiteSummary summary_;
};

std::string hp_str(const HPReal& x) { return hp_to_string(x, 24); }

// reduce into (-pi, pi]
HPReal wrap_angle(const HPReal& a) {
    HPReal two_pi = 2 * hp_pi();
    HPReal w = a - two_pi * round(a / two_pi);
    if (w > hp_pi()) w -= two_pi;
    if (w <= -hp_pi()) w += two_pi;
    return w;
}

}  // namespace

SuiteSummary verify_cayley(uint32_t k_max, const CheckSink& sink) {
    Reporter rep("cayley", sink);
    for (uint32_t k = 1; k <= k_max; ++k) {
        BigInt sum = 0;
        uint64_t profiles = 0;
        for_each_profile(k, DegreeCap::unbounded(), [&](const DegreeProfile& p) {
            sum += count_trees_with_profile(p);
            ++profiles;
        });
        BigInt expected = pow_u(BigInt(k), k - 1);
        rep.report("k=" + std::to_string(k), sum == expected,
                   json{{"k", k},
                        {"profiles", profiles},
                        {"tree_count", to_decimal(sum)},
                        {"expected", to_decimal(expected)}});
    }
    return rep.summary();
}

SuiteSummary verify_routes(uint32_t k_max, const std::vector<DegreeCap>& caps,
                           unsigned threads, const CheckSink& sink) {
    Reporter rep("routes", sink);
    for (const DegreeCap& cap : caps) {
        for (uint32_t k = 1; k <= k_max; ++k) {
            BigInt direct = twin_profile_count_direct(k, cap, threads);
            BigInt series = twin_profile_count_series(k, cap);
            rep.report("cap=" + cap.to_string() + ",k=" + std::to_string(k),
                       direct == series,
                       json{{"k", k},
                            {"cap", cap.to_string()},
                            {"direct", to_decimal(direct)},
                            {"series", to_decimal(series)}});
        }
    }
    return rep.summary();
}

SuiteSummary verify_oracle(uint32_t n_max, const CheckSink& sink) {
    Reporter rep("oracle", sink);
    for (uint32_t n = 3; n <= n_max; ++n) {
        for (uint32_t k = 1; 2 * k + 1 <= n; ++k) {
            BigRat brute = brute_force_expected(n, k);
            BigRat formula = expected_twin_pairs(n, k);
            rep.report("n=" + std::to_string(n) + ",k=" + std::to_string(k),
                       brute == formula,
                       json{{"n", n},
                            {"k", k},
                            {"enumerated", to_fraction(brute)},
                            {"formula", to_fraction(formula)}});
        }
    }
    return rep.summary();
}

SuiteSummary verify_montecarlo(const std::vector<MonteCarloCase>& cases,
                               uint64_t trials, uint64_t seed, unsigned threads,
                               const CheckSink& sink) {
    Reporter rep("montecarlo", sink);
    for (const auto& c : cases) {
        EstimateWithCI est = monte_carlo_expected(c.n, c.k, trials, seed, threads);
        BigRat exact = expected_twin_pairs(c.n, c.k);
        double target = exact.get_d();
        double deviation = est.mean - target;
        bool pass = std::abs(deviation) <= 5.0 * est.std_error;
        rep.report("n=" + std::to_string(c.n) + ",k=" + std::to_string(c.k), pass,
                   json{{"n", c.n},
                        {"k", c.k},
                        {"trials", trials},
                        {"seed", seed},
                        {"mean", est.mean},
                        {"std_error", est.std_error},
                        {"expected", target},
                        {"expected_fraction", to_fraction(exact)},
                        {"sigmas", est.std_error > 0 ? deviation / est.std_error : 0.0}});
    }
    return rep.summary();
}

SuiteSummary verify_bounds(uint32_t k_max, unsigned threads, const CheckSink& sink) {
    Reporter rep("bounds", sink);

    {
        // closed-form hand value of the k = 2 exponential bound: log(e^6) = 6
        HPReal pinned = chernoff_expform_log_bound(2, DegreeCap::unbounded());
        bool pass = abs(pinned - 6) <= HPReal(6e-12);
        rep.report("exp_form_pin_k2", pass,
                   json{{"value_log", hp_str(pinned)}, {"expected_log", 6}});
    }

    const std::vector<DegreeCap> caps = {DegreeCap::bounded(3), DegreeCap::bounded(5)};
    for (uint32_t k = 2; k <= k_max; ++k) {
        std::string kname = "k=" + std::to_string(k);
        BigInt n_exact = twin_profile_count_direct(k, DegreeCap::unbounded(), threads);
        HPReal log_n = log_of_bigint(n_exact);

        HPReal bound = chernoff_log_bound(k, DegreeCap::unbounded(), false);
        rep.report(kname + "/stationary", bound >= log_n,
                   json{{"k", k}, {"bound_log", hp_str(bound)}, {"exact_log", hp_str(log_n)}});

        HPReal refined = chernoff_log_bound(k, DegreeCap::unbounded(), true);
        rep.report(kname + "/refined", refined <= bound && refined >= log_n,
                   json{{"k", k},
                        {"refined_log", hp_str(refined)},
                        {"bound_log", hp_str(bound)},
                        {"exact_log", hp_str(log_n)}});

        HPReal exp_form = chernoff_expform_log_bound(k, DegreeCap::unbounded());
        rep.report(kname + "/exp_form", exp_form >= bound,
                   json{{"k", k},
                        {"exp_form_log", hp_str(exp_form)},
                        {"bound_log", hp_str(bound)}});

        for (const DegreeCap& cap : caps) {
            BigInt n_cap = twin_profile_count_direct(k, cap, threads);
            HPReal log_cap = log_of_bigint(n_cap);
            SaddleParams p = SaddleParams::at(k);
            HPReal bound_cap = chernoff_log_bound_at(k, cap, p.x1, p.x2);
            rep.report(kname + "/cap=" + cap.to_string(), bound_cap >= log_cap,
                       json{{"k", k},
                            {"cap", cap.to_string()},
                            {"bound_log", hp_str(bound_cap)},
                            {"exact_log", hp_str(log_cap)}});
        }
    }
    return rep.summary();
}

SuiteSummary verify_saddle(const std::vector<SaddleCase>& cases,
                           double relative_tolerance, const QuadratureSpec& spec,
                           const CheckSink& sink) {
    Reporter rep("saddle", sink);
    for (const auto& c : cases) {
        std::string name = "k=" + std::to_string(c.k) + ",cap=" + c.cap.to_string();
        BigInt n_exact = twin_profile_count_direct(c.k, c.cap);
        HPReal exact_log = log_of_bigint(n_exact);
        json details{{"k", c.k},
                     {"cap", c.cap.to_string()},
                     {"exact_log", hp_str(exact_log)},
                     {"tolerance", relative_tolerance}};
        try {
            HPReal quad = saddle_integral_log_count(c.k, c.cap, spec);
            HPReal rel = abs(quad - exact_log) / abs(exact_log);
            details["quadrature_log"] = hp_str(quad);
            details["relative_error"] = hp_str(rel);
            rep.report(name, rel <= HPReal(relative_tolerance), details);
        } catch (const std::runtime_error& e) {
            details["error"] = e.what();
            rep.report(name, false, details);
        }
    }
    return rep.summary();
}

SuiteSummary verify_lemma1(unsigned precision_bits_for_suite, const CheckSink& sink) {
    Reporter rep("lemma1", sink);
    PrecisionScope scope(precision_bits_for_suite);
    const HPReal pi = hp_pi();

    {
        // both evaluation routes on the band, compared as complex values
        const HPReal tol =
            ldexp(HPReal(10), -static_cast<int>(precision_bits() / 2 + 8));
        const size_t mags = 25;
        HPReal worst = -1, worst_mag, worst_arg;
        size_t points = 0, violations = 0;
        HPReal llo = log(HPReal(1) / 100), lhi = log(HPReal(1000000));
        for (size_t i = 0; i < mags; ++i) {
            HPReal mag = exp(llo + (lhi - llo) * static_cast<unsigned long>(i) /
                                       static_cast<unsigned long>(mags - 1));
            for (int p = -3; p <= 4; ++p) {
                HPComplex z = polar(mag, pi * p / 4);
                LogComplex s = gf_series_log(z);
                LogComplex q = gf_integral_log(z);
                HPReal dl = s.log_abs - q.log_abs;
                HPReal dth = wrap_angle(s.angle - q.angle);
                HPReal rel = abs(HPComplex(exp(dl) * cos(dth) - 1, exp(dl) * sin(dth)));
                ++points;
                if (rel > tol) ++violations;
                if (rel > worst) {
                    worst = rel;
                    worst_mag = mag;
                    worst_arg = pi * p / 4;
                }
            }
        }
        rep.report("dual_route_band", violations == 0,
                   json{{"points", points},
                        {"tolerance", hp_str(tol)},
                        {"violations", violations},
                        {"worst_rel", hp_str(worst)},
                        {"worst_mag", hp_str(worst_mag)},
                        {"worst_arg", hp_str(worst_arg)}});
    }

    {
        // log gf(x) <= 2 sqrt(x) pointwise on the positive axis
        const size_t points = 10000;
        HPReal min_margin, at_x;
        bool first = true;
        size_t violations = 0;
        HPReal llo = log(HPReal(1) / 1000000), lhi = log(HPReal(100000000));
        for (size_t i = 0; i < points; ++i) {
            HPReal x = exp(llo + (lhi - llo) * static_cast<unsigned long>(i) /
                                     static_cast<unsigned long>(points - 1));
            HPReal margin = 2 * sqrt(x) - gf_log(HPComplex(x)).log_abs;
            if (margin < 0) ++violations;
            if (first || margin < min_margin) {
                min_margin = margin;
                at_x = x;
                first = false;
            }
        }
        rep.report("series_exp_bound", violations == 0,
                   json{{"points", points},
                        {"violations", violations},
                        {"min_margin_log", hp_str(min_margin)},
                        {"at_x", hp_str(at_x)}});
    }

    {
        // modulus envelope at the empirical constant, shaded to strict
        std::vector<HPComplex> grid = envelope_grid(125, 80, 1e-4, 1e6);
        EnvelopeReport er = validate_envelope(grid, HPReal(0));
        rep.report("envelope_alpha", er.pass,
                   json{{"grid_points", er.grid_points},
                        {"alpha_hat", hp_str(er.alpha_hat)},
                        {"alpha_tested", hp_str(er.alpha_tested)},
                        {"violations", er.violations},
                        {"worst_margin_log", hp_str(er.worst_margin_log)},
                        {"worst_z_re", hp_str(er.worst_z.re)},
                        {"worst_z_im", hp_str(er.worst_z.im)}});
    }
    return rep.summary();
}

SuiteSummary verify_landscape(uint32_t grid_nodes, const std::vector<double>& x2_values,
                              const CheckSink& sink) {
    Reporter rep("W", sink);
    if (grid_nodes < 3 || grid_nodes % 2 == 0)
        throw std::domain_error("verify_landscape: grid_nodes must be odd and >= 3");
    const HPReal pi = hp_pi();
    for (double x2d : x2_values) {
        HPReal x2(x2d);
        std::string name = "x2=" + std::to_string(x2d);

        HPReal w00 = contour_weight(HPReal(0), HPReal(0), x2);
        uint64_t violations = 0;
        HPReal max_off;
        HPReal at1, at2;
        bool first = true;
        const uint32_t mid = (grid_nodes - 1) / 2;
        for (uint32_t i = 0; i < grid_nodes; ++i) {
            HPReal xi1 = -pi + (2 * pi * i) / (grid_nodes - 1);
            for (uint32_t j = 0; j < grid_nodes; ++j) {
                if (i == mid && j == mid) continue;
                HPReal xi2 = -pi + (2 * pi * j) / (grid_nodes - 1);
                HPReal w = contour_weight(xi1, xi2, x2);
                if (w >= w00) ++violations;
                if (first || w > max_off) {
                    max_off = w;
                    at1 = xi1;
                    at2 = xi2;
                    first = false;
                }
            }
        }
        rep.report(name + "/origin_max", violations == 0,
                   json{{"x2", x2d},
                        {"grid", grid_nodes},
                        {"w_origin", hp_str(w00)},
                        {"violations", violations},
                        {"max_off_origin", hp_str(max_off)},
                        {"at_xi1", hp_str(at1)},
                        {"at_xi2", hp_str(at2)}});

        json hdetails{{"x2", x2d}};
        try {
            // throws if any entry disagrees with its finite-difference
            // rederivation beyond 1e-6 relative
            WeightHessian h = contour_weight_hessian_origin(x2);
            hdetails["h11"] = hp_str(h.h11);
            hdetails["h12"] = hp_str(h.h12);
            hdetails["h22"] = hp_str(h.h22);
            hdetails["det"] = hp_str(h.det);
            rep.report(name + "/hessian", true, hdetails);
        } catch (const std::runtime_error& e) {
            hdetails["error"] = e.what();
            rep.report(name + "/hessian", false, hdetails);
        }
    }
    return rep.summary();
}

SuiteSummary verify_thresholds(const std::vector<uint64_t>& sizes, double delta,
                               double eps2, const CheckSink& sink) {
    Reporter rep("thresholds", sink);
    std::vector<BigInt> uppers, lowers;
    std::vector<HPReal> part_a, part_b;
    json rows = json::array();
    for (uint64_t n : sizes) {
        BigInt upper = vanishing_size_threshold(n, delta);
        BigInt lower = divergent_size_threshold(n, delta);
        HPReal a = expected_pairs_upper_log(n, upper, eps2);
        HPReal b = expected_pairs_lower_log(n, lower);
        uppers.push_back(upper);
        lowers.push_back(lower);
        part_a.push_back(a);
        part_b.push_back(b);
        rows.push_back(json{{"n", n},
                            {"upper_threshold", to_decimal(upper)},
                            {"lower_threshold", to_decimal(lower)},
                            {"part_a_log", hp_str(a)},
                            {"part_b_log", hp_str(b)}});
    }

    auto trend = [&](const char* check, bool pass) {
        rep.report(check, pass, json{{"delta", delta}, {"eps2", eps2}, {"rows", rows}});
    };

    bool up_inc = true, low_inc = true, a_dec = true, b_inc = true;
    for (size_t i = 1; i < sizes.size(); ++i) {
        up_inc = up_inc && uppers[i] > uppers[i - 1];
        low_inc = low_inc && lowers[i] > lowers[i - 1];
        a_dec = a_dec && part_a[i] < part_a[i - 1];
        b_inc = b_inc && part_b[i] > part_b[i - 1];
    }
    trend("upper_threshold_increasing", up_inc);
    trend("lower_threshold_increasing", low_inc);
    trend("part_a_decreasing", a_dec);
    trend("part_b_increasing", b_inc);
    return rep.summary();
}

std::vector<DegreeCap> default_route_caps() {
    return {DegreeCap::bounded(2), DegreeCap::bounded(3), DegreeCap::bounded(5),
            DegreeCap::unbounded()};
}

std::vector<MonteCarloCase> default_montecarlo_cases() {
    return {{20, 1}, {50, 2}, {100, 3}};
}

std::vector<SaddleCase> default_saddle_cases() {
    return {{2, DegreeCap::unbounded()},
            {5, DegreeCap::unbounded()},
            {10, DegreeCap::unbounded()},
            {20, DegreeCap::unbounded()},
            {40, DegreeCap::unbounded()},
            {10, DegreeCap::bounded(3)},
            {20, DegreeCap::bounded(4)}};
}

std::vector<uint64_t> default_trend_sizes() {
    return {1000, 1000000, 1000000000, 1000000000000ull};
}

}  // namespace twintrees
