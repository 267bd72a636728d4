// Batch front end over the twintrees library.  Every subcommand is a pure
// function of its parsed configuration: identical argv (plus the
// TWIN_PRECISION_BITS environment variable) produces identical bytes on
// stdout.  Output is JSON lines; thresholds can opt into CSV.  Exit codes:
// 0 success, 1 verification or computation failure, 2 usage or domain error.

#include <CLI11.hpp>
#include <json.hpp>

#include <clocale>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "twintrees/bessel.hpp"
#include "twintrees/bigint.hpp"
#include "twintrees/degree_profile.hpp"
#include "twintrees/hp.hpp"
#include "twintrees/landscape.hpp"
#include "twintrees/profile_enum.hpp"
#include "twintrees/rooted_tree.hpp"
#include "twintrees/saddle.hpp"
#include "twintrees/sampling.hpp"
#include "twintrees/thresholds.hpp"
#include "twintrees/verify.hpp"

namespace tw = twintrees;
using json = nlohmann::ordered_json;

namespace {

void emit_line(const json& j) { std::cout << j.dump() << '\n'; }

std::string hp_out(const tw::HPReal& x) { return tw::hp_to_string(x, 24); }

tw::HPReal natural_to_log10(const tw::HPReal& x) { return x / log(tw::HPReal(10)); }

tw::DegreeCap cap_of(uint32_t d) {
    return d == 0 ? tw::DegreeCap::unbounded() : tw::DegreeCap::bounded(d);
}

// precedence: explicit flag, then TWIN_PRECISION_BITS, then 256
unsigned resolve_precision(unsigned flag_bits) {
    if (flag_bits != 0) return flag_bits;
    if (const char* env = std::getenv("TWIN_PRECISION_BITS")) {
        const std::string s(env);
        size_t pos = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(s, &pos);
        } catch (const std::exception&) {
            throw std::domain_error("TWIN_PRECISION_BITS is not a number: " + s);
        }
        if (pos != s.size() || v == 0 || v > std::numeric_limits<unsigned>::max())
            throw std::domain_error("TWIN_PRECISION_BITS out of range: " + s);
        return static_cast<unsigned>(v);
    }
    return 256;
}

struct VerifyOutcome {
    tw::SuiteSummary summary;
    std::optional<tw::CheckResult> first_failure;
};

tw::CheckSink check_printer(VerifyOutcome& out) {
    return [&out](const tw::CheckResult& r) {
        json line;
        line["suite"] = r.suite;
        line["check"] = r.check;
        line["pass"] = r.pass;
        line["details"] = json::parse(r.details);
        emit_line(line);
        if (!r.pass && !out.first_failure) out.first_failure = r;
    };
}

struct ExactConfig {
    uint32_t k = 0;
    uint64_t n = 0;
    uint32_t d = 0;
    bool profiles = true;
};

void run_exact(const ExactConfig& c, unsigned threads) {
    const tw::DegreeCap cap = cap_of(c.d);
    if (c.n != 0) {
        if (c.d != 0)
            throw std::domain_error("--n computes uncapped host counts; drop --d");
        if (c.n < 2ull * c.k + 1) throw std::domain_error("n must exceed 2k");
    }

    const tw::BigInt profile_total = tw::count_profiles(c.k, cap);
    tw::BigInt twin_count;
    if (c.profiles) {
        twin_count = 0;
        tw::for_each_profile(c.k, cap, [&](const tw::DegreeProfile& p) {
            const tw::BigInt trees = tw::count_trees_with_profile(p);
            json line;
            line["profile"] = p.to_string();
            line["trees"] = tw::to_decimal(trees);
            emit_line(line);
            twin_count += trees * trees;
        });
    } else {
        twin_count = tw::twin_profile_count_direct(c.k, cap, threads);
    }

    json out;
    out["op"] = "exact";
    json inputs;
    inputs["k"] = c.k;
    inputs["d_cap"] = cap.to_string();
    if (c.n != 0) inputs["n"] = c.n;
    out["inputs"] = inputs;
    out["profiles"] = tw::to_decimal(profile_total);
    out["N"] = tw::to_decimal(twin_count);
    if (c.n != 0) {
        const tw::BigInt hosts = tw::host_pair_count(c.n, c.k);
        const tw::BigInt trees_total = tw::pow_u(tw::BigInt(c.n), static_cast<unsigned long>(c.n - 1));
        out["S"] = tw::to_decimal(hosts);
        out["trees_total"] = tw::to_decimal(trees_total);
        out["m"] = tw::to_decimal(hosts) + "/" + tw::to_decimal(trees_total);
        out["m_lowest_terms"] = tw::to_fraction(tw::expected_twin_pairs(c.n, c.k));
    }
    emit_line(out);
}

struct VerifyConfig {
    std::string suite;
    uint32_t kmax = 0;
    uint32_t nmax = 0;
    uint32_t k = 0;
    uint32_t d = 0;
    uint32_t grid = 0;
    uint64_t trials = 0;
    uint64_t seed = 1;
    double tol = 0.0;
    std::vector<double> x2;
};

int run_verify(const VerifyConfig& c, unsigned threads) {
    VerifyOutcome outcome;
    const tw::CheckSink sink = check_printer(outcome);

    if (c.suite == "cayley") {
        outcome.summary = tw::verify_cayley(c.kmax ? c.kmax : 30, sink);
    } else if (c.suite == "routes") {
        outcome.summary =
            tw::verify_routes(c.kmax ? c.kmax : 60, tw::default_route_caps(), threads, sink);
    } else if (c.suite == "oracle") {
        outcome.summary = tw::verify_oracle(c.nmax ? c.nmax : 7, sink);
    } else if (c.suite == "bounds") {
        outcome.summary = tw::verify_bounds(c.kmax ? c.kmax : 60, threads, sink);
    } else if (c.suite == "saddle") {
        std::vector<tw::SaddleCase> cases;
        if (c.k != 0)
            cases.push_back({c.k, cap_of(c.d)});
        else
            cases = tw::default_saddle_cases();
        tw::QuadratureSpec spec;
        outcome.summary = tw::verify_saddle(cases, c.tol > 0 ? c.tol : 1e-6, spec, sink);
    } else if (c.suite == "lemma1") {
        outcome.summary = tw::verify_lemma1(tw::precision_bits(), sink);
    } else if (c.suite == "W") {
        const std::vector<double> x2 = c.x2.empty() ? std::vector<double>{0.25, 0.5, 1.0} : c.x2;
        outcome.summary = tw::verify_landscape(c.grid ? c.grid : 401, x2, sink);
    } else if (c.suite == "montecarlo") {
        outcome.summary = tw::verify_montecarlo(tw::default_montecarlo_cases(),
                                                c.trials ? c.trials : 100000, c.seed,
                                                threads, sink);
    } else {
        throw std::domain_error("unknown suite: " + c.suite);
    }

    json out;
    out["op"] = "verify";
    out["suite"] = c.suite;
    out["checks"] = outcome.summary.checks;
    out["failures"] = outcome.summary.failures;
    out["pass"] = outcome.summary.ok();
    if (outcome.first_failure) {
        json f;
        f["check"] = outcome.first_failure->check;
        f["details"] = json::parse(outcome.first_failure->details);
        out["first_failure"] = f;
    }
    emit_line(out);
    return outcome.summary.ok() ? 0 : 1;
}

struct ThresholdsConfig {
    std::vector<uint64_t> sizes{1000, 1000000, 1000000000, 1000000000000ull};
    double delta = 0.5;
    double eps2 = 0.49;
    double log_base = 0.0;
    bool csv = false;
};

void run_thresholds(const ThresholdsConfig& c) {
    if (c.csv)
        std::cout << "n,delta,eps2,upper_threshold,lower_threshold,part_a_log,part_b_log\n";
    for (uint64_t n : c.sizes) {
        const tw::BigInt upper = tw::vanishing_size_threshold(n, c.delta, c.log_base);
        const tw::BigInt lower = tw::divergent_size_threshold(n, c.delta, c.log_base);
        const tw::HPReal part_a = tw::expected_pairs_upper_log(n, upper, c.eps2, c.log_base);
        const tw::HPReal part_b = tw::expected_pairs_lower_log(n, lower, c.log_base);
        if (c.csv) {
            std::cout << n << ',' << json(c.delta).dump() << ',' << json(c.eps2).dump() << ','
                      << tw::to_decimal(upper) << ',' << tw::to_decimal(lower) << ','
                      << hp_out(part_a) << ',' << hp_out(part_b) << '\n';
        } else {
            json row;
            row["op"] = "thresholds";
            row["n"] = n;
            row["delta"] = c.delta;
            row["eps2"] = c.eps2;
            row["upper_threshold"] = tw::to_decimal(upper);
            row["lower_threshold"] = tw::to_decimal(lower);
            row["part_a_log"] = hp_out(part_a);
            row["part_b_log"] = hp_out(part_b);
            row["up_to_additive_o1"] = true;
            emit_line(row);
        }
    }
}

struct BoundConfig {
    uint32_t k = 0;
    uint32_t d = 0;
    bool refine = false;
    bool exp_form = false;
    double x1 = 0.0;
    double x2 = 0.0;
};

void run_bound(const BoundConfig& c) {
    const tw::DegreeCap cap = cap_of(c.d);
    const bool custom_point = c.x1 > 0 || c.x2 > 0;
    if (custom_point && (c.x1 <= 0 || c.x2 <= 0))
        throw std::domain_error("--x1 and --x2 must be given together and positive");
    if (c.exp_form && (c.refine || custom_point))
        throw std::domain_error("--exp-form takes no refinement or evaluation point");

    tw::HPReal value;
    std::string variant;
    if (c.exp_form) {
        value = tw::chernoff_expform_log_bound(c.k, cap);
        variant = "exp_form";
    } else if (custom_point) {
        value = tw::chernoff_log_bound_at(c.k, cap, tw::HPReal(c.x1), tw::HPReal(c.x2));
        variant = "product_at_point";
    } else {
        value = tw::chernoff_log_bound(c.k, cap, c.refine);
        variant = c.refine ? "product_refined" : "product_stationary";
    }

    json out;
    out["op"] = "bound";
    json inputs;
    inputs["k"] = c.k;
    inputs["d_cap"] = cap.to_string();
    inputs["variant"] = variant;
    if (custom_point) {
        inputs["x1"] = c.x1;
        inputs["x2"] = c.x2;
    }
    out["inputs"] = inputs;
    out["precision_bits"] = tw::precision_bits();
    out["value_log"] = hp_out(value);
    out["value_log10"] = hp_out(natural_to_log10(value));
    out["tolerance_flags"] = json{{"upper_bound", true}, {"up_to_additive_o1", false}};
    emit_line(out);
}

struct IntegralConfig {
    uint32_t k = 0;
    uint32_t d = 0;
    double tol = 1e-10;
    uint32_t nodes = 32;
    uint32_t max_nodes = 1u << 13;
    double z_re = 0.0;
    double z_im = 0.0;
    bool z_given = false;
    std::string route = "auto";
};

void run_integral(const IntegralConfig& c) {
    json out;
    out["op"] = "integral";
    if (c.z_given == (c.k != 0))
        throw std::domain_error("give exactly one of --k or --z-re/--z-im");

    if (c.z_given) {
        const tw::HPComplex z{tw::HPReal(c.z_re), tw::HPReal(c.z_im)};
        tw::LogComplex value;
        if (c.route == "series")
            value = tw::gf_series_log(z);
        else if (c.route == "integral")
            value = tw::gf_integral_log(z, c.tol);
        else
            value = tw::gf_log(z, c.tol);
        json inputs;
        inputs["z_re"] = c.z_re;
        inputs["z_im"] = c.z_im;
        inputs["route"] = c.route;
        inputs["relative_tolerance"] = c.tol;
        out["inputs"] = inputs;
        out["precision_bits"] = tw::precision_bits();
        out["value_log"] = hp_out(value.log_abs);
        out["value_angle"] = hp_out(value.angle);
        out["value_log10"] = hp_out(natural_to_log10(value.log_abs));
        out["tolerance_flags"] = json{{"relative_tolerance", c.tol}};
        emit_line(out);
        return;
    }

    const tw::DegreeCap cap = cap_of(c.d);
    tw::QuadratureSpec spec;
    spec.nodes_per_axis = c.nodes;
    spec.max_nodes_per_axis = c.max_nodes;
    spec.relative_tolerance = c.tol;
    const tw::HPReal value = tw::saddle_integral_log_count(c.k, cap, spec);
    json inputs;
    inputs["k"] = c.k;
    inputs["d_cap"] = cap.to_string();
    inputs["nodes_per_axis"] = c.nodes;
    inputs["max_nodes_per_axis"] = c.max_nodes;
    inputs["relative_tolerance"] = c.tol;
    out["inputs"] = inputs;
    out["precision_bits"] = tw::precision_bits();
    out["value_log"] = hp_out(value);
    out["value_log10"] = hp_out(natural_to_log10(value));
    out["tolerance_flags"] =
        json{{"relative_tolerance", c.tol}, {"imaginary_part_checked", true}};
    emit_line(out);
}

struct SampleConfig {
    uint32_t n = 0;
    uint32_t k = 1;
    uint64_t trials = 1;
    uint64_t seed = 1;
    std::string report = "census";
    bool per_tree = true;
};

void run_sample(const SampleConfig& c) {
    tw::BigInt sum = 0, sum_sq = 0;
    for (uint64_t trial = 0; trial < c.trials; ++trial) {
        tw::RandomSource rng(c.seed, trial);
        const tw::RootedTree tree = tw::sample_rooted_cayley(c.n, rng);
        const auto census = tw::twin_pair_census(tw::fringe_profiles(tree));
        const uint32_t max_size = census.empty() ? 0 : census.rbegin()->first;

        const auto it = census.find(c.k);
        const uint64_t pairs = it == census.end() ? 0 : it->second;
        sum += pairs;
        sum_sq += tw::BigInt(pairs) * tw::BigInt(pairs);

        if (!c.per_tree) continue;
        json line;
        line["trial"] = trial;
        line["max_twin_size"] = max_size;
        if (c.report == "census") {
            json twins = json::object();
            for (const auto& [size, count] : census) twins[std::to_string(size)] = count;
            line["twins"] = twins;
        }
        emit_line(line);
    }

    json out;
    out["op"] = "sample";
    out["n"] = c.n;
    out["k"] = c.k;
    out["trials"] = c.trials;
    out["seed"] = c.seed;
    out["mean"] = tw::make_rat(sum, tw::BigInt(c.trials)).get_d();
    if (c.trials >= 2) {
        const tw::BigInt t(c.trials);
        const tw::BigRat var_of_mean =
            tw::make_rat(t * sum_sq - sum * sum, t * t * (t - 1));
        out["std_error"] = std::sqrt(var_of_mean.get_d());
    } else {
        out["std_error"] = nullptr;
    }
    emit_line(out);
}

struct Lemma1Config {
    double alpha = 0.0;
    uint32_t magnitudes = 125;
    uint32_t phases = 80;
    double mag_lo = 1e-4;
    double mag_hi = 1e6;
};

int run_lemma1(const Lemma1Config& c) {
    const auto grid = tw::envelope_grid(c.magnitudes, c.phases, c.mag_lo, c.mag_hi);
    const tw::EnvelopeReport rep = tw::validate_envelope(grid, tw::HPReal(c.alpha));
    json out;
    out["op"] = "lemma1";
    json inputs;
    inputs["alpha"] = c.alpha;
    inputs["magnitudes"] = c.magnitudes;
    inputs["phases"] = c.phases;
    inputs["mag_lo"] = c.mag_lo;
    inputs["mag_hi"] = c.mag_hi;
    out["inputs"] = inputs;
    out["precision_bits"] = tw::precision_bits();
    out["alpha_hat"] = hp_out(rep.alpha_hat);
    out["alpha_tested"] = hp_out(rep.alpha_tested);
    out["grid_points"] = rep.grid_points;
    out["violations"] = rep.violations;
    out["worst_margin_log"] = hp_out(rep.worst_margin_log);
    out["worst_z"] = json{{"re", hp_out(rep.worst_z.re)}, {"im", hp_out(rep.worst_z.im)}};
    out["pass"] = rep.pass;
    out["tolerance_flags"] = json{{"empirical_constant", true}};
    emit_line(out);
    return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_ALL, "C");
    std::ios::sync_with_stdio(false);

    CLI::App app{"exact and numeric toolkit for twin subtrees in random rooted labeled trees"};
    app.require_subcommand(1);

    unsigned precision_flag = 0;
    unsigned threads = 1;
    app.add_option("--precision", precision_flag,
                   "working precision in mantissa bits (>= 64); falls back to "
                   "TWIN_PRECISION_BITS, then 256")
        ->check(CLI::Range(64u, 1u << 24));
    app.add_option("--threads", threads,
                   "worker threads for exact enumeration; never changes output bytes")
        ->check(CLI::Range(1u, 1024u));

    int rc = 0;
    const auto apply_precision = [&] { tw::set_precision_bits(resolve_precision(precision_flag)); };

    ExactConfig exact_cfg;
    auto* exact = app.add_subcommand("exact", "profile table, N(k), and host counts");
    exact->fallthrough();
    exact->add_option("--k", exact_cfg.k, "subtree size")->required()->check(CLI::PositiveNumber);
    exact->add_option("--n", exact_cfg.n, "host tree size (adds S and m; needs n >= 2k+1)");
    exact->add_option("--d", exact_cfg.d, "out-degree cap (0 = unbounded)");
    exact->add_flag("--profiles,!--no-profiles", exact_cfg.profiles,
                    "stream one line per degree profile (default on)");
    exact->callback([&] {
        apply_precision();
        run_exact(exact_cfg, threads);
    });

    VerifyConfig verify_cfg;
    auto* verify = app.add_subcommand("verify", "run a named cross-validation suite");
    verify->fallthrough();
    verify->add_option("suite", verify_cfg.suite, "suite name")
        ->required()
        ->check(CLI::IsMember(
            {"cayley", "routes", "oracle", "bounds", "saddle", "lemma1", "W", "montecarlo"}));
    verify->add_option("--kmax", verify_cfg.kmax, "largest subtree size (cayley, routes, bounds)");
    verify->add_option("--nmax", verify_cfg.nmax, "largest host size (oracle)");
    verify->add_option("--k", verify_cfg.k, "single saddle case")->check(CLI::Range(2u, 1u << 20));
    verify->add_option("--d", verify_cfg.d, "out-degree cap for --k (0 = unbounded)");
    verify->add_option("--tol", verify_cfg.tol, "relative tolerance (saddle)")
        ->check(CLI::PositiveNumber);
    verify->add_option("--grid", verify_cfg.grid, "odd grid edge (W)");
    verify->add_option("--x2", verify_cfg.x2, "x2 values (W)");
    verify->add_option("--trials", verify_cfg.trials, "samples per case (montecarlo)");
    verify->add_option("--seed", verify_cfg.seed, "sampler seed (montecarlo)");
    verify->callback([&] {
        apply_precision();
        rc = run_verify(verify_cfg, threads);
    });

    ThresholdsConfig thresholds_cfg;
    auto* thresholds = app.add_subcommand("thresholds", "twin-size threshold table");
    thresholds->fallthrough();
    thresholds->add_option("--n", thresholds_cfg.sizes, "host sizes")->check(CLI::PositiveNumber);
    thresholds->add_option("--delta", thresholds_cfg.delta, "threshold exponent shift");
    thresholds->add_option("--eps2", thresholds_cfg.eps2, "upper envelope parameter in (0, 1/2)");
    thresholds->add_option("--log-base", thresholds_cfg.log_base,
                           "rebase logs (0 = natural, else > 1)");
    thresholds->add_flag("--csv", thresholds_cfg.csv, "CSV instead of JSON lines");
    thresholds->callback([&] {
        apply_precision();
        run_thresholds(thresholds_cfg);
    });

    BoundConfig bound_cfg;
    auto* bound = app.add_subcommand("bound", "Chernoff-style log upper bound on N(k)");
    bound->fallthrough();
    bound->add_option("--k", bound_cfg.k, "subtree size")
        ->required()
        ->check(CLI::Range(2u, 1u << 20));
    bound->add_option("--d", bound_cfg.d, "out-degree cap (0 = unbounded)");
    bound->add_flag("--refine", bound_cfg.refine, "coordinate descent from the stationary point");
    bound->add_flag("--exp-form", bound_cfg.exp_form, "closed form with gf replaced by exp(2 sqrt x)");
    bound->add_option("--x1", bound_cfg.x1, "evaluation point override");
    bound->add_option("--x2", bound_cfg.x2, "evaluation point override");
    bound->callback([&] {
        apply_precision();
        run_bound(bound_cfg);
    });

    IntegralConfig integral_cfg;
    auto* integral = app.add_subcommand(
        "integral", "contour quadrature for log N(k), or one gf evaluation with --z-re/--z-im");
    integral->fallthrough();
    integral->add_option("--k", integral_cfg.k, "subtree size")->check(CLI::Range(2u, 1u << 20));
    integral->add_option("--d", integral_cfg.d, "out-degree cap (0 = unbounded)");
    integral->add_option("--tol", integral_cfg.tol, "relative tolerance")
        ->check(CLI::PositiveNumber);
    integral->add_option("--nodes", integral_cfg.nodes, "initial trapezoid nodes per axis");
    integral->add_option("--max-nodes", integral_cfg.max_nodes, "node budget per axis");
    auto* zre = integral->add_option("--z-re", integral_cfg.z_re, "gf argument, real part");
    integral->add_option("--z-im", integral_cfg.z_im, "gf argument, imaginary part")->needs(zre);
    integral->add_option("--route", integral_cfg.route, "gf route")
        ->check(CLI::IsMember({"auto", "series", "integral"}));
    integral->callback([&] {
        apply_precision();
        integral_cfg.z_given = zre->count() > 0;
        run_integral(integral_cfg);
    });

    SampleConfig sample_cfg;
    auto* sample = app.add_subcommand("sample", "uniform random rooted trees and twin censuses");
    sample->fallthrough();
    sample->add_option("--n", sample_cfg.n, "tree size")->required()->check(CLI::PositiveNumber);
    sample->add_option("--k", sample_cfg.k, "twin size for the final estimate")
        ->check(CLI::PositiveNumber);
    sample->add_option("--trials", sample_cfg.trials, "number of trees")
        ->check(CLI::PositiveNumber);
    sample->add_option("--seed", sample_cfg.seed, "random seed");
    sample->add_option("--report", sample_cfg.report, "per-tree line shape")
        ->check(CLI::IsMember({"census", "max-twin"}));
    sample->add_flag("--per-tree,!--no-per-tree", sample_cfg.per_tree,
                     "stream one line per tree (default on)");
    sample->callback([&] {
        apply_precision();
        run_sample(sample_cfg);
    });

    Lemma1Config lemma1_cfg;
    auto* lemma1 = app.add_subcommand("lemma1", "modulus envelope check for gf");
    lemma1->fallthrough();
    lemma1->add_option("--alpha", lemma1_cfg.alpha,
                       "envelope constant (0 = empirical alpha_hat, shaded)");
    lemma1->add_option("--mags", lemma1_cfg.magnitudes, "log-spaced magnitudes")
        ->check(CLI::PositiveNumber);
    lemma1->add_option("--phases", lemma1_cfg.phases, "equally spaced phases")
        ->check(CLI::PositiveNumber);
    lemma1->add_option("--mag-lo", lemma1_cfg.mag_lo, "smallest magnitude")
        ->check(CLI::PositiveNumber);
    lemma1->add_option("--mag-hi", lemma1_cfg.mag_hi, "largest magnitude")
        ->check(CLI::PositiveNumber);
    lemma1->callback([&] {
        apply_precision();
        rc = run_lemma1(lemma1_cfg);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        emit_line(json{{"error", {{"type", "usage"}, {"message", e.what()}}}});
        return 2;
    } catch (const std::domain_error& e) {
        emit_line(json{{"error", {{"type", "domain"}, {"message", e.what()}}}});
        return 2;
    } catch (const std::invalid_argument& e) {
        emit_line(json{{"error", {{"type", "domain"}, {"message", e.what()}}}});
        return 2;
    } catch (const std::runtime_error& e) {
        emit_line(json{{"error", {{"type", "runtime"}, {"message", e.what()}}}});
        return 1;
    } catch (const std::exception& e) {
        emit_line(json{{"error", {{"type", "internal"}, {"message", e.what()}}}});
        return 2;
    }
    std::cout.flush();
    return rc;
}
