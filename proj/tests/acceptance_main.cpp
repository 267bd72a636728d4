// Acceptance gate: the ten headline checks, each printed as one [PASS]/[FAIL]
// line with its wall-clock cost.  Exit code is the number of failures.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "twintrees/bigint.hpp"
#include "twintrees/degree_profile.hpp"
#include "twintrees/hp.hpp"
#include "twintrees/saddle.hpp"
#include "twintrees/verify.hpp"

using namespace twintrees;

namespace {

int g_failures = 0;

class Timer {
  public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

void report(const std::string& name, bool pass, double secs, double limit,
            const std::string& detail) {
    const bool in_time = limit <= 0 || secs < limit;
    const bool ok = pass && in_time;
    if (!ok) ++g_failures;
    std::ostringstream line;
    line << (ok ? "[PASS] " : "[FAIL] ") << name << " (" << std::fixed;
    line.precision(1);
    line << secs << "s";
    if (limit > 0) line << " of " << limit << "s";
    line << ") " << detail;
    if (pass && !in_time) line << " [over time budget]";
    std::cout << line.str() << std::endl;
}

std::string tally(const SuiteSummary& s) {
    std::ostringstream os;
    os << s.checks - s.failures << "/" << s.checks << " checks";
    return os.str();
}

unsigned worker_threads() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 2 : std::min(hw, 4u);
}

std::string run_cli_capture(const std::string& args, int& code) {
    std::string cmd = TWINTREES_CLI_PATH;
    cmd += " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        code = -1;
        return {};
    }
    std::string out;
    char buf[1 << 14];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int status = pclose(pipe);
    code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

void criterion_cayley() {
    Timer t;
    const SuiteSummary s = verify_cayley(30);
    report("1 cayley identity, k <= 30", s.ok(), t.seconds(), 10, tally(s));
}

void criterion_routes() {
    Timer t;
    const SuiteSummary s = verify_routes(60, default_route_caps(), worker_threads());
    report("2 route equivalence, k <= 60", s.ok(), t.seconds(), 300, tally(s));
}

void criterion_oracle() {
    Timer t;
    const SuiteSummary s = verify_oracle(7);
    report("3 brute-force oracle, n <= 7", s.ok(), t.seconds(), 600, tally(s));
}

void criterion_montecarlo() {
    Timer t;
    const SuiteSummary s =
        verify_montecarlo(default_montecarlo_cases(), 100000, 1, worker_threads());
    report("4 monte carlo, 1e5 trials", s.ok(), t.seconds(), 300, tally(s));
}

void criterion_bounds() {
    Timer t;
    const SuiteSummary s = verify_bounds(60, worker_threads());
    const HPReal pinned = chernoff_expform_log_bound(2, DegreeCap::unbounded());
    const bool pin_ok = abs(HPComplex(pinned - 6)).convert_to<double>() < 5e-12;
    std::ostringstream detail;
    detail << tally(s) << ", k=2 exp-form log = "
           << hp_to_string(pinned, 14);
    report("5 chernoff dominance, k in [2,60]", s.ok() && pin_ok, t.seconds(), 0,
           detail.str());
}

void criterion_saddle() {
    Timer t;
    std::vector<SaddleCase> cases;
    for (uint32_t k : {2u, 5u, 10u, 20u, 40u}) cases.push_back({k, DegreeCap::unbounded()});
    QuadratureSpec spec;
    spec.precision_bits = 256;
    const SuiteSummary s = verify_saddle(cases, 1e-6, spec);
    report("6 saddle quadrature, k in {2,5,10,20,40}", s.ok(), t.seconds(), 600, tally(s));
}

void criterion_lemma1() {
    Timer t;
    const SuiteSummary s = verify_lemma1(160);
    report("7 lemma 1 suite", s.ok(), t.seconds(), 120, tally(s));
}

void criterion_landscape() {
    Timer t;
    const SuiteSummary s = verify_landscape(401, {0.25, 0.5, 1.0});
    report("8 contour weight landscape", s.ok(), t.seconds(), 0, tally(s));
}

void criterion_thresholds() {
    Timer t;
    const SuiteSummary s = verify_thresholds(default_trend_sizes(), 0.5, 0.49);
    report("9 threshold trends", s.ok(), t.seconds(), 0, tally(s));
}

void criterion_determinism() {
    Timer t;
    const std::vector<std::string> invocations = {
        "sample --n 30 --k 1 --trials 200 --seed 42",
        "exact --k 15 --no-profiles",
        "verify cayley --kmax 6",
        "thresholds",
        "bound --k 10 --refine --precision 192",
        "integral --k 3 --precision 128",
    };
    bool all_ok = true;
    std::string failed;
    for (const auto& args : invocations) {
        int c1 = 0, c2 = 0, c3 = 0;
        const std::string r1 = run_cli_capture(args, c1);
        const std::string r2 = run_cli_capture(args, c2);
        const std::string r3 = run_cli_capture(args + " --threads 4", c3);
        if (c1 != 0 || c1 != c2 || c1 != c3 || r1 != r2 || r1 != r3 || r1.empty()) {
            all_ok = false;
            failed = args;
            break;
        }
    }
    std::ostringstream detail;
    detail << invocations.size() << " invocations x 3 runs";
    if (!all_ok) detail << ", diverged on: " << failed;
    report("10 cli byte determinism", all_ok, t.seconds(), 0, detail.str());
}

}  // namespace

int main() {
    set_precision_bits(256);
    criterion_cayley();
    criterion_routes();
    criterion_oracle();
    criterion_montecarlo();
    criterion_bounds();
    criterion_saddle();
    criterion_lemma1();
    criterion_landscape();
    criterion_thresholds();
    criterion_determinism();
    std::cout << "acceptance: " << (10 - g_failures) << "/10 passed" << std::endl;
    return g_failures;
}
