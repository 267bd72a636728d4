#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <utility>

namespace {

struct CliResult {
    int code;
    std::string out;
};

CliResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    std::string cmd;
    if (!env_prefix.empty()) cmd += env_prefix + " ";
    cmd += TWINTREES_CLI_PATH;
    cmd += " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[1 << 14];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string last_line(const std::string& out) {
    size_t end = out.size();
    while (end > 0 && out[end - 1] == '\n') --end;
    const size_t start = out.rfind('\n', end - 1);
    return out.substr(start == std::string::npos ? 0 : start + 1, end - start - 1);
}

double field_value(const std::string& line, const std::string& field) {
    const std::string needle = "\"" + field + "\":";
    const size_t pos = line.find(needle);
    REQUIRE(pos != std::string::npos);
    std::string tail = line.substr(pos + needle.size());
    if (!tail.empty() && tail.front() == '"') tail.erase(0, 1);
    return std::strtod(tail.c_str(), nullptr);
}

}  // namespace

TEST_CASE("cli: exact N(3) and the profile table") {
    const auto r = run_cli("exact --k 3");
    CHECK(r.code == 0);
    CHECK(r.out.find("\"N\":\"45\"") != std::string::npos);
    CHECK(r.out.find("\"profile\":\"(1,2)\"") != std::string::npos);
    CHECK(r.out.find("\"trees\":\"6\"") != std::string::npos);
    CHECK(r.out.find("\"profile\":\"(2,0,1)\"") != std::string::npos);
    CHECK(r.out.find("\"trees\":\"3\"") != std::string::npos);
    CHECK(r.out.find("\"profiles\":\"2\"") != std::string::npos);
}

TEST_CASE("cli: exact host counts at n=5, k=1") {
    const auto r = run_cli("exact --n 5 --k 1");
    CHECK(r.code == 0);
    CHECK(r.out.find("\"S\":\"1620\"") != std::string::npos);
    CHECK(r.out.find("\"m\":\"1620/625\"") != std::string::npos);
    CHECK(r.out.find("\"m_lowest_terms\":\"324/125\"") != std::string::npos);
}

TEST_CASE("cli: exact rejects n <= 2k") {
    const auto r = run_cli("exact --n 4 --k 2");
    CHECK(r.code == 2);
    CHECK(r.out.find("n must exceed 2k") != std::string::npos);
}

TEST_CASE("cli: sample mean approaches the exact expectation") {
    const auto r = run_cli("sample --n 3 --k 1 --trials 100000 --seed 7 --no-per-tree");
    CHECK(r.code == 0);
    const std::string line = last_line(r.out);
    CHECK(std::abs(field_value(line, "mean") - 2.0 / 3.0) < 0.02);
    CHECK(field_value(line, "std_error") > 0);
    CHECK(line.find("\"seed\":7") != std::string::npos);
}

TEST_CASE("cli: sample runs are byte-deterministic and thread-blind") {
    const std::string cmd = "sample --n 40 --k 2 --trials 50 --seed 12345";
    const auto a = run_cli(cmd);
    const auto b = run_cli(cmd);
    const auto c = run_cli(cmd + " --threads 4");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    CHECK(a.out.find("\"twins\":") != std::string::npos);
}

TEST_CASE("cli: sample max-twin report drops the census") {
    const auto r = run_cli("sample --n 50 --trials 5 --seed 3 --report max-twin");
    CHECK(r.code == 0);
    CHECK(r.out.find("\"max_twin_size\":") != std::string::npos);
    CHECK(r.out.find("\"twins\":") == std::string::npos);
}

TEST_CASE("cli: single-tree sample leaves the error bar null") {
    const auto r = run_cli("sample --n 6 --trials 1 --seed 9");
    CHECK(r.code == 0);
    CHECK(last_line(r.out).find("\"std_error\":null") != std::string::npos);
}

TEST_CASE("cli: verify suites pass on small instances") {
    const auto cayley = run_cli("verify cayley --kmax 8");
    CHECK(cayley.code == 0);
    CHECK(last_line(cayley.out).find("\"pass\":true") != std::string::npos);
    const auto oracle = run_cli("verify oracle --nmax 5");
    CHECK(oracle.code == 0);
    const auto routes = run_cli("verify routes --kmax 10");
    CHECK(routes.code == 0);
    const auto saddle = run_cli("verify saddle --k 2 --tol 1e-6 --precision 128");
    CHECK(saddle.code == 0);
}

TEST_CASE("cli: verify rejects unknown suites") {
    CHECK(run_cli("verify nope").code == 2);
}

TEST_CASE("cli: thresholds tables in json and csv") {
    const auto j = run_cli("thresholds --n 1000 --n 1000000");
    CHECK(j.code == 0);
    CHECK(j.out.find("\"upper_threshold\":") != std::string::npos);
    CHECK(j.out.find("\"up_to_additive_o1\":true") != std::string::npos);
    const auto c = run_cli("thresholds --n 1000 --csv");
    CHECK(c.code == 0);
    CHECK(c.out.rfind("n,delta,eps2,upper_threshold,lower_threshold,part_a_log,part_b_log\n",
                      0) == 0);
    CHECK(c.out.find("{") == std::string::npos);
    const auto bad = run_cli("thresholds --delta 2.5");
    CHECK(bad.code == 2);
}

TEST_CASE("cli: precision resolution order is flag, env, default") {
    const auto dflt = run_cli("bound --k 5");
    CHECK(dflt.code == 0);
    CHECK(dflt.out.find("\"precision_bits\":256") != std::string::npos);
    const auto env = run_cli("bound --k 5", "TWIN_PRECISION_BITS=128");
    CHECK(env.code == 0);
    CHECK(env.out.find("\"precision_bits\":128") != std::string::npos);
    const auto flag = run_cli("bound --k 5 --precision 192", "TWIN_PRECISION_BITS=128");
    CHECK(flag.code == 0);
    CHECK(flag.out.find("\"precision_bits\":192") != std::string::npos);
    const auto junk = run_cli("bound --k 5", "TWIN_PRECISION_BITS=abc");
    CHECK(junk.code == 2);
}

TEST_CASE("cli: bound refinement never raises the bound") {
    const auto plain = run_cli("bound --k 10");
    const auto refined = run_cli("bound --k 10 --refine");
    CHECK(plain.code == 0);
    CHECK(refined.code == 0);
    CHECK(field_value(last_line(refined.out), "value_log") <=
          field_value(last_line(plain.out), "value_log") + 1e-9);
    CHECK(plain.out.find("\"upper_bound\":true") != std::string::npos);
}

TEST_CASE("cli: integral recovers log N(2) and evaluates the generating function") {
    const auto count = run_cli("integral --k 2 --precision 128");
    CHECK(count.code == 0);
    CHECK(std::abs(field_value(last_line(count.out), "value_log") - std::log(4.0)) < 1e-6);
    const auto gf = run_cli("integral --z-re 1 --precision 128");
    CHECK(gf.code == 0);
    CHECK(std::abs(field_value(last_line(gf.out), "value_log") -
                   std::log(2.2795853023360673)) < 1e-9);
    const auto both = run_cli("integral --k 2 --z-re 1");
    CHECK(both.code == 2);
    const auto neither = run_cli("integral");
    CHECK(neither.code == 2);
}

TEST_CASE("cli: usage errors and help") {
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("").code == 2);
    CHECK(run_cli("exact").code == 2);
    CHECK(run_cli("exact --k 0").code == 2);
    CHECK(run_cli("nonsense --k 3").code == 2);
}

TEST_CASE("cli: exact output is byte-deterministic across threads") {
    const auto a = run_cli("exact --k 12 --no-profiles");
    const auto b = run_cli("exact --k 12 --no-profiles --threads 4");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}
