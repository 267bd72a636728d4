#include "twintrees/saddle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "twintrees/bessel.hpp"

namespace twintrees {

namespace {

// X_j = x1 x2^j / (j!)^2 for j = 0, 1, ... until the cap, or until the next
// factor could no longer move the accumulated sum at working precision
std::vector<HPReal> factor_arguments(DegreeCap cap, const HPReal& x1, const HPReal& x2) {
    const HPReal floor_mag =
        ldexp(HPReal(1), -static_cast<int>(precision_bits() + 8));
    std::vector<HPReal> xs;
    HPReal x = x1;
    HPReal acc = 0;
    for (uint32_t j = 0;; ++j) {
        if (cap.is_bounded() && j >= *cap.limit) break;
        if (j > 0) {
            x *= x2;
            x /= static_cast<unsigned long>(j) * static_cast<unsigned long>(j);
        }
        // log gf(x) <= 2 sqrt(x), and ~ x once x is small
        if (j > 0 && x <= floor_mag * std::max(HPReal(1), acc)) break;
        xs.push_back(x);
        acc += x;
        if (xs.size() > 100000)
            throw std::runtime_error("factor_arguments: truncation never reached");
    }
    return xs;
}

HPReal log_factorials_squared(uint32_t k) {
    return 2 * (log_of_bigint(factorial(k)) + log_of_bigint(factorial(k - 1)));
}

}  // namespace

SaddleParams SaddleParams::at(uint32_t k) {
    if (k < 2) throw std::domain_error("SaddleParams: k must be >= 2");
    SaddleParams p;
    HPReal kk(static_cast<unsigned long>(k));
    p.x1 = kk * kk * exp(HPReal(-2) * (kk - 1) / kk);
    p.x2 = ((kk - 1) / kk) * ((kk - 1) / kk);
    return p;
}

HPReal chernoff_log_bound_at(uint32_t k, DegreeCap cap, const HPReal& x1,
                             const HPReal& x2) {
    if (k < 2) throw std::domain_error("chernoff_log_bound_at: k must be >= 2");
    if (x1 <= 0 || x2 <= 0)
        throw std::domain_error("chernoff_log_bound_at: evaluation point must be positive");
    HPReal sum = log_factorials_squared(k) - static_cast<unsigned long>(k) * log(x1) -
                 static_cast<unsigned long>(k - 1) * log(x2);
    for (const HPReal& x : factor_arguments(cap, x1, x2))
        sum += gf_log(HPComplex(x)).log_abs;
    return sum;
}

HPReal chernoff_log_bound(uint32_t k, DegreeCap cap, bool refine) {
    SaddleParams p = SaddleParams::at(k);
    HPReal best = chernoff_log_bound_at(k, cap, p.x1, p.x2);
    if (!refine) return best;

    // coordinate descent with multiplicative steps; the objective is smooth
    // and the start is already near-optimal, so shrinking steps suffice
    HPReal x1 = p.x1, x2 = p.x2;
    HPReal step(0.25);
    const HPReal tol = HPReal(1e-10);
    for (int iter = 0; iter < 200; ++iter) {
        bool moved = false;
        for (int coord = 0; coord < 2; ++coord) {
            HPReal& x = coord == 0 ? x1 : x2;
            for (int dir = 0; dir < 2; ++dir) {
                HPReal trial = dir == 0 ? x * (1 + step) : x / (1 + step);
                HPReal saved = x;
                x = trial;
                HPReal v = chernoff_log_bound_at(k, cap, x1, x2);
                if (v < best) {
                    best = v;
                    moved = true;
                } else {
                    x = saved;
                }
            }
        }
        if (!moved) {
            step /= 2;
            if (step < tol * std::max(HPReal(1), abs(best))) break;
        }
    }
    return best;
}

HPReal chernoff_expform_log_bound(uint32_t k, DegreeCap cap) {
    SaddleParams p = SaddleParams::at(k);
    HPReal sum = log_factorials_squared(k) - static_cast<unsigned long>(k) * log(p.x1) -
                 static_cast<unsigned long>(k - 1) * log(p.x2);
    HPReal sq2 = sqrt(p.x2);
    if (!cap.is_bounded()) {
        sum += 2 * sqrt(p.x1) * exp(sq2);
        return sum;
    }
    // partial exponential sum: 2 sqrt(x1) sum_{j < cap} sqrt(x2)^j / j!
    HPReal series = 0, term = HPReal(1);
    for (uint32_t j = 0; j < *cap.limit; ++j) {
        if (j > 0) term *= sq2 / static_cast<unsigned long>(j);
        series += term;
    }
    sum += 2 * sqrt(p.x1) * series;
    return sum;
}

HPReal saddle_integral_log_count(uint32_t k, DegreeCap cap, const QuadratureSpec& spec) {
    if (k < 2) throw std::domain_error("saddle_integral_log_count: k must be >= 2");
    if (spec.nodes_per_axis < 2 || spec.nodes_per_axis % 2 != 0)
        throw std::domain_error("saddle_integral_log_count: nodes_per_axis must be even");
    if (spec.relative_tolerance <= 0 || spec.relative_tolerance >= 1)
        throw std::domain_error("saddle_integral_log_count: tolerance must be in (0,1)");

    PrecisionScope scope(spec.precision_bits ? spec.precision_bits : precision_bits());
    SaddleParams p = SaddleParams::at(k);
    std::vector<HPReal> xs = factor_arguments(cap, p.x1, p.x2);
    const size_t J = xs.size();
    const HPReal pi = hp_pi();

    // peak of the integrand magnitude, attained on the real axis
    HPReal peak_log = 0;
    for (const HPReal& x : xs) peak_log += gf_log(HPComplex(x)).log_abs;

    HPReal front = log_factorials_squared(k) -
                   static_cast<unsigned long>(k) * log(p.x1) -
                   static_cast<unsigned long>(k - 1) * log(p.x2) + peak_log;

    // per-factor tables over the shared angular grid: with nodes at
    // xi_m = -pi + 2 pi m / n, the factor angle xi1 + j xi2 always lands on
    // 2 pi m'/n + (j odd ? 0 : pi) mod 2 pi, so n values per factor suffice
    uint32_t n = std::max<uint32_t>(spec.nodes_per_axis, 8);
    std::vector<std::vector<LogComplex>> table(J);
    auto fill_tables = [&](uint32_t nodes) {
        for (size_t j = 0; j < J; ++j) {
            std::vector<LogComplex> fresh(nodes);
            bool shift = (j % 2 == 0);  // phase offset pi for even j
            for (uint32_t m = 0; m < nodes; ++m) {
                if (!table[j].empty() && m % 2 == 0) {
                    fresh[m] = table[j][m / 2];
                    continue;
                }
                HPReal theta = (2 * pi * m) / nodes;
                if (shift) theta += pi;
                if (theta > pi) theta -= 2 * pi;
                fresh[m] = gf_log(polar(xs[j], theta));
            }
            table[j] = std::move(fresh);
        }
    };

    auto torus_mean = [&](uint32_t nodes) -> HPComplex {
        HPComplex sum;
        HPReal two_pi_over = (2 * pi) / nodes;
        for (uint32_t a = 0; a < nodes; ++a) {
            HPReal xi1 = two_pi_over * a - pi;
            for (uint32_t b = 0; b < nodes; ++b) {
                HPReal xi2 = two_pi_over * b - pi;
                HPReal re = 0, im = 0;
                uint64_t idx = a;
                for (size_t j = 0; j < J; ++j) {
                    const LogComplex& c = table[j][idx % nodes];
                    re += c.log_abs;
                    im += c.angle;
                    idx += b;
                }
                im -= static_cast<unsigned long>(k) * xi1 +
                      static_cast<unsigned long>(k - 1) * xi2;
                HPReal mag = exp(re - peak_log);
                sum.re += mag * cos(im);
                sum.im += mag * sin(im);
            }
        }
        HPReal scale = HPReal(1) / (static_cast<uint64_t>(nodes) * nodes);
        return {sum.re * scale, sum.im * scale};
    };

    fill_tables(n);
    HPComplex mean = torus_mean(n);
    HPReal prev_val;
    bool have_prev = false;
    for (;;) {
        if (mean.re > 0) {
            HPReal val = front + log(mean.re);
            if (have_prev) {
                HPReal diff = abs(val - prev_val);
                if (diff <= HPReal(spec.relative_tolerance) * abs(val)) {
                    // conjugate-symmetric grid: surviving imaginary mass
                    // signals an inconsistent sum
                    if (abs(mean.im) > HPReal(1e-10) * abs(mean.re)) {
                        std::ostringstream os;
                        os << "saddle_integral_log_count: k=" << k
                           << " imaginary part " << hp_to_string(mean.im, 8)
                           << " vs real " << hp_to_string(mean.re, 8);
                        throw std::runtime_error(os.str());
                    }
                    return val;
                }
            }
            prev_val = val;
            have_prev = true;
        } else {
            have_prev = false;
        }
        if (n * 2 > spec.max_nodes_per_axis) {
            std::ostringstream os;
            os << "saddle_integral_log_count: no convergence for k=" << k
               << " within " << spec.max_nodes_per_axis << " nodes per axis; last value "
               << (have_prev ? hp_to_string(prev_val, 12) : std::string("n/a"));
            throw std::runtime_error(os.str());
        }
        n *= 2;
        fill_tables(n);
        mean = torus_mean(n);
    }
}

}  // namespace twintrees
