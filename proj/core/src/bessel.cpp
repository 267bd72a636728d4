#include "twintrees/bessel.hpp"

#include <cmath>
#include <stdexcept>

namespace twintrees {

namespace {

// rounds into a fresh value carrying the ambient precision
HPReal to_ambient(const HPReal& x) {
    HPReal y;
    mpfr_set(y.backend().data(), x.backend().data(), MPFR_RNDN);
    return y;
}

double default_tol(double relative_tolerance) {
    if (relative_tolerance > 0) return relative_tolerance;
    return std::ldexp(1.0, -static_cast<int>(precision_bits() / 2 + 8));
}

}  // namespace

LogComplex gf_series_log(const HPComplex& z) {
    if (z.re == 0 && z.im == 0) return {HPReal(0), HPReal(0)};

    const unsigned ambient = precision_bits();
    double zmag = static_cast<double>(abs(z));
    bool positive_axis = (z.im == 0 && z.re > 0);
    // all terms of the positive-axis series add; otherwise budget for the
    // peak-term cancellation of roughly 2 sqrt|z| log2(e) bits
    unsigned boost = positive_axis
                         ? 0
                         : static_cast<unsigned>(2.0 * std::sqrt(zmag) * 1.4427) + 8;
    PrecisionScope scope(ambient + boost + 64);

    HPComplex zz(to_ambient(z.re), to_ambient(z.im));
    HPComplex term(HPReal(1), HPReal(0));
    HPComplex sum = term;
    HPReal peak = 1;
    const HPReal floor_mag = ldexp(HPReal(1), -static_cast<int>(ambient + boost + 32));
    const uint64_t rmin = static_cast<uint64_t>(std::sqrt(zmag)) + 4;
    const uint64_t rmax = 8 * rmin + 16 * (ambient + boost) + 64;
    for (uint64_t r = 1;; ++r) {
        term *= zz;
        HPReal r2(static_cast<unsigned long>(r));
        r2 *= r2;
        term.re /= r2;
        term.im /= r2;
        sum += term;
        HPReal mag = twintrees::abs(term);
        if (mag > peak) peak = mag;
        if (r >= rmin && mag <= peak * floor_mag) break;
        if (r > rmax)
            throw std::runtime_error("gf_series_log: series failed to settle");
    }
    LogComplex out = LogComplex::from_complex(sum);
    return {to_ambient(out.log_abs), to_ambient(out.angle)};
}

LogComplex bessel_i0_log(const HPComplex& w, double relative_tolerance) {
    if (w.re < 0)
        throw std::domain_error("bessel_i0_log: requires Re w >= 0");
    if (w.re == 0 && w.im == 0) return {HPReal(0), HPReal(0)};

    const double tol = default_tol(relative_tolerance);
    const unsigned ambient = precision_bits();
    PrecisionScope scope(ambient + 64);

    const HPReal pi = hp_pi();
    HPComplex w2(to_ambient(w.re) * 2, to_ambient(w.im) * 2);
    // integrand exp(-2w (1 - cos t)); magnitude <= 1 on [0, pi] since Re w >= 0
    auto f = [&](const HPReal& t) -> HPComplex {
        HPReal oneminus = 1 - cos(t);
        HPReal ex = exp(-w2.re * oneminus);
        HPReal ph = -w2.im * oneminus;
        return {ex * cos(ph), ex * sin(ph)};
    };

    uint32_t n = 8;
    HPReal h = pi / n;
    HPComplex total = f(HPReal(0));
    {
        HPComplex end = f(pi);
        total.re = (total.re + end.re) / 2;
        total.im = (total.im + end.im) / 2;
        for (uint32_t i = 1; i < n; ++i) total += f(h * i);
    }
    HPComplex integral(total.re * h, total.im * h);

    const uint32_t max_n = 1u << 24;
    int stable = 0;
    while (true) {
        // refine with the odd nodes of the doubled grid
        HPReal h2 = h / 2;
        HPComplex odds(HPReal(0), HPReal(0));
        for (uint32_t i = 0; i < n; ++i) odds += f(h2 * (2 * i + 1));
        HPComplex refined((integral.re / 2) + odds.re * h2,
                          (integral.im / 2) + odds.im * h2);
        n *= 2;
        h = h2;
        HPReal diff = twintrees::abs(HPComplex(refined.re - integral.re,
                                               refined.im - integral.im));
        HPReal scale = twintrees::abs(refined);
        integral = refined;
        if (scale > 0 && diff <= scale * HPReal(tol)) {
            if (++stable >= 2) break;
        } else {
            stable = 0;
        }
        if (n > max_n)
            throw std::runtime_error("bessel_i0_log: trapezoid failed to converge");
    }

    if (twintrees::abs(integral) == 0)
        throw std::runtime_error("bessel_i0_log: vanishing arc integral");
    LogComplex arc = LogComplex::from_complex(integral);
    HPReal log_abs = w2.re + arc.log_abs - log(pi);
    HPReal angle = w2.im + arc.angle;
    return {to_ambient(log_abs), to_ambient(angle)};
}

LogComplex gf_integral_log(const HPComplex& z, double relative_tolerance) {
    if (z.re == 0 && z.im == 0) return {HPReal(0), HPReal(0)};
    return bessel_i0_log(sqrt_principal(z), relative_tolerance);
}

LogComplex gf_log(const HPComplex& z, double relative_tolerance, double series_cutoff) {
    if (z.im == 0 && z.re >= 0)
        return gf_series_log(z);  // positive coefficients, no cancellation
    double zmag = static_cast<double>(abs(z));
    if (zmag <= series_cutoff) return gf_series_log(z);
    return gf_integral_log(z, relative_tolerance);
}

std::vector<HPComplex> envelope_grid(size_t magnitudes, size_t phases,
                                     double mag_lo, double mag_hi) {
    if (magnitudes < 2 || phases < 1 || mag_lo <= 0 || mag_hi <= mag_lo)
        throw std::domain_error("envelope_grid: malformed grid request");
    std::vector<HPComplex> grid;
    grid.reserve(magnitudes * phases + 1);
    grid.emplace_back(HPReal(0), HPReal(0));
    HPReal pi = hp_pi();
    HPReal llo = log(HPReal(mag_lo)), lhi = log(HPReal(mag_hi));
    for (size_t i = 0; i < magnitudes; ++i) {
        HPReal mag = exp(llo + (lhi - llo) * static_cast<unsigned long>(i) /
                                   static_cast<unsigned long>(magnitudes - 1));
        for (size_t p = 1; p <= phases; ++p) {
            // phases sweep (-pi, pi], landing exactly on pi
            HPReal angle = -pi + (2 * pi * static_cast<unsigned long>(p)) /
                                     static_cast<unsigned long>(phases);
            grid.push_back(polar(mag, angle));
        }
    }
    return grid;
}

EnvelopeReport validate_envelope(const std::vector<HPComplex>& grid, const HPReal& alpha) {
    if (grid.empty()) throw std::domain_error("validate_envelope: empty grid");

    struct PointData {
        HPReal log_gf, exps, quarter_log;
        bool unit_or_more;
        bool origin;
    };
    std::vector<PointData> pts;
    pts.reserve(grid.size());
    bool have_hat = false;
    HPReal hat_log = 0;
    for (const auto& z : grid) {
        PointData p;
        p.log_gf = gf_log(z).log_abs;
        p.exps = 2 * sqrt_principal(z).re;
        HPReal mag = twintrees::abs(z);
        p.origin = (mag == 0);
        p.quarter_log = p.origin ? HPReal(0) : log(mag) / 4;
        p.unit_or_more = (mag >= 1);
        if (p.unit_or_more) {
            HPReal ratio_log = p.exps - p.log_gf - p.quarter_log;
            if (!have_hat || ratio_log < hat_log) {
                hat_log = ratio_log;
                have_hat = true;
            }
        }
        pts.push_back(std::move(p));
    }
    if (!have_hat)
        throw std::domain_error("validate_envelope: grid needs points with |z| >= 1");

    EnvelopeReport rep;
    rep.alpha_hat = exp(hat_log);
    // the empirical constant sits exactly on its binding grid point, so the
    // self-test shades it to strictly inside the envelope
    rep.alpha_tested = (alpha > 0) ? alpha : HPReal(rep.alpha_hat * (1 - HPReal(1e-6)));
    rep.grid_points = grid.size();
    HPReal log_alpha = log(rep.alpha_tested);
    bool first = true;
    for (size_t i = 0; i < pts.size(); ++i) {
        const auto& p = pts[i];
        // max(1, alpha |z|^{1/4}) in logs; the origin always takes the 1 branch
        HPReal damp = p.origin ? HPReal(0) : log_alpha + p.quarter_log;
        if (damp < 0) damp = 0;
        HPReal margin = p.exps - damp - p.log_gf;
        if (first || margin < rep.worst_margin_log) {
            rep.worst_margin_log = margin;
            rep.worst_z = grid[i];
            first = false;
        }
        if (margin < 0) ++rep.violations;
    }
    rep.pass = (rep.violations == 0);
    return rep;
}

}  // namespace twintrees
