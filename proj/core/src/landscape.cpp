#include "twintrees/landscape.hpp"

#include <sstream>
#include <stdexcept>

namespace twintrees {

HPReal contour_weight(const HPReal& xi1, const HPReal& xi2, const HPReal& x2) {
    if (x2 <= 0) throw std::domain_error("contour_weight: x2 must be positive");
    HPReal s = sqrt(x2);
    return cos(xi1 / 2 + s * sin(xi2 / 2)) * exp(s * cos(xi2 / 2));
}

namespace {

void check_close(const char* what, const HPReal& analytic, const HPReal& observed) {
    HPReal scale = abs(analytic);
    if (scale == 0) scale = 1;
    if (abs(analytic - observed) > HPReal(1e-6) * scale) {
        std::ostringstream os;
        os << "contour_weight_hessian_origin: " << what << " mismatch, analytic "
           << hp_to_string(analytic, 12) << " vs " << hp_to_string(observed, 12);
        throw std::runtime_error(os.str());
    }
}

}  // namespace

WeightHessian contour_weight_hessian_origin(const HPReal& x2) {
    if (x2 <= 0)
        throw std::domain_error("contour_weight_hessian_origin: x2 must be positive");
    HPReal s = sqrt(x2);
    HPReal es = exp(s);

    WeightHessian h;
    h.h11 = -es / 4;
    h.h12 = -s * es / 4;
    h.h22 = -(x2 + s) * es / 4;
    h.det = h.h11 * h.h22 - h.h12 * h.h12;

    // central second differences; a quarter of the mantissa as step keeps
    // truncation (~step^2) and cancellation (~2^-bits/step^2) both far
    // inside the 1e-6 gate at any working precision
    HPReal step = ldexp(HPReal(1), -static_cast<int>(precision_bits() / 4));
    HPReal w00 = contour_weight(HPReal(0), HPReal(0), x2);
    HPReal wpp = contour_weight(step, step, x2);
    HPReal wpm = contour_weight(step, -step, x2);
    HPReal wmp = contour_weight(-step, step, x2);
    HPReal wmm = contour_weight(-step, -step, x2);
    HPReal wp0 = contour_weight(step, HPReal(0), x2);
    HPReal wm0 = contour_weight(-step, HPReal(0), x2);
    HPReal w0p = contour_weight(HPReal(0), step, x2);
    HPReal w0m = contour_weight(HPReal(0), -step, x2);

    HPReal fd11 = (wp0 - 2 * w00 + wm0) / (step * step);
    HPReal fd22 = (w0p - 2 * w00 + w0m) / (step * step);
    HPReal fd12 = (wpp - wpm - wmp + wmm) / (4 * step * step);

    check_close("h11", h.h11, fd11);
    check_close("h22", h.h22, fd22);
    check_close("h12", h.h12, fd12);
    check_close("det", s * exp(2 * s) / 16, h.det);
    return h;
}

}  // namespace twintrees
