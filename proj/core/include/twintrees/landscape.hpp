#pragma once

#include "twintrees/hp.hpp"

namespace twintrees {

// slow-varying weight of the contour integrand along the torus,
//   W(xi1, xi2) = cos(xi1/2 + sqrt(x2) sin(xi2/2)) * exp(sqrt(x2) cos(xi2/2)),
// whose strict maximum at the origin pins the saddle; x2 > 0
HPReal contour_weight(const HPReal& xi1, const HPReal& xi2, const HPReal& x2);

struct WeightHessian {
    HPReal h11, h12, h22;  // second derivatives at the origin
    HPReal det;
};

// analytic Hessian of contour_weight at the origin (s = sqrt(x2)):
//   h11 = -e^s/4, h12 = -s e^s/4, h22 = -(x2 + s) e^s/4, det = s e^{2s}/16;
// each entry is re-derived by central finite differences and the determinant
// recomputed from the entries; disagreement beyond 1e-6 relative throws
WeightHessian contour_weight_hessian_origin(const HPReal& x2);

}  // namespace twintrees
