#pragma once

#include <vector>

#include "weakkam/errors.hpp"

namespace weakkam {

struct LegendreResult {
    std::vector<double> values;  // g(v) = sup_p [p v - f(p)] at the requested v
    std::vector<int> argmax;     // index of the attaining sample per v
};

/// Discrete Legendre-Fenchel conjugate of samples f(p_j), p_j = p0 + j*dp,
/// evaluated at the sorted targets `v`. Runs in O(n + |v|) past the initial
/// lower-hull sweep. Throws RangeError when the sup is attained on the first
/// or last sample, which means the p-range is too small for that v.
LegendreResult legendre_transform(const std::vector<double>& f, double p0, double dp,
                                  const std::vector<double>& v);

}  // namespace weakkam
