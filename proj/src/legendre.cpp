#include "weakkam/legendre.hpp"

#include <algorithm>
#include <fmt/format.h>

namespace weakkam {

LegendreResult legendre_transform(const std::vector<double>& f, double p0, double dp,
                                  const std::vector<double>& v) {
    const int n = static_cast<int>(f.size());
    if (n < 3) throw ConfigError("legendre_transform: need at least 3 samples");
    if (!(dp > 0.0)) throw ConfigError("legendre_transform: dp must be positive");
    if (!std::is_sorted(v.begin(), v.end())) {
        throw ConfigError("legendre_transform: targets must be sorted ascending");
    }

    // Lower convex hull of the epigraph samples (p_j, f_j). Samples are
    // already sorted in p, so one monotone stack pass suffices.
    std::vector<int> hull;
    hull.reserve(f.size());
    auto keeps_convex = [&](int a, int b, int c) {
        // slope(a,b) < slope(b,c)  <=>  (f_b - f_a)(c - b) < (f_c - f_b)(b - a)
        return (f[b] - f[a]) * (c - b) < (f[c] - f[b]) * (b - a);
    };
    for (int j = 0; j < n; ++j) {
        while (hull.size() >= 2 && !keeps_convex(hull[hull.size() - 2], hull.back(), j)) {
            hull.pop_back();
        }
        hull.push_back(j);
    }

    LegendreResult out;
    out.values.reserve(v.size());
    out.argmax.reserve(v.size());
    std::size_t h = 0;  // advances monotonically with v
    for (double target : v) {
        // Move to the hull vertex whose supporting slopes bracket `target`.
        while (h + 1 < hull.size()) {
            const int a = hull[h], b = hull[h + 1];
            const double slope = (f[b] - f[a]) / (dp * (b - a));
            if (slope < target) ++h; else break;
        }
        const int j = hull[h];
        if (j == 0 || j == n - 1) {
            throw RangeError(fmt::format(
                "legendre_transform: sup for v={} attained on the sample boundary; widen the p-range",
                target));
        }
        out.values.push_back(target * (p0 + j * dp) - f[j]);
        out.argmax.push_back(j);
    }
    return out;
}

}  // namespace weakkam
