#include "weakkam/mather.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <set>

namespace weakkam {

ConjugatePair conjugate_pair(const ActionKernel& k, double tol, int max_iter,
                             const GridFunction& seed) {
    ConjugatePair pair;
    pair.backward = solve_weak_kam(k, Direction::Backward, seed, tol, max_iter);
    pair.forward = solve_weak_kam(k, Direction::Forward, pair.backward.u, tol, max_iter);
    const double gap_c = std::abs(pair.backward.c_est - pair.forward.c_est);
    if (gap_c > 2.0 * tol / k.dt()) {
        throw ConsistencyError(
            fmt::format("conjugate_pair: backward c {} and forward c {} disagree by {}",
                        pair.backward.c_est, pair.forward.c_est, gap_c),
            pair.backward.c_est, pair.forward.c_est);
    }
    pair.u_minus = pair.backward.u;
    pair.u_plus = pair.forward.u;
    pair.c = pair.backward.c_est;

    double min_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < pair.u_minus.size(); ++i) {
        min_gap = std::min(min_gap, pair.u_minus[i] - pair.u_plus[i]);
    }
    std::vector<double> gap(pair.u_minus.size());
    for (int i = 0; i < pair.u_minus.size(); ++i) {
        pair.u_plus[i] += min_gap;
        gap[i] = pair.u_minus[i] - pair.u_plus[i];
        if (gap[i] < -1e-10) {
            throw ConsistencyError(
                fmt::format("conjugate_pair: aligned gap is negative ({}) at index {}", gap[i], i),
                pair.backward.c_est, pair.forward.c_est);
        }
        if (gap[i] < 0.0) gap[i] = 0.0;  // rounding of the aligned minimum
    }
    pair.gap = GridFunction(k.grid(), std::move(gap));
    return pair;
}

ConjugatePair conjugate_pair(const ActionKernel& k, double tol, int max_iter) {
    return conjugate_pair(k, tol, max_iter, GridFunction(k.grid(), 0.0));
}

bool MatherSetApprox::contains(int idx) const {
    return std::binary_search(points.begin(), points.end(), idx);
}

MatherSetApprox mather_set_approx(const ConjugatePair& pair, const ActionKernel& k, double tol) {
    std::set<int> pts;
    for (int i = 0; i < pair.gap.size(); ++i) {
        if (pair.gap[i] <= tol) pts.insert(i);
    }
    const auto cycle = karp_min_mean_cycle(k);
    for (int idx : cycle.cycle) pts.insert(idx);
    MatherSetApprox out;
    out.points.assign(pts.begin(), pts.end());
    out.tol = tol;
    return out;
}

double gradient_consistency(const ConjugatePair& pair, const LagrangianModel& model,
                            const std::vector<int>& cycle, const ActionKernel& k) {
    if (cycle.size() < 2) throw ConfigError("gradient_consistency: empty cycle");
    const PeriodicGrid& g = k.grid();
    const int d = g.ndim();
    double worst = 0.0;
    std::vector<double> v(d), grad_u(d);
    std::vector<int> step(d, 0);
    for (std::size_t e = 0; e + 1 < cycle.size(); ++e) {
        const int y = cycle[e], x = cycle[e + 1];
        const auto disp = g.wrap_displacement(y, x);
        for (int i = 0; i < d; ++i) v[i] = disp[i] / k.dt();
        const auto pos = g.position(x);
        const auto dl_dv = model.velocity_gradient(pos, v);
        for (int i = 0; i < d; ++i) {
            std::fill(step.begin(), step.end(), 0);
            step[i] = 1;
            const int hi = g.shifted(x, step);
            step[i] = -1;
            const int lo = g.shifted(x, step);
            grad_u[i] = (pair.u_minus[hi] - pair.u_minus[lo]) / (2.0 * g.spacing(i));
            worst = std::max(worst, std::abs(grad_u[i] - dl_dv[i]));
        }
    }
    return worst;
}

}  // namespace weakkam
