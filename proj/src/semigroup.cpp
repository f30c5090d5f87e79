#include "weakkam/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <map>
#include <numeric>

namespace weakkam {

namespace {

double offset_norm(const PeriodicGrid& grid, std::span<const int> o) {
    double s = 0.0;
    for (int i = 0; i < grid.ndim(); ++i) {
        const double d = o[i] * grid.spacing(i);
        s += d * d;
    }
    return std::sqrt(s);
}

// Enumerate all per-axis offsets within `band`, in lexicographic order.
std::vector<std::vector<int>> enumerate_box(const std::vector<int>& band) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(band.size(), 0);
    for (std::size_t i = 0; i < band.size(); ++i) cur[i] = -band[i];
    while (true) {
        out.push_back(cur);
        int axis = static_cast<int>(band.size()) - 1;
        while (axis >= 0) {
            if (++cur[axis] <= band[axis]) break;
            cur[axis] = -band[axis];
            --axis;
        }
        if (axis < 0) break;
    }
    return out;
}

}  // namespace

void ActionKernel::finalize() {
    const int V = grid_.size();
    std::map<std::vector<int>, int> index;
    for (int k = 0; k < offset_count(); ++k) index[offsets_[k]] = k;

    source_.assign(offset_count(), std::vector<int>(V));
    negated_.assign(offset_count(), -1);
    boundary_.assign(offset_count(), false);
    for (int k = 0; k < offset_count(); ++k) {
        for (int x = 0; x < V; ++x) source_[k][x] = grid_.shifted(x, offsets_[k]);
        std::vector<int> neg(offsets_[k]);
        for (int& o : neg) o = -o;
        auto it = index.find(neg);
        if (it == index.end()) {
            throw ConfigError("kernel band is not symmetric under offset negation");
        }
        negated_[k] = it->second;
        // Boundary: growing the offset by one cell on some axis leaves the band.
        std::vector<int> probe(offsets_[k]);
        for (int i = 0; i < grid_.ndim() && !boundary_[k]; ++i) {
            for (int s : {-1, 1}) {
                probe[i] = offsets_[k][i] + s;
                if (std::abs(probe[i]) >= std::abs(offsets_[k][i]) && !index.contains(probe)) {
                    boundary_[k] = true;
                    break;
                }
            }
            probe[i] = offsets_[k][i];
        }
    }
}

std::optional<int> ActionKernel::find_offset(std::span<const int> o) const {
    for (int k = 0; k < offset_count(); ++k) {
        if (std::equal(o.begin(), o.end(), offsets_[k].begin())) return k;
    }
    return std::nullopt;
}

std::optional<int> ActionKernel::find_edge(int y, int x) const {
    auto mx = grid_.multi(x);
    auto my = grid_.multi(y);
    std::vector<int> o(grid_.ndim());
    for (int i = 0; i < grid_.ndim(); ++i) {
        const int n = grid_.dims()[i];
        int d = (my[i] - mx[i]) % n;
        if (d < 0) d += n;
        o[i] = (2 * d <= n) ? d : d - n;
    }
    return find_offset(o);
}

ActionKernel ActionKernel::from_parts(PeriodicGrid grid, double dt, double vmax,
                                      std::vector<std::vector<int>> offsets,
                                      std::vector<std::vector<double>> cost) {
    if (!(dt > 0.0)) throw ConfigError("kernel: dt must be positive");
    if (offsets.size() != cost.size() || offsets.empty()) {
        throw ConfigError("kernel: offsets and cost tables must match and be non-empty");
    }
    ActionKernel k;
    k.grid_ = std::move(grid);
    k.dt_ = dt;
    k.vmax_ = vmax;
    k.offsets_ = std::move(offsets);
    k.cost_ = std::move(cost);
    for (const auto& c : k.cost_) {
        if (static_cast<int>(c.size()) != k.grid_.size()) {
            throw DimensionError("kernel: cost row size mismatch");
        }
        for (double h : c) {
            if (!std::isfinite(h)) throw ModelError("kernel holds a non-finite action");
        }
    }
    bool has_self = false;
    for (const auto& o : k.offsets_) {
        has_self |= std::all_of(o.begin(), o.end(), [](int v) { return v == 0; });
    }
    if (!has_self) throw ConfigError("kernel: missing self-loop offset");
    k.finalize();
    return k;
}

ActionKernel build_kernel(const LagrangianModel& model, const PeriodicGrid& grid,
                          double dt, double vmax, ActionRule rule) {
    if (!(dt > 0.0)) throw ConfigError("build_kernel: dt must be positive");
    if (model.ndim() != grid.ndim()) throw DimensionError("build_kernel: model/grid dimension mismatch");
    const int d = grid.ndim();
    std::vector<int> band(d);
    bool any_neighbor = false;
    for (int i = 0; i < d; ++i) {
        band[i] = static_cast<int>(std::floor(vmax * dt / grid.spacing(i) + 1e-12));
        band[i] = std::min(band[i], (grid.dims()[i] - 1) / 2);
        any_neighbor |= band[i] > 0;
    }
    if (!any_neighbor) {
        throw ConfigError(fmt::format(
            "build_kernel: band empty beyond self-loops (vmax*dt = {} below the grid spacing)",
            vmax * dt));
    }

    const int V = grid.size();
    std::vector<std::vector<int>> offsets;
    std::vector<std::vector<double>> cost;
    std::vector<double> x(d), v(d), xe(d);
    for (auto& o : enumerate_box(band)) {
        if (offset_norm(grid, o) > vmax * dt * (1.0 + 1e-12)) continue;
        std::vector<double> row(V);
        for (int p = 0; p < V; ++p) {
            auto pos = grid.position(p);
            // displacement from source y = p + o to target p
            for (int i = 0; i < d; ++i) {
                const double disp = -o[i] * grid.spacing(i);
                v[i] = disp / dt;
                xe[i] = (rule == ActionRule::Midpoint) ? pos[i] - 0.5 * disp : pos[i];
            }
            row[p] = dt * model.eval(xe, v);
        }
        offsets.push_back(std::move(o));
        cost.push_back(std::move(row));
    }
    return ActionKernel::from_parts(grid, dt, vmax, std::move(offsets), std::move(cost));
}

GridFunction apply_backward(const GridFunction& u, const ActionKernel& k) {
    if (!(u.grid() == k.grid())) throw DimensionError("apply_backward: grid mismatch");
    const int V = u.size();
    std::vector<double> ov(V, std::numeric_limits<double>::infinity());
    const auto& uv = u.values();
    for (int kk = 0; kk < k.offset_count(); ++kk) {
        const auto& src = k.source(kk);
        const auto& c = k.cost(kk);
        for (int p = 0; p < V; ++p) {
            const double cand = uv[src[p]] + c[p];
            if (cand < ov[p]) ov[p] = cand;
        }
    }
    return GridFunction(k.grid(), std::move(ov));
}

GridFunction apply_forward(const GridFunction& u, const ActionKernel& k) {
    if (!(u.grid() == k.grid())) throw DimensionError("apply_forward: grid mismatch");
    const int V = u.size();
    std::vector<double> ov(V, -std::numeric_limits<double>::infinity());
    const auto& uv = u.values();
    for (int kk = 0; kk < k.offset_count(); ++kk) {
        // y = x - o_k; h(x,y) = cost[k][y]
        const auto& src = k.source(k.negated(kk));
        const auto& c = k.cost(kk);
        for (int p = 0; p < V; ++p) {
            const int y = src[p];
            const double cand = uv[y] - c[y];
            if (cand > ov[p]) ov[p] = cand;
        }
    }
    return GridFunction(k.grid(), std::move(ov));
}

GridFunction apply(const GridFunction& u, const ActionKernel& k, Direction dir) {
    return dir == Direction::Backward ? apply_backward(u, k) : apply_forward(u, k);
}

ActionKernel compose_kernel(const ActionKernel& k) {
    const PeriodicGrid& grid = k.grid();
    const int d = grid.ndim();
    const int V = grid.size();

    std::vector<int> band(d, 0);
    for (int kk = 0; kk < k.offset_count(); ++kk) {
        for (int i = 0; i < d; ++i) band[i] = std::max(band[i], std::abs(k.offset(kk)[i]));
    }
    for (int i = 0; i < d; ++i) {
        if (2 * (2 * band[i]) >= grid.dims()[i]) {
            throw ConfigError(fmt::format(
                "compose_kernel: composed band {} overflows axis {} ({} points)",
                2 * band[i], i, grid.dims()[i]));
        }
    }

    // Group offset pairs by their sum.
    std::map<std::vector<int>, std::vector<std::pair<int, int>>> pairs;
    std::vector<int> sum(d);
    for (int a = 0; a < k.offset_count(); ++a) {
        for (int b = 0; b < k.offset_count(); ++b) {
            for (int i = 0; i < d; ++i) sum[i] = k.offset(a)[i] + k.offset(b)[i];
            pairs[sum].emplace_back(a, b);
        }
    }

    std::vector<std::vector<int>> offsets;
    std::vector<std::vector<double>> cost;
    for (auto& [off, decomp] : pairs) {
        std::vector<double> row(V, std::numeric_limits<double>::infinity());
        for (auto [a, b] : decomp) {
            // path y = x + o_a + o_b -> z = x + o_b -> x
            const auto& src_b = k.source(b);
            const auto& cost_a = k.cost(a);
            const auto& cost_b = k.cost(b);
            for (int p = 0; p < V; ++p) {
                const int z = src_b[p];
                const double cand = cost_a[z] + cost_b[p];
                if (cand < row[p]) row[p] = cand;
            }
        }
        offsets.push_back(off);
        cost.push_back(std::move(row));
    }
    return ActionKernel::from_parts(grid, 2.0 * k.dt(), k.vmax(), std::move(offsets),
                                    std::move(cost));
}

SolveResult solve_weak_kam(const ActionKernel& k, Direction dir, const GridFunction& seed,
                           double tol, int max_iter) {
    if (!(tol > 0.0)) throw ConfigError("solve_weak_kam: tol must be positive");
    if (!(seed.grid() == k.grid())) throw DimensionError("solve_weak_kam: grid mismatch");
    const int V = seed.size();
    const double sign = (dir == Direction::Backward) ? -1.0 : 1.0;

    GridFunction u = seed;
    std::vector<ResidualRecord> history;
    bool converged = false;
    int iters = 0;
    double final_shift = 0.0;

    // The iteration is eventually periodic: the normalized profile settles
    // into a cycle whose length divides the cyclicity of the critical graph.
    // A fixed profile (period 1) is the generic case; longer periods occur
    // when every critical cycle has even length. We keep a short window of
    // normalized profiles to detect small periods and lift the periodic
    // orbit to a genuine additive eigenvector.
    constexpr int kMaxPeriod = 6;
    std::vector<GridFunction> window{normalize(u, 0)};

    for (int it = 1; it <= max_iter; ++it) {
        GridFunction next = apply(u, k, dir);
        double shift = 0.0;
        for (int p = 0; p < V; ++p) shift += next[p] - u[p];
        shift /= V;
        u = std::move(next);
        GridFunction un = normalize(u, 0);

        int period = 0;
        double change = std::numeric_limits<double>::infinity();
        for (int p = 1; p <= static_cast<int>(window.size()); ++p) {
            const double d = sup_distance(un, window[window.size() - p]);
            if (p == 1) change = d;
            if (d <= tol) {
                period = p;
                break;
            }
        }
        window.push_back(std::move(un));
        if (static_cast<int>(window.size()) > kMaxPeriod) window.erase(window.begin());

        history.push_back({it, change, shift, sign * shift / k.dt()});
        iters = it;
        if (period == 1) {
            // The final shift is accurate to O(tol): consecutive normalized
            // profiles agree within tol, so Tu - u is constant to that order.
            final_shift = shift;
            converged = true;
            break;
        }
        if (period > 1) {
            // Collect one full period w_0..w_{p-1} starting at u and the
            // drift lambda = (w_p - w_0) / p, then take the min-plus (resp.
            // max-plus) mean v = min_j (w_j - j*lambda), which satisfies
            // T v = v + lambda exactly: T min(a,b) = min(Ta, Tb).
            std::vector<GridFunction> orbit{u};
            for (int j = 1; j <= period; ++j) orbit.push_back(apply(orbit.back(), k, dir));
            double lambda = 0.0;
            for (int p = 0; p < V; ++p) lambda += orbit[period][p] - orbit[0][p];
            lambda /= V * period;
            GridFunction v = orbit[0];
            for (int j = 1; j < period; ++j) {
                for (int p = 0; p < V; ++p) {
                    const double cand = orbit[j][p] - j * lambda;
                    v[p] = (dir == Direction::Backward) ? std::min(v[p], cand)
                                                        : std::max(v[p], cand);
                }
            }
            u = std::move(v);
            final_shift = lambda;
            converged = true;
            break;
        }
    }
    if (!converged) {
        const double last_change = history.empty() ? 0.0 : history.back().sup_change;
        throw ConvergenceError(
            fmt::format("solve_weak_kam: no convergence within {} iterations (last change {})",
                        max_iter, last_change),
            std::move(history));
    }

    SolveResult res{normalize(u, 0), sign * final_shift / k.dt(), iters, std::move(history),
                    false};

    // Diagnostic: any argmin on the band boundary signals vmax too small.
    const GridFunction& uu = res.u;
    for (int p = 0; p < V && !res.boundary_argmin; ++p) {
        double best = std::numeric_limits<double>::infinity();
        int best_k = -1;
        for (int kk = 0; kk < k.offset_count(); ++kk) {
            double cand;
            if (dir == Direction::Backward) {
                cand = uu[k.source(kk)[p]] + k.cost(kk)[p];
            } else {
                const int y = k.source(k.negated(kk))[p];
                cand = -(uu[y] - k.cost(kk)[y]);
            }
            if (cand < best) {
                best = cand;
                best_k = kk;
            }
        }
        res.boundary_argmin = k.boundary_offset(best_k);
    }
    return res;
}

DominationReport check_domination(const GridFunction& u, double c, const ActionKernel& k) {
    if (!(u.grid() == k.grid())) throw DimensionError("check_domination: grid mismatch");
    DominationReport rep;
    rep.worst = -std::numeric_limits<double>::infinity();
    const double cdt = c * k.dt();
    for (int kk = 0; kk < k.offset_count(); ++kk) {
        const auto& src = k.source(kk);
        const auto& cst = k.cost(kk);
        for (int x = 0; x < u.size(); ++x) {
            const int y = src[x];
            const double excess = u[x] - u[y] - cst[x] - cdt;
            if (excess > rep.worst) rep.worst = excess;
            if (excess > 1e-10) rep.violations.push_back({y, x, excess});
        }
    }
    return rep;
}

CalibratedOrbit backward_orbit(const GridFunction& u, const ActionKernel& k, double c,
                               int x, int steps) {
    if (!(u.grid() == k.grid())) throw DimensionError("backward_orbit: grid mismatch");
    k.grid().check_index(x);
    CalibratedOrbit orbit;
    orbit.points.push_back(x);
    int cur = x;
    for (int s = 0; s < steps; ++s) {
        double best = std::numeric_limits<double>::infinity();
        int best_y = -1;
        double best_h = 0.0;
        for (int kk = 0; kk < k.offset_count(); ++kk) {
            const int y = k.source(kk)[cur];
            const double cand = u[y] + k.cost(kk)[cur];
            if (cand < best || (cand == best && y < best_y)) {
                best = cand;
                best_y = y;
                best_h = k.cost(kk)[cur];
            }
        }
        orbit.defects.push_back(u[cur] - u[best_y] - best_h - c * k.dt());
        orbit.points.push_back(best_y);
        cur = best_y;
    }
    return orbit;
}

}  // namespace weakkam
