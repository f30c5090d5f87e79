#include "weakkam/critical.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>

namespace weakkam {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// One Karp relaxation step: next[x] = min over in-edges (y -> x) of cur[y] + w.
void relax(const ActionKernel& k, const std::vector<double>& cur, std::vector<double>& next,
           std::vector<int>* pred) {
    const int V = k.grid().size();
    std::fill(next.begin(), next.end(), kInf);
    if (pred) std::fill(pred->begin(), pred->end(), -1);
    for (int kk = 0; kk < k.offset_count(); ++kk) {
        const auto& src = k.source(kk);
        const auto& cst = k.cost(kk);
        for (int x = 0; x < V; ++x) {
            const int y = src[x];
            const double cand = cur[y] + cst[x];
            if (cand < next[x]) {
                next[x] = cand;
                if (pred) (*pred)[x] = y;
            }
        }
    }
}

}  // namespace

MinMeanCycleResult karp_min_mean_cycle(const ActionKernel& k) {
    const int V = k.grid().size();

    // Pass 1: rolling D_k with full predecessor table for witness extraction.
    std::vector<std::vector<int>> pred(V + 1, std::vector<int>(V, -1));
    std::vector<double> cur(V, 0.0), next(V);
    for (int step = 1; step <= V; ++step) {
        relax(k, cur, next, &pred[step]);
        std::swap(cur, next);
    }
    std::vector<double> d_final = cur;  // D_V

    // Pass 2: rolling D_k again, folding the Karp maximum on the fly.
    std::vector<double> fmax(V, -kInf);
    std::fill(cur.begin(), cur.end(), 0.0);
    for (int step = 0; step < V; ++step) {
        if (step > 0) {
            relax(k, cur, next, nullptr);
            std::swap(cur, next);
        }
        for (int x = 0; x < V; ++x) {
            const double val = (d_final[x] - cur[x]) / (V - step);
            if (val > fmax[x]) fmax[x] = val;
        }
    }

    MinMeanCycleResult res;
    res.lambda = kInf;
    int vstar = -1;
    for (int x = 0; x < V; ++x) {
        if (fmax[x] < res.lambda) {
            res.lambda = fmax[x];
            vstar = x;
        }
    }

    // Witness: walk the V-step shortest path ending at vstar; among the
    // cycles it contains, keep the one of least mean (first in path order
    // among equals).
    std::vector<int> walk(V + 1);
    walk[V] = vstar;
    for (int step = V; step > 0; --step) walk[step - 1] = pred[step][walk[step]];
    std::vector<double> walk_cost(V + 1, 0.0);
    for (int i = 0; i < V; ++i) {
        const auto kk = k.find_edge(walk[i], walk[i + 1]);
        walk_cost[i + 1] = walk_cost[i] + k.cost(*kk)[walk[i + 1]];
    }
    std::vector<int> last_seen(V, -1);
    double best_mean = kInf;
    int lo = -1, hi = -1;
    for (int i = 0; i <= V; ++i) {
        const int p = last_seen[walk[i]];
        if (p >= 0) {
            const double mean = (walk_cost[i] - walk_cost[p]) / (i - p);
            if (mean < best_mean) {
                best_mean = mean;
                lo = p;
                hi = i;
            }
        }
        last_seen[walk[i]] = i;
    }
    res.cycle.assign(walk.begin() + lo, walk.begin() + hi + 1);
    res.c = -res.lambda / k.dt();
    return res;
}

double cycle_mean(const ActionKernel& k, const std::vector<int>& cycle) {
    if (cycle.size() < 2 || cycle.front() != cycle.back()) {
        throw ConfigError("cycle_mean: sequence must close on itself");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < cycle.size(); ++i) {
        auto kk = k.find_edge(cycle[i], cycle[i + 1]);
        if (!kk) {
            throw StructureError(fmt::format("cycle edge {} -> {} not stored in the kernel",
                                             cycle[i], cycle[i + 1]));
        }
        sum += k.cost(*kk)[cycle[i + 1]];
    }
    return sum / (static_cast<double>(cycle.size()) - 1.0);
}

CriticalReport critical_value(const ActionKernel& k, double tol, int max_iter) {
    if (!(tol > 0.0)) throw ConfigError("critical_value: tol must be positive");
    CriticalReport rep;
    rep.cycle = karp_min_mean_cycle(k);
    rep.solve = solve_weak_kam(k, Direction::Backward, GridFunction(k.grid(), 0.0), tol, max_iter);
    rep.c = rep.cycle.c;
    rep.c_est = rep.solve.c_est;
    rep.gap = std::abs(rep.c - rep.c_est);
    if (rep.gap > 10.0 * tol / k.dt()) {
        throw ConsistencyError(
            fmt::format("critical_value: eigenvalue {} and fixed-point shift {} disagree by {}",
                        rep.c, rep.c_est, rep.gap),
            rep.c, rep.c_est);
    }
    return rep;
}

}  // namespace weakkam
