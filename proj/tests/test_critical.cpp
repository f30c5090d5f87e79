#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include "doctest.h"
#include "weakkam/critical.hpp"

using namespace weakkam;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Random banded kernel on an n-point circle with offsets {-1, 0, 1}.
ActionKernel random_kernel(int n, std::mt19937& rng, double lo = -1.0, double hi = 1.0) {
    PeriodicGrid g({n}, {static_cast<double>(n)});
    std::uniform_real_distribution<double> w(lo, hi);
    std::vector<std::vector<int>> offsets{{-1}, {0}, {1}};
    std::vector<std::vector<double>> cost(3, std::vector<double>(n));
    for (auto& row : cost) {
        for (double& c : row) c = w(rng);
    }
    return ActionKernel::from_parts(g, 1.0, 1.5, std::move(offsets), std::move(cost));
}

// Exhaustive oracle: enumerate every simple directed cycle by DFS and take
// the best mean; self-loops included. Feasible for tiny graphs only.
void enumerate_cycles(const ActionKernel& k, int start, int cur, double cost,
                      int length, std::vector<bool>& on_path, double& best) {
    // Outgoing edges of `cur` are the edges cur -> x, stored as cost at x
    // with source index cur.
    for (int kk = 0; kk < k.offset_count(); ++kk) {
        // source(kk)[x] == cur  <=>  x == shifted(cur, -offset)
        const int x = k.source(k.negated(kk))[cur];
        const double w = k.cost(kk)[x];
        if (x == start) {
            best = std::min(best, (cost + w) / (length + 1));
        } else if (x > start && !on_path[x]) {
            on_path[x] = true;
            enumerate_cycles(k, start, x, cost + w, length + 1, on_path, best);
            on_path[x] = false;
        }
    }
}

double brute_min_mean_cycle(const ActionKernel& k) {
    const int V = k.grid().size();
    double best = std::numeric_limits<double>::infinity();
    std::vector<bool> on_path(V, false);
    for (int s = 0; s < V; ++s) {
        on_path[s] = true;
        enumerate_cycles(k, s, s, 0.0, 0, on_path, best);
        on_path[s] = false;
    }
    return best;
}

}  // namespace

TEST_CASE("Karp equals exhaustive enumeration on tiny circles") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 10);  // 3..12 points
        auto k = random_kernel(n, rng);
        const double brute = brute_min_mean_cycle(k);
        const auto karp = karp_min_mean_cycle(k);
        // The recurrence forms the same sums as the enumeration; only the
        // division differs, so the two agree to strict rounding accuracy.
        CHECK(karp.lambda == doctest::Approx(brute).epsilon(1e-13));
        CHECK(karp.c == doctest::Approx(-brute / k.dt()).epsilon(1e-13));

        // The witness is a genuine cycle achieving the eigenvalue.
        REQUIRE(karp.cycle.size() >= 2);
        CHECK(karp.cycle.front() == karp.cycle.back());
        CHECK(cycle_mean(k, karp.cycle) == doctest::Approx(karp.lambda).epsilon(1e-12));
    }
}

TEST_CASE("Karp agrees with the fixed-point shift on mid-sized kernels") {
    std::mt19937 rng(777);
    for (int trial = 0; trial < 8; ++trial) {
        const int n = 16 + static_cast<int>(rng() % 49);  // 16..64 points
        auto k = random_kernel(n, rng);
        const auto karp = karp_min_mean_cycle(k);
        const auto res = solve_weak_kam(k, Direction::Backward, GridFunction(k.grid(), 0.0),
                                        1e-12, 1000000);
        CHECK(std::abs(karp.lambda - (-res.c_est * k.dt())) <= 1e-9);
    }
}

TEST_CASE("pendulum eigenvalue is the self-loop at the potential maximum") {
    PeriodicGrid g({64}, {kTwoPi});
    LagrangianModel m(std::make_shared<CosinePotential>(), {1.0}, {});
    auto k = build_kernel(m, g, 0.05, 4.0);
    const auto karp = karp_min_mean_cycle(k);
    // L(0, 0) = -cos(0) = -1, so lambda = -dt and c = 1, up to rounding.
    CHECK(karp.lambda == doctest::Approx(-0.05).epsilon(1e-12));
    CHECK(karp.c == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(karp.cycle == std::vector<int>{0, 0});
}

TEST_CASE("critical_value cross-checks both computations") {
    PeriodicGrid g({64}, {kTwoPi});
    LagrangianModel m(std::make_shared<CosinePotential>(), {1.0}, {});
    auto k = build_kernel(m, g, 0.05, 4.0);
    auto rep = critical_value(k, 1e-10);
    CHECK(rep.c == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.c_est == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rep.gap <= 10.0 * 1e-10 / 0.05);
    CHECK(rep.gap == std::abs(rep.c - rep.c_est));
    CHECK_THROWS_AS(critical_value(k, 0.0), ConfigError);
}

TEST_CASE("cycle_mean validates its input") {
    std::mt19937 rng(9);
    auto k = random_kernel(6, rng);
    CHECK_THROWS_AS(cycle_mean(k, {0}), ConfigError);
    CHECK_THROWS_AS(cycle_mean(k, {0, 1, 2}), ConfigError);       // not closed
    CHECK_THROWS_AS(cycle_mean(k, {0, 3, 0}), StructureError);    // 0 -> 3 absent
    const auto e = k.find_offset(std::vector<int>{-1});
    REQUIRE(e);
    // 1 -> 0 is the edge with source offset -1 relative to target 0... the
    // stored cost for target 0 with source 0 + 1 = 1 sits at offset +1.
    const auto plus = k.find_offset(std::vector<int>{1});
    CHECK(cycle_mean(k, {0, 1, 0}) ==
          doctest::Approx(0.5 * (k.cost(*plus)[0] + k.cost(*e)[1])).epsilon(1e-15));
}

TEST_CASE("a cohomology shift tilts the minimizing cycle into rotation") {
    // Free particle with a strong drift term: L = v^2/2 - P v. The best
    // cycle is no longer a self-loop but a rotation at speed near P.
    PeriodicGrid g({12}, {12.0});
    LagrangianModel m(std::make_shared<ZeroPotential>(), {1.0}, {1.0});
    auto k = build_kernel(m, g, 1.0, 2.5);
    const auto karp = karp_min_mean_cycle(k);
    // Cells move at integer speeds; v = 1 gives mean dt (1/2 - 1) = -1/2.
    CHECK(karp.lambda == doctest::Approx(-0.5).epsilon(1e-12));
    REQUIRE(karp.cycle.size() >= 2);
    // Every witness edge steps one cell forward (source = target - 1).
    for (std::size_t i = 0; i + 1 < karp.cycle.size(); ++i) {
        CHECK(k.find_edge(karp.cycle[i], karp.cycle[i + 1]) ==
              k.find_offset(std::vector<int>{-1}));
    }
}
