#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "weakkam/legendre.hpp"

using namespace weakkam;

namespace {

// Quadratic-time reference: the conjugate at v is the plain maximum of
// p_j v - f_j over all samples.
LegendreResult brute_transform(const std::vector<double>& f, double p0, double dp,
                               const std::vector<double>& v) {
    LegendreResult out;
    for (double target : v) {
        double best = -std::numeric_limits<double>::infinity();
        int arg = -1;
        for (std::size_t j = 0; j < f.size(); ++j) {
            const double cand = target * (p0 + j * dp) - f[j];
            if (cand > best) {
                best = cand;
                arg = static_cast<int>(j);
            }
        }
        if (arg == 0 || arg == static_cast<int>(f.size()) - 1) {
            throw RangeError("brute_transform: boundary argmax");
        }
        out.values.push_back(best);
        out.argmax.push_back(arg);
    }
    return out;
}

// Random strictly convex samples: integrate a random increasing slope
// sequence whose increments are bounded away from zero, so every
// subdifferential bracket has positive width.
std::vector<double> random_convex(std::mt19937& rng, int n) {
    std::uniform_real_distribution<double> jump(0.2, 1.2);
    std::vector<double> slope(n - 1);
    double s = -5.0;
    for (double& sl : slope) {
        s += jump(rng);
        sl = s;
    }
    std::vector<double> f(n);
    f[0] = jump(rng) * 10.0 - 5.0;
    for (int j = 1; j < n; ++j) f[j] = f[j - 1] + slope[j - 1];
    return f;
}

}  // namespace

TEST_CASE("conjugate of a sampled parabola is the dual parabola") {
    // f(p) = p^2 / 2 has conjugate f*(v) = v^2 / 2 attained at p = v.
    const double p0 = -8.0, dp = 0.01;
    const int n = 1601;
    std::vector<double> f(n);
    for (int j = 0; j < n; ++j) {
        const double p = p0 + j * dp;
        f[j] = 0.5 * p * p;
    }
    std::vector<double> v{-3.0, -1.25, 0.0, 0.5, 2.0};
    auto res = legendre_transform(f, p0, dp, v);
    for (std::size_t i = 0; i < v.size(); ++i) {
        CHECK(res.values[i] == doctest::Approx(0.5 * v[i] * v[i]).epsilon(1e-4));
        CHECK(std::abs((p0 + res.argmax[i] * dp) - v[i]) <= dp);
    }
}

TEST_CASE("linear-time transform matches the quadratic oracle exactly") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> vpick(-3.0, 3.0);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 32 + static_cast<int>(rng() % 64);
        auto f = random_convex(rng, n);
        std::vector<double> v(7);
        for (double& t : v) t = vpick(rng);
        std::sort(v.begin(), v.end());
        LegendreResult brute;
        try {
            brute = brute_transform(f, -2.0, 0.125, v);
        } catch (const RangeError&) {
            continue;  // boundary cases are covered separately
        }
        auto fast = legendre_transform(f, -2.0, 0.125, v);
        for (std::size_t i = 0; i < v.size(); ++i) {
            CHECK(fast.values[i] == brute.values[i]);  // bitwise equal
        }
    }
}

TEST_CASE("double transform is the identity on convex samples") {
    std::mt19937 rng(7);
    int checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 64;
        const double p0 = -4.0, dp = 8.0 / (n - 1);
        auto f = random_convex(rng, n);

        // First conjugate on a fine grid strictly inside the slope range of
        // f, so every argmax is interior.
        const double smin = (f[1] - f[0]) / dp;
        const double smax = (f[n - 1] - f[n - 2]) / dp;
        const int m = 4001;
        const double v0 = smin + 1e-6, dv = (smax - smin - 2e-6) / (m - 1);
        std::vector<double> v(m);
        for (int i = 0; i < m; ++i) v[i] = v0 + i * dv;
        auto g = legendre_transform(f, p0, dp, v);

        // Second conjugate back at the interior sample points.
        try {
            for (int j = 2; j + 2 < n; ++j) {
                auto back = legendre_transform(g.values, v0, dv, std::vector<double>{p0 + j * dp});
                // f** <= f always; the gap is the discretization of the sup.
                CHECK(back.values[0] <= f[j] + 1e-12);
                CHECK(back.values[0] == doctest::Approx(f[j]).epsilon(1e-9).scale(1.0));
            }
        } catch (const RangeError&) {
            continue;
        }
        ++checked;
    }
    CHECK(checked >= 50);
}

TEST_CASE("argmax indices increase with the target slope") {
    std::mt19937 rng(11);
    auto f = random_convex(rng, 80);
    std::vector<double> v{-2.0, -1.0, -0.5, 0.0, 0.5, 1.5, 2.5};
    auto res = legendre_transform(f, -1.0, 0.05, v);
    CHECK(std::is_sorted(res.argmax.begin(), res.argmax.end()));
}

TEST_CASE("boundary attainment raises RangeError") {
    std::vector<double> f{4.0, 1.0, 0.0, 1.0, 4.0};  // v^2 on p in [-2,2]
    // Slope beyond the sampled range pushes the argmax to the last sample.
    CHECK_THROWS_AS(legendre_transform(f, -2.0, 1.0, std::vector<double>{10.0}), RangeError);
    CHECK_THROWS_AS(legendre_transform(f, -2.0, 1.0, std::vector<double>{-10.0}), RangeError);
    CHECK_NOTHROW(legendre_transform(f, -2.0, 1.0, std::vector<double>{0.1}));
}

TEST_CASE("input validation") {
    std::vector<double> f{0.0, 1.0};
    CHECK_THROWS_AS(legendre_transform(f, 0.0, 1.0, {}), ConfigError);
    std::vector<double> f3{0.0, 1.0, 4.0};
    CHECK_THROWS_AS(legendre_transform(f3, 0.0, 0.0, {}), ConfigError);
    CHECK_THROWS_AS(legendre_transform(f3, 0.0, 1.0, std::vector<double>{1.0, 0.0}), ConfigError);
}
