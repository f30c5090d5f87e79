#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

#include "doctest.h"
#include "weakkam/csv.hpp"
#include "weakkam/grid.hpp"

using namespace weakkam;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("grid construction validates its arguments") {
    CHECK_THROWS_AS(PeriodicGrid({}, {}), ConfigError);
    CHECK_THROWS_AS(PeriodicGrid({4, 4}, {1.0}), ConfigError);
    CHECK_THROWS_AS(PeriodicGrid({2}, {1.0}), ConfigError);
    CHECK_THROWS_AS(PeriodicGrid({4}, {0.0}), ConfigError);
    CHECK_THROWS_AS(PeriodicGrid({4}, {-1.0}), ConfigError);
    CHECK_NOTHROW(PeriodicGrid({3}, {1.0}));
}

TEST_CASE("grid geometry on a 4x6 torus") {
    PeriodicGrid g({4, 6}, {4.0, 3.0});
    CHECK(g.ndim() == 2);
    CHECK(g.size() == 24);
    CHECK(g.spacing(0) == doctest::Approx(1.0));
    CHECK(g.spacing(1) == doctest::Approx(0.5));

    // Row-major linearization, last axis fastest.
    CHECK(g.linear(std::vector<int>{0, 0}) == 0);
    CHECK(g.linear(std::vector<int>{0, 5}) == 5);
    CHECK(g.linear(std::vector<int>{1, 0}) == 6);
    CHECK(g.linear(std::vector<int>{3, 5}) == 23);

    for (int i = 0; i < g.size(); ++i) {
        CHECK(g.linear(g.multi(i)) == i);
    }
    auto p = g.position(g.linear(std::vector<int>{2, 3}));
    CHECK(p[0] == doctest::Approx(2.0));
    CHECK(p[1] == doctest::Approx(1.5));
}

TEST_CASE("grid index checks throw IndexError") {
    PeriodicGrid g({5}, {1.0});
    CHECK_THROWS_AS(g.multi(-1), IndexError);
    CHECK_THROWS_AS(g.multi(5), IndexError);
    CHECK_THROWS_AS(g.check_index(5), IndexError);
    CHECK_THROWS_AS(g.linear(std::vector<int>{5}), IndexError);
    CHECK_THROWS_AS(g.linear(std::vector<int>{-1}), IndexError);
}

TEST_CASE("shifted wraps in both directions") {
    PeriodicGrid g({5, 3}, {5.0, 3.0});
    const int x = g.linear(std::vector<int>{4, 2});
    CHECK(g.shifted(x, std::vector<int>{1, 1}) == g.linear(std::vector<int>{0, 0}));
    CHECK(g.shifted(x, std::vector<int>{-6, -4}) == g.linear(std::vector<int>{3, 1}));
    CHECK(g.shifted(x, std::vector<int>{0, 0}) == x);
    // Shifting by a full period is the identity.
    for (int i = 0; i < g.size(); ++i) {
        CHECK(g.shifted(i, std::vector<int>{5, 3}) == i);
    }
}

TEST_CASE("wrap_displacement picks the minimal representative") {
    PeriodicGrid g({8}, {8.0});
    // Forward distance 3 stays forward, 5 wraps backward to -3.
    CHECK(g.wrap_displacement(0, 3)[0] == doctest::Approx(3.0));
    CHECK(g.wrap_displacement(0, 5)[0] == doctest::Approx(-3.0));
    // The half-period tie resolves to the positive sign.
    CHECK(g.wrap_displacement(0, 4)[0] == doctest::Approx(4.0));
    CHECK(g.wrap_displacement(1, 5)[0] == doctest::Approx(4.0));
    // Antisymmetry away from the tie.
    CHECK(g.wrap_displacement(3, 0)[0] == doctest::Approx(-3.0));
}

TEST_CASE("wrap_displacement is consistent with shifted") {
    PeriodicGrid g({7, 5}, {kTwoPi, 1.0});
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> pick(0, g.size() - 1);
    for (int t = 0; t < 200; ++t) {
        const int from = pick(rng), to = pick(rng);
        auto d = g.wrap_displacement(from, to);
        std::vector<int> cells(2);
        for (int i = 0; i < 2; ++i) {
            cells[i] = static_cast<int>(std::lround(d[i] / g.spacing(i)));
        }
        CHECK(g.shifted(from, cells) == to);
    }
}

TEST_CASE("grid functions reject size mismatch and non-finite values") {
    PeriodicGrid g({4}, {1.0});
    CHECK_THROWS_AS(GridFunction(g, std::vector<double>{1.0, 2.0}), DimensionError);
    CHECK_THROWS_AS(GridFunction(g, std::vector<double>{1.0, 2.0, 3.0, std::nan("")}), ModelError);
    CHECK_THROWS_AS(
        GridFunction(g, std::vector<double>{1.0, 2.0, 3.0, std::numeric_limits<double>::infinity()}),
        ModelError);
    GridFunction u(g, std::vector<double>{1.0, 2.0, 3.0, 4.0});
    CHECK(u.size() == 4);
    CHECK(u[2] == 3.0);
}

TEST_CASE("normalize anchors exactly at zero") {
    PeriodicGrid g({5}, {1.0});
    GridFunction u(g, std::vector<double>{0.1, 0.2, 0.30000000000000004, -1.5, 2.25});
    for (int anchor = 0; anchor < 5; ++anchor) {
        GridFunction n = normalize(u, anchor);
        CHECK(n[anchor] == 0.0);  // exact, not approximate
        for (int i = 0; i < 5; ++i) {
            CHECK(n[i] == doctest::Approx(u[i] - u[anchor]));
        }
    }
    CHECK_THROWS_AS(normalize(u, 5), IndexError);
}

TEST_CASE("sup_distance is a metric restricted to a common grid") {
    PeriodicGrid g({4}, {1.0});
    GridFunction a(g, std::vector<double>{0.0, 1.0, 2.0, 3.0});
    GridFunction b(g, std::vector<double>{0.5, 1.0, 2.0, 0.0});
    CHECK(sup_distance(a, b) == doctest::Approx(3.0));
    CHECK(sup_distance(a, a) == 0.0);
    CHECK(sup_distance(a, b) == sup_distance(b, a));
    PeriodicGrid other({5}, {1.0});
    CHECK_THROWS_AS(sup_distance(a, GridFunction(other, 0.0)), DimensionError);
}

TEST_CASE("grid function CSV round-trips exactly") {
    PeriodicGrid g({3, 4}, {kTwoPi, 1.0});
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> val(-10.0, 10.0);
    std::vector<double> vs(g.size());
    for (double& v : vs) v = val(rng);
    GridFunction u(g, vs);

    const auto path = std::filesystem::temp_directory_path() / "weakkam_grid_roundtrip.csv";
    write_grid_function_csv(path, u);
    GridFunction back = read_grid_function_csv(path, g);
    for (int i = 0; i < g.size(); ++i) {
        CHECK(back[i] == u[i]);  // %.17g preserves doubles bit-for-bit
    }
    std::filesystem::remove(path);
}

TEST_CASE("format_double round-trips through strtod") {
    for (double v : {0.0, 1.0, -1.5, 0.1, 1e-300, -2.2250738585072014e-308, 3.141592653589793}) {
        const std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
}
