#include "weakkam/oracle.hpp"

#include <cmath>
#include <fmt/format.h>
#include <numbers>

namespace weakkam {

namespace {

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(double (*f)(double), double a, double m, double b, double fa, double fm,
                     double fb, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adaptive_step(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

// Integrand after the substitution s = cos(t): the height integral from z
// to 1 becomes the integral of 2*sin(t/2) over t in [0, acos(z)].
double pendulum_integrand(double t) { return 2.0 * std::sin(0.5 * t); }

}  // namespace

double adaptive_quadrature(double (*f)(double), double a, double b, double abs_tol) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    return adaptive_step(f, a, m, b, fa, fm, fb, simpson(a, b, fa, fm, fb), abs_tol, 48);
}

double sphere_reference(double z, int sign, double abs_tol) {
    if (!(z >= -1.0 - 1e-12 && z <= 1.0 + 1e-12)) {
        throw ConfigError(fmt::format("sphere_reference: height {} outside [-1, 1]", z));
    }
    z = std::clamp(z, -1.0, 1.0);
    const double theta = std::acos(z);
    const double integral = adaptive_quadrature(pendulum_integrand, 0.0, theta, abs_tol);
    return sign >= 0 ? integral : -integral;
}

double circle_reference(double theta, int sign, double abs_tol) {
    constexpr double pi = std::numbers::pi;
    if (!(theta >= -pi - 1e-12 && theta <= pi + 1e-12)) {
        throw ConfigError(fmt::format("circle_reference: angle {} outside [-pi, pi]", theta));
    }
    return sphere_reference(std::cos(theta), sign, abs_tol);
}

double compare_to_reference(const GridFunction& u, const ReferenceSolution& ref) {
    constexpr double pi = std::numbers::pi;
    const PeriodicGrid& g = u.grid();
    if (g.ndim() != 1) throw DimensionError("compare_to_reference: 1-D grid required");
    if (std::abs(g.lengths()[0] - 2.0 * pi) > 1e-9) {
        throw DimensionError("compare_to_reference: grid must cover [0, 2*pi)");
    }
    const GridFunction aligned = normalize(u, 0);
    double worst = 0.0;
    for (int i = 0; i < g.size(); ++i) {
        double theta = g.position(i)[0];
        if (theta > pi) theta -= 2.0 * pi;
        worst = std::max(worst, std::abs(aligned[i] - ref(theta)));
    }
    return worst;
}

}  // namespace weakkam
