#pragma once

#include "weakkam/grid.hpp"

namespace weakkam {

/// u_+/u_- for the gravity pendulum with potential equal to the height
/// coordinate, normalized to vanish at the potential maximum. The height
/// form integrates sqrt((2-2s)/(1-s^2)) from z to 1; the circle form is
/// its restriction z = cos(theta).
double sphere_reference(double z, int sign, double abs_tol = 1e-12);
double circle_reference(double theta, int sign, double abs_tol = 1e-12);

class ReferenceSolution {
public:
    explicit ReferenceSolution(int sign) : sign_(sign) {}
    int sign() const { return sign_; }
    double operator()(double theta) const { return circle_reference(theta, sign_); }
    double at_height(double z) const { return sphere_reference(z, sign_); }

private:
    int sign_;
};

/// Sup-norm distance on a 1-D circle grid after aligning u additively to
/// vanish at the grid point nearest theta = 0 (index 0).
double compare_to_reference(const GridFunction& u, const ReferenceSolution& ref);

/// Adaptive Simpson quadrature, used by the reference evaluators and
/// available to tests.
double adaptive_quadrature(double (*f)(double), double a, double b, double abs_tol);

}  // namespace weakkam
