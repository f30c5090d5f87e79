#pragma once

#include <memory>
#include <span>
#include <vector>

#include "weakkam/grid.hpp"

namespace weakkam {

/// Scalar potential on configuration space. Builtins evaluate exactly;
/// tabulated potentials interpolate multilinearly between periodic grid
/// samples.
class Potential {
public:
    virtual ~Potential() = default;
    virtual double eval(std::span<const double> x) const = 0;
};

class ZeroPotential final : public Potential {
public:
    double eval(std::span<const double>) const override { return 0.0; }
};

/// U(x) = cos(x[0]); the circle/torus pendulum potential.
class CosinePotential final : public Potential {
public:
    double eval(std::span<const double> x) const override;
};

class TabulatedPotential final : public Potential {
public:
    explicit TabulatedPotential(GridFunction samples);
    double eval(std::span<const double> x) const override;

private:
    GridFunction samples_;
};

/// Mechanical Lagrangian L(x,v) = (1/2) sum_i m_i v_i^2 - U(x), evaluated
/// through an optional cohomology shift P: the effective Lagrangian is
/// L(x,v) - P.v.
class LagrangianModel {
public:
    LagrangianModel(std::shared_ptr<const Potential> potential,
                    std::vector<double> kinetic,
                    std::vector<double> shift);

    int ndim() const { return static_cast<int>(kinetic_.size()); }
    const std::vector<double>& shift() const { return shift_; }
    const std::vector<double>& kinetic() const { return kinetic_; }
    const Potential& potential() const { return *potential_; }
    std::shared_ptr<const Potential> potential_ptr() const { return potential_; }

    /// L(x,v) - P.v
    double eval(std::span<const double> x, std::span<const double> v) const;

    /// dL/dv of the effective Lagrangian, by centered finite differences.
    std::vector<double> velocity_gradient(std::span<const double> x,
                                          std::span<const double> v,
                                          double step = 1e-6) const;

private:
    std::shared_ptr<const Potential> potential_;
    std::vector<double> kinetic_;  // positive diagonal mass coefficients
    std::vector<double> shift_;    // covector P
};

/// Conjugate Hamiltonian of a mechanical model:
/// H(x,p) = (1/2) sum_i (p_i + P_i)^2 / m_i + U(x).
class HamiltonianModel {
public:
    explicit HamiltonianModel(const LagrangianModel& model);
    double eval(std::span<const double> x, std::span<const double> p) const;

    /// Worst second difference of p -> H(x,p) along each momentum axis over
    /// a sampled box; convex on the box iff the result >= -tol.
    double check_convexity(std::span<const double> x, double pmax, int samples) const;

private:
    std::shared_ptr<const Potential> potential_;
    std::vector<double> kinetic_;
    std::vector<double> shift_;
};

struct SampleBox {
    std::vector<double> x_lo, x_hi;
    std::vector<double> v_lo, v_hi;
    int samples_per_axis = 17;
};

/// min over the sampled box of L(x,v) - K * |v|; the superlinearity
/// constant C_K restricted to the box.
double check_superlinearity(const LagrangianModel& model, double K, const SampleBox& box);

}  // namespace weakkam
