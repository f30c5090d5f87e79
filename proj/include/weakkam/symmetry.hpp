#pragma once

#include <string>
#include <vector>

#include "weakkam/semigroup.hpp"

namespace weakkam {

/// One grid automorphism: a permutation of linear indices plus a small
/// descriptor of where it came from. Axis shifts discretize rotations
/// isotopic to the identity; reflections do not, and Theorem-style
/// invariance assertions only apply to the former.
struct GridSymmetry {
    std::vector<int> perm;  // perm[x] = image of x
    std::string kind;       // "identity", "shift", "reflection", "composite"
    int axis = -1;
    int amount = 0;
    bool connected_analog = true;

    int operator()(int x) const { return perm[x]; }
};

class SymmetryGroup {
public:
    /// Verifies closure under composition and inverse; throws ConfigError
    /// otherwise. The identity must be present.
    static SymmetryGroup from_elements(std::vector<GridSymmetry> elements);

    /// Closes a generating set under composition (bounded by max_order).
    static SymmetryGroup generate(std::vector<GridSymmetry> generators, int max_order = 100000);

    const std::vector<GridSymmetry>& elements() const { return elements_; }
    int order() const { return static_cast<int>(elements_.size()); }
    bool connected_analog() const;

private:
    std::vector<GridSymmetry> elements_;
};

GridSymmetry make_identity(const PeriodicGrid& grid);
GridSymmetry make_shift(const PeriodicGrid& grid, int axis, int amount);
/// x_axis -> -x_axis (index i -> (n - i) mod n).
GridSymmetry make_reflection(const PeriodicGrid& grid, int axis);

/// Cyclic group of all translations along one axis.
SymmetryGroup make_shift_group(const PeriodicGrid& grid, int axis);
/// Identity plus the reflection about the origin of one axis.
SymmetryGroup make_reflection_group(const PeriodicGrid& grid, int axis);

/// max over group elements and stored edges of |h(gy,gx) - h(y,x)|.
/// Throws StructureError if some image edge is not stored.
double verify_symmetry(const SymmetryGroup& group, const ActionKernel& k);

/// Uniform group average (Mo u)(x) = (1/|G|) sum_g u(g(x)). The output is
/// exactly constant on group orbits.
GridFunction average(const GridFunction& u, const SymmetryGroup& group);

/// max over g, x of |u(g(x)) - u(x)|.
double check_invariance(const GridFunction& u, const SymmetryGroup& group);

struct InvariantSolveResult {
    SolveResult solve;
    double invariance_deviation = 0.0;
    double symmetry_deviation = 0.0;
};

/// Weak KAM solve from a group-averaged seed on a verified-symmetric kernel.
InvariantSolveResult invariant_weak_kam(const ActionKernel& k, const SymmetryGroup& group,
                                        const GridFunction& seed, double tol, int max_iter,
                                        Direction dir = Direction::Backward,
                                        double symmetry_tol = 1e-9);

}  // namespace weakkam
