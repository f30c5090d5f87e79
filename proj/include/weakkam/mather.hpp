#pragma once

#include <vector>

#include "weakkam/critical.hpp"
#include "weakkam/semigroup.hpp"

namespace weakkam {

struct ConjugatePair {
    GridFunction u_minus;  // backward fixed point
    GridFunction u_plus;   // forward fixed point, aligned so min gap = 0
    double c = 0.0;
    GridFunction gap;      // u_minus - u_plus >= 0
    SolveResult backward;
    SolveResult forward;
};

/// Backward solve from the given seed, then forward solve seeded with the
/// backward solution; the forward branch is shifted so the gap has min 0.
/// Throws ConsistencyError if the two critical estimates disagree by more
/// than 2*tol/dt.
ConjugatePair conjugate_pair(const ActionKernel& k, double tol, int max_iter,
                             const GridFunction& seed);
ConjugatePair conjugate_pair(const ActionKernel& k, double tol, int max_iter = 200000);

struct MatherSetApprox {
    std::vector<int> points;  // sorted grid indices
    double tol = 0.0;
    bool contains(int idx) const;
};

/// {x : gap(x) <= tol} united with the support of the minimum-mean-cycle
/// witness. An Aubry-type over-approximation of the Mather set.
MatherSetApprox mather_set_approx(const ConjugatePair& pair, const ActionKernel& k, double tol);

/// Along the cycle edges (velocity = displacement/dt), the worst
/// componentwise difference between the centered discrete gradient of
/// u_minus and dL/dv at the edge's target.
double gradient_consistency(const ConjugatePair& pair, const LagrangianModel& model,
                            const std::vector<int>& cycle, const ActionKernel& k);

}  // namespace weakkam
