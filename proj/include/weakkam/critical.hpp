#pragma once

#include <vector>

#include "weakkam/semigroup.hpp"

namespace weakkam {

struct MinMeanCycleResult {
    double lambda = 0.0;     // minimum mean edge weight over directed cycles
    std::vector<int> cycle;  // witnessing cycle, closing on itself (first == last)
    double c = 0.0;          // -lambda/dt, the discrete critical value
};

/// Karp's recurrence over the kernel graph. The graph is strongly connected
/// (self-loops plus the neighbor band), so the minimum always exists.
MinMeanCycleResult karp_min_mean_cycle(const ActionKernel& k);

/// Mean edge weight of a closed index sequence, summed in path order.
double cycle_mean(const ActionKernel& k, const std::vector<int>& cycle);

struct CriticalReport {
    double c = 0.0;       // Karp value, exact for the discrete system
    double c_est = 0.0;   // fixed-point estimate
    double gap = 0.0;     // |c - c_est|
    MinMeanCycleResult cycle;
    SolveResult solve;
};

/// Cross-checks the tropical eigenvalue against the fixed-point shift.
/// Throws ConsistencyError when the two disagree by more than 10*tol/dt.
CriticalReport critical_value(const ActionKernel& k, double tol, int max_iter = 200000);

}  // namespace weakkam
