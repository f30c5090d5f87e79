#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "weakkam/grid.hpp"
#include "weakkam/model.hpp"

namespace weakkam {

enum class ActionRule { Endpoint, Midpoint };
enum class Direction { Backward, Forward };

/// Banded matrix of one-step discrete actions h(y,x) on a periodic grid.
/// Edges are indexed by the per-axis integer offset o taking the target x
/// to the source y (y = x + o, wrapped); pairs outside the velocity band
/// are absent and act as +infinity.
class ActionKernel {
public:
    static ActionKernel from_parts(PeriodicGrid grid, double dt, double vmax,
                                   std::vector<std::vector<int>> offsets,
                                   std::vector<std::vector<double>> cost);

    const PeriodicGrid& grid() const { return grid_; }
    double dt() const { return dt_; }
    double vmax() const { return vmax_; }

    int offset_count() const { return static_cast<int>(offsets_.size()); }
    const std::vector<int>& offset(int k) const { return offsets_[k]; }
    const std::vector<double>& cost(int k) const { return cost_[k]; }
    const std::vector<int>& source(int k) const { return source_[k]; }
    /// Index of -offset(k); the band is symmetric by construction.
    int negated(int k) const { return negated_[k]; }
    /// True when offset(k) touches the edge of the stored band.
    bool boundary_offset(int k) const { return boundary_[k]; }

    std::optional<int> find_offset(std::span<const int> o) const;
    /// Offset index for the stored edge y -> x, if present.
    std::optional<int> find_edge(int y, int x) const;

private:
    ActionKernel() = default;
    void finalize();

    PeriodicGrid grid_{{3}, {1.0}};
    double dt_ = 0.0;
    double vmax_ = 0.0;
    std::vector<std::vector<int>> offsets_;
    std::vector<std::vector<double>> cost_;    // cost_[k][x] = h(x + o_k, x)
    std::vector<std::vector<int>> source_;     // source_[k][x] = linear index of x + o_k
    std::vector<int> negated_;
    std::vector<bool> boundary_;
};

/// One-step kernel h(y,x) = dt * L(x, D/dt), D = wrap_displacement(y,x),
/// over the band |o_i| <= floor(vmax*dt/spacing_i) intersected with
/// |D| <= vmax*dt. The midpoint rule evaluates L at x - D/2 instead.
ActionKernel build_kernel(const LagrangianModel& model, const PeriodicGrid& grid,
                          double dt, double vmax, ActionRule rule = ActionRule::Endpoint);

/// (T- u)(x) = min_y [u(y) + h(y,x)]
GridFunction apply_backward(const GridFunction& u, const ActionKernel& k);

/// (T+ u)(x) = max_y [u(y) - h(x,y)]
GridFunction apply_forward(const GridFunction& u, const ActionKernel& k);

GridFunction apply(const GridFunction& u, const ActionKernel& k, Direction dir);

/// Min-plus square of the kernel: h2(y,x) = min_z [h(y,z) + h(z,x)], with
/// doubled time step. Applying the result once equals applying the input
/// twice.
ActionKernel compose_kernel(const ActionKernel& k);

struct SolveResult {
    GridFunction u;
    double c_est = 0.0;
    int iterations = 0;
    std::vector<ResidualRecord> history;
    /// Some argmin of the converged solution sits on the band boundary;
    /// vmax is likely too small.
    bool boundary_argmin = false;
};

SolveResult solve_weak_kam(const ActionKernel& k, Direction dir, const GridFunction& seed,
                           double tol, int max_iter);

struct DominationReport {
    double worst = 0.0;  // max over edges of u(x) - u(y) - h(y,x) - c*dt
    struct Edge {
        int source, target;
        double violation;
    };
    std::vector<Edge> violations;  // edges exceeding the 1e-10 slack
    bool dominated() const { return violations.empty(); }
};

DominationReport check_domination(const GridFunction& u, double c, const ActionKernel& k);

struct CalibratedOrbit {
    std::vector<int> points;      // backward in time; points[0] is the start
    std::vector<double> defects;  // per-step slack in the domination equality
};

/// Backward argmin chain from x; ties resolve to the lowest linear index.
CalibratedOrbit backward_orbit(const GridFunction& u, const ActionKernel& k, double c,
                               int x, int steps);

}  // namespace weakkam
