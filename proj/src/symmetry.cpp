#include "weakkam/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <map>
#include <numeric>

namespace weakkam {

namespace {

bool is_permutation(const std::vector<int>& p) {
    std::vector<bool> hit(p.size(), false);
    for (int v : p) {
        if (v < 0 || v >= static_cast<int>(p.size()) || hit[v]) return false;
        hit[v] = true;
    }
    return true;
}

GridSymmetry compose(const GridSymmetry& a, const GridSymmetry& b) {
    // (a o b)(x) = a(b(x))
    GridSymmetry c;
    c.perm.resize(a.perm.size());
    for (std::size_t x = 0; x < a.perm.size(); ++x) c.perm[x] = a.perm[b.perm[x]];
    c.kind = "composite";
    c.connected_analog = a.connected_analog && b.connected_analog;
    return c;
}

}  // namespace

GridSymmetry make_identity(const PeriodicGrid& grid) {
    GridSymmetry g;
    g.perm.resize(grid.size());
    std::iota(g.perm.begin(), g.perm.end(), 0);
    g.kind = "identity";
    return g;
}

GridSymmetry make_shift(const PeriodicGrid& grid, int axis, int amount) {
    if (axis < 0 || axis >= grid.ndim()) throw ConfigError("make_shift: invalid axis");
    GridSymmetry g;
    g.perm.resize(grid.size());
    std::vector<int> off(grid.ndim(), 0);
    off[axis] = amount;
    for (int x = 0; x < grid.size(); ++x) g.perm[x] = grid.shifted(x, off);
    g.kind = "shift";
    g.axis = axis;
    g.amount = amount;
    return g;
}

GridSymmetry make_reflection(const PeriodicGrid& grid, int axis) {
    if (axis < 0 || axis >= grid.ndim()) throw ConfigError("make_reflection: invalid axis");
    GridSymmetry g;
    g.perm.resize(grid.size());
    for (int x = 0; x < grid.size(); ++x) {
        auto m = grid.multi(x);
        m[axis] = (grid.dims()[axis] - m[axis]) % grid.dims()[axis];
        g.perm[x] = grid.linear(m);
    }
    g.kind = "reflection";
    g.axis = axis;
    g.connected_analog = false;
    return g;
}

SymmetryGroup SymmetryGroup::from_elements(std::vector<GridSymmetry> elements) {
    if (elements.empty()) throw ConfigError("symmetry group: no elements");
    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (!is_permutation(elements[i].perm)) {
            throw ConfigError("symmetry group: element is not a bijection on grid indices");
        }
        if (index.contains(elements[i].perm)) {
            throw ConfigError("symmetry group: duplicate element");
        }
        index[elements[i].perm] = static_cast<int>(i);
    }
    bool has_identity = false;
    for (const auto& e : elements) {
        bool ident = true;
        for (std::size_t x = 0; x < e.perm.size(); ++x) ident &= e.perm[x] == static_cast<int>(x);
        has_identity |= ident;
    }
    if (!has_identity) throw ConfigError("symmetry group: identity element missing");
    for (const auto& a : elements) {
        for (const auto& b : elements) {
            if (!index.contains(compose(a, b).perm)) {
                throw ConfigError("symmetry group: not closed under composition");
            }
        }
        // closure + finiteness implies inverses, but check directly anyway
        std::vector<int> inv(a.perm.size());
        for (std::size_t x = 0; x < a.perm.size(); ++x) inv[a.perm[x]] = static_cast<int>(x);
        if (!index.contains(inv)) {
            throw ConfigError("symmetry group: not closed under inverse");
        }
    }
    SymmetryGroup g;
    g.elements_ = std::move(elements);
    return g;
}

SymmetryGroup SymmetryGroup::generate(std::vector<GridSymmetry> generators, int max_order) {
    if (generators.empty()) throw ConfigError("symmetry group: no generators");
    std::map<std::vector<int>, int> index;
    std::vector<GridSymmetry> elems;
    std::vector<int> ident(generators.front().perm.size());
    std::iota(ident.begin(), ident.end(), 0);
    GridSymmetry id;
    id.perm = ident;
    id.kind = "identity";
    index[ident] = 0;
    elems.push_back(std::move(id));
    std::size_t frontier = 0;
    while (frontier < elems.size()) {
        const GridSymmetry cur = elems[frontier++];
        for (const auto& gen : generators) {
            GridSymmetry nxt = compose(gen, cur);
            if (!index.contains(nxt.perm)) {
                if (static_cast<int>(elems.size()) >= max_order) {
                    throw ConfigError("symmetry group: generated order exceeds limit");
                }
                index[nxt.perm] = static_cast<int>(elems.size());
                if (nxt.kind == "composite" && cur.kind == "identity") {
                    nxt.kind = gen.kind;
                    nxt.axis = gen.axis;
                    nxt.amount = gen.amount;
                }
                elems.push_back(std::move(nxt));
            }
        }
    }
    return from_elements(std::move(elems));
}

bool SymmetryGroup::connected_analog() const {
    return std::all_of(elements_.begin(), elements_.end(),
                       [](const GridSymmetry& g) { return g.connected_analog; });
}

SymmetryGroup make_shift_group(const PeriodicGrid& grid, int axis) {
    std::vector<GridSymmetry> elems;
    for (int a = 0; a < grid.dims()[axis]; ++a) elems.push_back(make_shift(grid, axis, a));
    return SymmetryGroup::from_elements(std::move(elems));
}

SymmetryGroup make_reflection_group(const PeriodicGrid& grid, int axis) {
    std::vector<GridSymmetry> elems;
    elems.push_back(make_identity(grid));
    elems.push_back(make_reflection(grid, axis));
    return SymmetryGroup::from_elements(std::move(elems));
}

double verify_symmetry(const SymmetryGroup& group, const ActionKernel& k) {
    const int V = k.grid().size();
    for (const auto& g : group.elements()) {
        if (static_cast<int>(g.perm.size()) != V) {
            throw DimensionError("verify_symmetry: group acts on a different grid");
        }
    }
    double dev = 0.0;
    for (const auto& g : group.elements()) {
        for (int kk = 0; kk < k.offset_count(); ++kk) {
            const auto& src = k.source(kk);
            const auto& cst = k.cost(kk);
            for (int x = 0; x < V; ++x) {
                const int y = src[x];
                const int gx = g(x), gy = g(y);
                const auto img = k.find_edge(gy, gx);
                if (!img) {
                    throw StructureError(fmt::format(
                        "verify_symmetry: image edge {} -> {} of stored edge {} -> {} is absent",
                        gy, gx, y, x));
                }
                dev = std::max(dev, std::abs(k.cost(*img)[gx] - cst[x]));
            }
        }
    }
    return dev;
}

GridFunction average(const GridFunction& u, const SymmetryGroup& group) {
    const int V = u.size();
    for (const auto& g : group.elements()) {
        if (static_cast<int>(g.perm.size()) != V) {
            throw DimensionError("average: group acts on a different grid");
        }
    }
    // Orbit averages assigned uniformly: exact invariance and idempotence.
    GridFunction out(u.grid(), 0.0);
    std::vector<bool> done(V, false);
    std::vector<int> orbit;
    for (int x = 0; x < V; ++x) {
        if (done[x]) continue;
        orbit.clear();
        for (const auto& g : group.elements()) {
            const int y = g(x);
            if (!done[y]) {
                done[y] = true;
                orbit.push_back(y);
            }
        }
        std::sort(orbit.begin(), orbit.end());
        bool constant = true;
        for (int y : orbit) constant &= u[y] == u[orbit.front()];
        double avg;
        if (constant) {
            avg = u[orbit.front()];
        } else {
            double s = 0.0;
            for (int y : orbit) s += u[y];
            avg = s / static_cast<double>(orbit.size());
        }
        for (int y : orbit) out[y] = avg;
    }
    return out;
}

double check_invariance(const GridFunction& u, const SymmetryGroup& group) {
    double dev = 0.0;
    for (const auto& g : group.elements()) {
        if (static_cast<int>(g.perm.size()) != u.size()) {
            throw DimensionError("check_invariance: group acts on a different grid");
        }
        for (int x = 0; x < u.size(); ++x) {
            dev = std::max(dev, std::abs(u[g(x)] - u[x]));
        }
    }
    return dev;
}

InvariantSolveResult invariant_weak_kam(const ActionKernel& k, const SymmetryGroup& group,
                                        const GridFunction& seed, double tol, int max_iter,
                                        Direction dir, double symmetry_tol) {
    InvariantSolveResult res;
    res.symmetry_deviation = verify_symmetry(group, k);
    if (res.symmetry_deviation > symmetry_tol) {
        throw ConfigError(fmt::format(
            "invariant_weak_kam: group is not a symmetry of the kernel (deviation {})",
            res.symmetry_deviation));
    }
    const GridFunction avg_seed = average(seed, group);
    res.solve = solve_weak_kam(k, dir, avg_seed, tol, max_iter);
    res.invariance_deviation = check_invariance(res.solve.u, group);
    return res;
}

}  // namespace weakkam
