#include "weakkam/grid.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace weakkam {

PeriodicGrid::PeriodicGrid(std::vector<int> dims, std::vector<double> lengths)
    : dims_(std::move(dims)), lengths_(std::move(lengths)) {
    if (dims_.empty() || dims_.size() != lengths_.size()) {
        throw ConfigError("grid: dims and lengths must be non-empty and of equal size");
    }
    size_ = 1;
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        if (dims_[i] < 3) {
            throw ConfigError(fmt::format("grid: axis {} has {} points, need at least 3", i, dims_[i]));
        }
        if (!(lengths_[i] > 0.0) || !std::isfinite(lengths_[i])) {
            throw ConfigError(fmt::format("grid: axis {} length must be positive", i));
        }
        size_ *= dims_[i];
    }
    strides_.assign(dims_.size(), 1);
    for (int i = ndim() - 2; i >= 0; --i) {
        strides_[i] = strides_[i + 1] * dims_[i + 1];
    }
}

void PeriodicGrid::check_index(int linear) const {
    if (linear < 0 || linear >= size_) {
        throw IndexError(fmt::format("grid index {} out of range [0,{})", linear, size_));
    }
}

int PeriodicGrid::linear(std::span<const int> multi) const {
    int idx = 0;
    for (int i = 0; i < ndim(); ++i) {
        int m = multi[i];
        if (m < 0 || m >= dims_[i]) {
            throw IndexError(fmt::format("grid multi-index {} out of range on axis {}", m, i));
        }
        idx += m * strides_[i];
    }
    return idx;
}

std::vector<int> PeriodicGrid::multi(int linear) const {
    check_index(linear);
    std::vector<int> m(dims_.size());
    for (int i = 0; i < ndim(); ++i) {
        m[i] = linear / strides_[i];
        linear -= m[i] * strides_[i];
    }
    return m;
}

std::vector<double> PeriodicGrid::position(int linear) const {
    auto m = multi(linear);
    std::vector<double> p(m.size());
    for (int i = 0; i < ndim(); ++i) p[i] = m[i] * spacing(i);
    return p;
}

int PeriodicGrid::shifted(int linear, std::span<const int> offset) const {
    auto m = multi(linear);
    for (int i = 0; i < ndim(); ++i) {
        int n = dims_[i];
        int v = (m[i] + offset[i]) % n;
        if (v < 0) v += n;
        m[i] = v;
    }
    return this->linear(m);
}

std::vector<double> PeriodicGrid::wrap_displacement(int from, int to) const {
    auto a = multi(from);
    auto b = multi(to);
    std::vector<double> d(a.size());
    for (int i = 0; i < ndim(); ++i) {
        int n = dims_[i];
        int fwd = b[i] - a[i];
        fwd %= n;
        if (fwd < 0) fwd += n;           // fwd in [0, n)
        int cells = (2 * fwd <= n) ? fwd : fwd - n;  // ties at n/2 stay positive
        d[i] = cells * spacing(i);
    }
    return d;
}

GridFunction::GridFunction(PeriodicGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != grid_.size()) {
        throw DimensionError(fmt::format("grid function: {} values for {} grid points",
                                         values_.size(), grid_.size()));
    }
    check_finite();
}

GridFunction::GridFunction(PeriodicGrid grid, double fill)
    : grid_(std::move(grid)), values_(grid_.size(), fill) {
    check_finite();
}

void GridFunction::check_finite() const {
    for (double v : values_) {
        if (!std::isfinite(v)) throw ModelError("grid function holds a non-finite value");
    }
}

GridFunction normalize(const GridFunction& u, int anchor) {
    u.grid().check_index(anchor);
    GridFunction out = u;
    const double a = u[anchor];
    for (double& v : out.values()) v -= a;
    out[anchor] = 0.0;
    return out;
}

double sup_distance(const GridFunction& a, const GridFunction& b) {
    if (!(a.grid() == b.grid())) throw DimensionError("sup_distance: grid mismatch");
    double m = 0.0;
    for (int i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace weakkam
