#pragma once

#include <span>
#include <vector>

#include "weakkam/errors.hpp"

namespace weakkam {

/// Uniform periodic grid on a product of circles. Points on axis i sit at
/// k * lengths[i] / dims[i], k = 0..dims[i]-1. Multi-indices are linearized
/// row-major (last axis fastest).
class PeriodicGrid {
public:
    PeriodicGrid(std::vector<int> dims, std::vector<double> lengths);

    int ndim() const { return static_cast<int>(dims_.size()); }
    int size() const { return size_; }
    const std::vector<int>& dims() const { return dims_; }
    const std::vector<double>& lengths() const { return lengths_; }
    double spacing(int axis) const { return lengths_[axis] / dims_[axis]; }

    int linear(std::span<const int> multi) const;
    std::vector<int> multi(int linear) const;
    std::vector<double> position(int linear) const;

    /// Linear index of the point reached from `linear` by the per-axis
    /// integer offset, with wraparound.
    int shifted(int linear, std::span<const int> offset) const;

    /// Minimal-magnitude signed physical displacement per axis taking `from`
    /// to `to`; half-period ties break toward the positive sign.
    std::vector<double> wrap_displacement(int from, int to) const;

    void check_index(int linear) const;

    bool operator==(const PeriodicGrid&) const = default;

private:
    std::vector<int> dims_;
    std::vector<double> lengths_;
    std::vector<int> strides_;
    int size_ = 0;
};

/// Real values on a periodic grid, one per point, row-major order.
class GridFunction {
public:
    /// Placeholder on a minimal grid; assign before use.
    GridFunction() : grid_({3}, {1.0}), values_(3, 0.0) {}
    GridFunction(PeriodicGrid grid, std::vector<double> values);
    GridFunction(PeriodicGrid grid, double fill = 0.0);

    const PeriodicGrid& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }
    int size() const { return static_cast<int>(values_.size()); }

    double operator[](int i) const { return values_[i]; }
    double& operator[](int i) { return values_[i]; }

    void check_finite() const;

private:
    PeriodicGrid grid_;
    std::vector<double> values_;
};

/// u - u(anchor); the result is exactly zero at the anchor.
GridFunction normalize(const GridFunction& u, int anchor);

double sup_distance(const GridFunction& a, const GridFunction& b);

}  // namespace weakkam
