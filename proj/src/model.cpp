#include "weakkam/model.hpp"

#include <cmath>
#include <fmt/format.h>

namespace weakkam {

double CosinePotential::eval(std::span<const double> x) const {
    return std::cos(x[0]);
}

TabulatedPotential::TabulatedPotential(GridFunction samples) : samples_(std::move(samples)) {}

double TabulatedPotential::eval(std::span<const double> x) const {
    const PeriodicGrid& g = samples_.grid();
    const int d = g.ndim();
    if (static_cast<int>(x.size()) != d) {
        throw DimensionError("tabulated potential: position dimension mismatch");
    }
    // Multilinear interpolation with periodic wraparound.
    std::vector<int> base(d);
    std::vector<double> frac(d);
    for (int i = 0; i < d; ++i) {
        const double sp = g.spacing(i);
        double t = x[i] / sp;
        double f = std::floor(t);
        frac[i] = t - f;
        int b = static_cast<int>(f) % g.dims()[i];
        if (b < 0) b += g.dims()[i];
        base[i] = b;
    }
    double acc = 0.0;
    const int corners = 1 << d;
    std::vector<int> idx(d);
    for (int c = 0; c < corners; ++c) {
        double w = 1.0;
        for (int i = 0; i < d; ++i) {
            const bool hi = (c >> i) & 1;
            w *= hi ? frac[i] : 1.0 - frac[i];
            idx[i] = hi ? (base[i] + 1) % g.dims()[i] : base[i];
        }
        if (w != 0.0) acc += w * samples_[g.linear(idx)];
    }
    return acc;
}

LagrangianModel::LagrangianModel(std::shared_ptr<const Potential> potential,
                                 std::vector<double> kinetic,
                                 std::vector<double> shift)
    : potential_(std::move(potential)),
      kinetic_(std::move(kinetic)),
      shift_(std::move(shift)) {
    if (!potential_) throw ConfigError("model: null potential");
    if (kinetic_.empty()) throw ConfigError("model: empty kinetic coefficients");
    for (double m : kinetic_) {
        if (!(m > 0.0)) throw ConfigError("model: kinetic form must be positive definite");
    }
    if (shift_.empty()) shift_.assign(kinetic_.size(), 0.0);
    if (shift_.size() != kinetic_.size()) {
        throw ConfigError("model: shift dimension mismatch");
    }
}

double LagrangianModel::eval(std::span<const double> x, std::span<const double> v) const {
    double kin = 0.0, pv = 0.0;
    for (int i = 0; i < ndim(); ++i) {
        kin += 0.5 * kinetic_[i] * v[i] * v[i];
        pv += shift_[i] * v[i];
    }
    const double val = kin - potential_->eval(x) - pv;
    if (!std::isfinite(val)) {
        throw ModelError("Lagrangian evaluated to a non-finite value");
    }
    return val;
}

std::vector<double> LagrangianModel::velocity_gradient(std::span<const double> x,
                                                       std::span<const double> v,
                                                       double step) const {
    std::vector<double> g(ndim());
    std::vector<double> vv(v.begin(), v.end());
    for (int i = 0; i < ndim(); ++i) {
        const double save = vv[i];
        vv[i] = save + step;
        const double hi = eval(x, vv);
        vv[i] = save - step;
        const double lo = eval(x, vv);
        vv[i] = save;
        g[i] = (hi - lo) / (2.0 * step);
    }
    return g;
}

HamiltonianModel::HamiltonianModel(const LagrangianModel& model)
    : potential_(model.potential_ptr()),
      kinetic_(model.kinetic()),
      shift_(model.shift()) {}

double HamiltonianModel::eval(std::span<const double> x, std::span<const double> p) const {
    double kin = 0.0;
    for (std::size_t i = 0; i < kinetic_.size(); ++i) {
        const double q = p[i] + shift_[i];
        kin += 0.5 * q * q / kinetic_[i];
    }
    const double val = kin + potential_->eval(x);
    if (!std::isfinite(val)) throw ModelError("Hamiltonian evaluated to a non-finite value");
    return val;
}

double HamiltonianModel::check_convexity(std::span<const double> x, double pmax, int samples) const {
    const int d = static_cast<int>(kinetic_.size());
    const double dp = 2.0 * pmax / (samples - 1);
    double worst = 0.0;
    std::vector<double> p(d, 0.0);
    for (int axis = 0; axis < d; ++axis) {
        for (int j = 1; j + 1 < samples; ++j) {
            p[axis] = -pmax + (j - 1) * dp;
            const double a = eval(x, p);
            p[axis] = -pmax + j * dp;
            const double b = eval(x, p);
            p[axis] = -pmax + (j + 1) * dp;
            const double c = eval(x, p);
            worst = std::min(worst, a - 2.0 * b + c);
        }
        p[axis] = 0.0;
    }
    return worst;
}

double check_superlinearity(const LagrangianModel& model, double K, const SampleBox& box) {
    const int d = model.ndim();
    const int n = box.samples_per_axis;
    if (static_cast<int>(box.x_lo.size()) != d || static_cast<int>(box.v_lo.size()) != d) {
        throw DimensionError("superlinearity box dimension mismatch");
    }
    std::vector<double> x(d), v(d);
    double best = std::numeric_limits<double>::infinity();
    // Walk the full x-v product lattice.
    std::vector<int> idx(2 * d, 0);
    const long total = static_cast<long>(std::pow(static_cast<double>(n), 2 * d));
    for (long it = 0; it < total; ++it) {
        long rem = it;
        for (int i = 0; i < 2 * d; ++i) {
            idx[i] = static_cast<int>(rem % n);
            rem /= n;
        }
        double vnorm2 = 0.0;
        for (int i = 0; i < d; ++i) {
            x[i] = box.x_lo[i] + (box.x_hi[i] - box.x_lo[i]) * idx[i] / (n - 1);
            v[i] = box.v_lo[i] + (box.v_hi[i] - box.v_lo[i]) * idx[d + i] / (n - 1);
            vnorm2 += v[i] * v[i];
        }
        best = std::min(best, model.eval(x, v) - K * std::sqrt(vnorm2));
    }
    return best;
}

}  // namespace weakkam
