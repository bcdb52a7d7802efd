#pragma once

// Reference trajectories, measurement functions and noise injection.

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "topo_recon/error.hpp"
#include "topo_recon/random.hpp"

namespace topo_recon {

struct OdeParams {
    double r = 28.0;
    double b = 8.0 / 3.0;
    double sigma = 10.0;
};

// Ordered sequence of d-dimensional states sampled every `dt` time units.
class Trajectory {
public:
    Trajectory(std::size_t dim, double dt) : dim_(dim), dt_(dt) {
        if (dim == 0) throw InvalidArgument("trajectory dimension must be positive");
        if (!(dt > 0.0)) throw InvalidArgument("trajectory dt must be positive");
    }

    std::size_t dim() const noexcept { return dim_; }
    double dt() const noexcept { return dt_; }
    std::size_t size() const noexcept { return coords_.size() / dim_; }
    bool empty() const noexcept { return coords_.empty(); }

    std::span<const double> point(std::size_t i) const {
        return {coords_.data() + i * dim_, dim_};
    }

    void push_back(std::span<const double> p) {
        if (p.size() != dim_) throw InvalidArgument("state has wrong dimension");
        coords_.insert(coords_.end(), p.begin(), p.end());
    }

    const std::vector<double>& coords() const noexcept { return coords_; }

private:
    std::size_t dim_;
    double dt_;
    std::vector<double> coords_;
};

// Uniformly sampled scalar measurement x(t).
struct ScalarSeries {
    std::vector<double> values;
    double sample_interval = 1.0;

    std::size_t size() const noexcept { return values.size(); }
};

// Projection onto one state coordinate.
struct MeasurementFn {
    std::size_t coordinate = 0;

    // Accepts "x", "y", "z" or a decimal coordinate index.
    static MeasurementFn parse(const std::string& name) {
        if (name == "x") return {0};
        if (name == "y") return {1};
        if (name == "z") return {2};
        std::size_t pos = 0;
        unsigned long idx = 0;
        try {
            idx = std::stoul(name, &pos);
        } catch (const std::exception&) {
            throw InvalidArgument("unknown measurement selector '" + name + "'");
        }
        if (pos != name.size()) throw InvalidArgument("unknown measurement selector '" + name + "'");
        return {static_cast<std::size_t>(idx)};
    }
};

template <typename Real>
using Vec3 = std::array<Real, 3>;

template <typename Real>
Vec3<Real> lorenz_rhs(const OdeParams& p, const Vec3<Real>& s) {
    const Real sigma = static_cast<Real>(p.sigma);
    const Real r = static_cast<Real>(p.r);
    const Real b = static_cast<Real>(p.b);
    return {sigma * (s[1] - s[0]), s[0] * (r - s[2]) - s[1], s[0] * s[1] - b * s[2]};
}

// One classical fourth-order Runge-Kutta step of y' = f(y).
template <typename Real, std::size_t N, typename Rhs>
std::array<Real, N> rk4_step(Rhs&& f, const std::array<Real, N>& y, Real h) {
    auto axpy = [](const std::array<Real, N>& a, Real s, const std::array<Real, N>& x) {
        std::array<Real, N> out;
        for (std::size_t i = 0; i < N; ++i) out[i] = a[i] + s * x[i];
        return out;
    };
    const auto k1 = f(y);
    const auto k2 = f(axpy(y, h / 2, k1));
    const auto k3 = f(axpy(y, h / 2, k2));
    const auto k4 = f(axpy(y, h, k3));
    std::array<Real, N> out;
    for (std::size_t i = 0; i < N; ++i) out[i] = y[i] + h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    return out;
}

// Fixed-step RK4 integration of an autonomous system. The first
// `transient_steps` steps are discarded; the returned trajectory holds
// `n_steps` states, starting with the state reached after the transient.
template <std::size_t N, typename Rhs>
Trajectory integrate(Rhs&& f, const std::array<double, N>& ic, double dt, std::size_t n_steps,
                     std::size_t transient_steps = 0) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be positive and finite");
    if (n_steps == 0) throw InvalidArgument("n_steps must be at least 1");

    auto check = [](const std::array<double, N>& s, std::size_t step) {
        for (double v : s)
            if (!std::isfinite(v)) throw IntegrationError(step, "non-finite state");
    };

    std::array<double, N> state = ic;
    check(state, 0);
    std::size_t step = 0;
    for (; step < transient_steps; ++step) {
        state = rk4_step(f, state, dt);
        check(state, step + 1);
    }

    Trajectory traj(N, dt);
    traj.push_back(state);
    for (std::size_t i = 1; i < n_steps; ++i, ++step) {
        state = rk4_step(f, state, dt);
        check(state, step + 1);
        traj.push_back(state);
    }
    return traj;
}

inline Trajectory integrate_lorenz(const OdeParams& params, const Vec3<double>& ic, double dt,
                                   std::size_t n_steps, std::size_t transient_steps = 0) {
    if (!std::isfinite(params.r) || !std::isfinite(params.b) || !std::isfinite(params.sigma))
        throw InvalidArgument("Lorenz parameters must be finite");
    return integrate([&params](const Vec3<double>& s) { return lorenz_rhs(params, s); }, ic, dt,
                     n_steps, transient_steps);
}

inline ScalarSeries observe(const Trajectory& traj, const MeasurementFn& h) {
    if (h.coordinate >= traj.dim())
        throw InvalidArgument("measurement coordinate " + std::to_string(h.coordinate) +
                              " out of range for dimension " + std::to_string(traj.dim()));
    ScalarSeries out;
    out.sample_interval = traj.dt();
    out.values.reserve(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) out.values.push_back(traj.point(i)[h.coordinate]);
    return out;
}

// Adds independent uniform noise on [-nu/2, nu/2] to every sample.
inline ScalarSeries add_uniform_noise(const ScalarSeries& series, double nu, std::uint64_t seed) {
    if (!(nu >= 0.0) || !std::isfinite(nu)) throw InvalidArgument("noise amplitude must be >= 0");
    ScalarSeries out = series;
    if (nu == 0.0) return out;
    Rng rng(seed);
    for (double& v : out.values) v += nu * (rng.uniform01() - 0.5);
    return out;
}

} // namespace topo_recon
