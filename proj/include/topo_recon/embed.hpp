#pragma once

// Delay-coordinate reconstruction and the geometry helpers around it.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "topo_recon/error.hpp"
#include "topo_recon/signal.hpp"

namespace topo_recon {

// Ordered points in R^m, each tagged with the index of the source sample it
// came from. Coordinates are stored row-major.
class PointCloud {
public:
    PointCloud() = default;
    explicit PointCloud(std::size_t dim) : dim_(dim) {
        if (dim == 0) throw InvalidArgument("point cloud dimension must be positive");
    }

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return time_index_.size(); }
    bool empty() const noexcept { return time_index_.empty(); }

    std::span<const double> point(std::size_t i) const {
        return {coords_.data() + i * dim_, dim_};
    }
    std::int64_t time_index(std::size_t i) const { return time_index_[i]; }

    const std::vector<double>& coords() const noexcept { return coords_; }
    const std::vector<std::int64_t>& time_indices() const noexcept { return time_index_; }

    // Appends a point; time indices must be strictly increasing and
    // coordinates finite.
    void push_back(std::int64_t t, std::span<const double> p) {
        if (p.size() != dim_) throw InvalidArgument("point has wrong dimension");
        if (!time_index_.empty() && t <= time_index_.back())
            throw InvalidArgument("time indices must be strictly increasing");
        for (double v : p)
            if (!std::isfinite(v)) throw InvalidArgument("point coordinates must be finite");
        time_index_.push_back(t);
        coords_.insert(coords_.end(), p.begin(), p.end());
    }

    void reserve(std::size_t n) {
        time_index_.reserve(n);
        coords_.reserve(n * dim_);
    }

    friend bool operator==(const PointCloud&, const PointCloud&) = default;

private:
    std::size_t dim_ = 1;
    std::vector<double> coords_;
    std::vector<std::int64_t> time_index_;
};

inline PointCloud to_cloud(const Trajectory& traj) {
    PointCloud cloud(traj.dim());
    cloud.reserve(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i)
        cloud.push_back(static_cast<std::int64_t>(i), traj.point(i));
    return cloud;
}

// Emits (x(t), x(t - tau), ..., x(t - (m-1) tau)) for every t from
// (m_anchor - 1) * tau to the end of the series. Sharing m_anchor across a
// dimension sweep gives every m the same time-index set, so lower-m clouds
// are coordinate prefixes of higher-m clouds.
inline PointCloud delay_embed(const ScalarSeries& series, std::size_t m, std::size_t tau_steps,
                              std::size_t m_anchor) {
    if (m == 0) throw InvalidArgument("embedding dimension must be at least 1");
    if (tau_steps == 0) throw InvalidArgument("delay must be at least 1 sample");
    if (m > m_anchor) throw InvalidArgument("m must not exceed m_anchor");
    const std::size_t start = (m_anchor - 1) * tau_steps;
    if (series.size() <= start)
        throw InvalidArgument("series of length " + std::to_string(series.size()) +
                              " too short for m_anchor=" + std::to_string(m_anchor) +
                              ", tau=" + std::to_string(tau_steps));

    PointCloud cloud(m);
    cloud.reserve(series.size() - start);
    std::vector<double> p(m);
    for (std::size_t t = start; t < series.size(); ++t) {
        for (std::size_t k = 0; k < m; ++k) p[k] = series.values[t - k * tau_steps];
        cloud.push_back(static_cast<std::int64_t>(t), p);
    }
    return cloud;
}

// Keeps the first m_target coordinates of every point.
inline PointCloud project(const PointCloud& cloud, std::size_t m_target) {
    if (m_target == 0 || m_target > cloud.dim())
        throw InvalidArgument("cannot project a " + std::to_string(cloud.dim()) +
                              "-dimensional cloud to " + std::to_string(m_target) + " dimensions");
    if (m_target == cloud.dim()) return cloud;
    PointCloud out(m_target);
    out.reserve(cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i)
        out.push_back(cloud.time_index(i), cloud.point(i).first(m_target));
    return out;
}

// Length of the diagonal of the axis-aligned bounding box.
inline double bbox_diameter(const PointCloud& cloud) {
    if (cloud.empty()) throw InvalidArgument("diameter of an empty cloud");
    const std::size_t m = cloud.dim();
    std::vector<double> lo(cloud.point(0).begin(), cloud.point(0).end());
    std::vector<double> hi = lo;
    for (std::size_t i = 1; i < cloud.size(); ++i) {
        auto p = cloud.point(i);
        for (std::size_t k = 0; k < m; ++k) {
            lo[k] = std::min(lo[k], p[k]);
            hi[k] = std::max(hi[k], p[k]);
        }
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < m; ++k) sum += (hi[k] - lo[k]) * (hi[k] - lo[k]);
    return std::sqrt(sum);
}

struct ScaleParams {
    double xi = 0.0;
    double epsilon = 0.0;
    double diameter = 0.0;
};

inline ScaleParams epsilon_from_xi(double xi, const PointCloud& cloud) {
    if (!(xi >= 0.0)) throw InvalidArgument("xi must be >= 0");
    const double diam = bbox_diameter(cloud);
    return {xi, xi * diam, diam};
}

// Average mutual information (bits) between x(t) and x(t + tau) for
// tau = 0..tau_max, estimated on an equal-width histogram.
struct AmiCurve {
    std::vector<double> values;
    std::size_t bins = 0;
};

// 64 bins once there is enough data, otherwise the cube-root rule.
inline std::size_t default_ami_bins(std::size_t n) {
    if (n >= 10000) return 64;
    const auto b = static_cast<std::size_t>(std::ceil(std::cbrt(static_cast<double>(n))));
    return std::max<std::size_t>(b, 2);
}

namespace detail {

inline std::vector<std::uint32_t> bin_series(std::span<const double> x, std::size_t bins) {
    const auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
    const double lo = *lo_it, hi = *hi_it;
    if (!(hi > lo)) throw DegenerateInput("series is constant; histogram has zero width");
    const double scale = static_cast<double>(bins) / (hi - lo);
    std::vector<std::uint32_t> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        auto b = static_cast<std::size_t>((x[i] - lo) * scale);
        out[i] = static_cast<std::uint32_t>(std::min(b, bins - 1));
    }
    return out;
}

// Mutual information in bits of the pair population (a[i], b[i]).
inline double mutual_information(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                                 std::size_t bins) {
    std::vector<std::uint64_t> joint(bins * bins, 0), pa(bins, 0), pb(bins, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        ++joint[a[i] * bins + b[i]];
        ++pa[a[i]];
        ++pb[b[i]];
    }
    const double n = static_cast<double>(a.size());
    double mi = 0.0;
    for (std::size_t i = 0; i < bins; ++i) {
        for (std::size_t j = 0; j < bins; ++j) {
            const std::uint64_t c = joint[i * bins + j];
            if (c == 0) continue;
            const double pij = static_cast<double>(c) / n;
            mi += pij * std::log2(static_cast<double>(c) * n /
                                  (static_cast<double>(pa[i]) * static_cast<double>(pb[j])));
        }
    }
    return std::max(mi, 0.0);
}

} // namespace detail

inline AmiCurve ami_curve(const ScalarSeries& series, std::size_t tau_max, std::size_t bins) {
    if (bins < 2) throw InvalidArgument("AMI needs at least 2 bins");
    if (tau_max >= series.size()) throw InvalidArgument("tau_max must be below the series length");
    const auto binned = detail::bin_series(series.values, bins);
    const std::span<const std::uint32_t> all(binned);

    AmiCurve curve;
    curve.bins = bins;
    curve.values.reserve(tau_max + 1);
    for (std::size_t tau = 0; tau <= tau_max; ++tau) {
        const std::size_t n = binned.size() - tau;
        curve.values.push_back(detail::mutual_information(all.first(n), all.subspan(tau, n), bins));
    }
    return curve;
}

// Smallest tau >= 1 with v[tau] < v[tau-1] and v[tau] <= v[tau+1];
// nullopt when the curve has no such point.
inline std::optional<std::size_t> first_minimum(const AmiCurve& curve) {
    const auto& v = curve.values;
    if (v.size() < 3) throw InvalidArgument("AMI curve needs at least 3 values");
    for (std::size_t tau = 1; tau + 1 < v.size(); ++tau)
        if (v[tau] < v[tau - 1] && v[tau] <= v[tau + 1]) return tau;
    return std::nullopt;
}

} // namespace topo_recon
