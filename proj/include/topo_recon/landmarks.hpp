#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "topo_recon/embed.hpp"
#include "topo_recon/error.hpp"
#include "topo_recon/random.hpp"

namespace topo_recon {

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        s += d * d;
    }
    return s;
}

inline double distance(std::span<const double> a, std::span<const double> b) {
    return std::sqrt(squared_distance(a, b));
}

// Landmark vertex set chosen from a witness cloud.
struct LandmarkSet {
    std::vector<std::size_t> indices; // positions in the witness cloud, strictly increasing
    PointCloud coords;                // landmark points, carrying their source time indices
    std::size_t spacing = 0;          // sample spacing for even selection, 0 for max-min

    std::size_t size() const noexcept { return indices.size(); }
};

// Builds a landmark set from cloud positions (must be strictly increasing).
inline LandmarkSet landmarks_at(const PointCloud& cloud, std::vector<std::size_t> indices,
                                std::size_t spacing = 0) {
    LandmarkSet out;
    out.coords = PointCloud(cloud.dim());
    out.coords.reserve(indices.size());
    for (std::size_t k = 0; k < indices.size(); ++k) {
        if (indices[k] >= cloud.size()) throw InvalidArgument("landmark index out of range");
        if (k > 0 && indices[k] <= indices[k - 1])
            throw InvalidArgument("landmark indices must be strictly increasing");
        out.coords.push_back(cloud.time_index(indices[k]), cloud.point(indices[k]));
    }
    out.indices = std::move(indices);
    out.spacing = spacing;
    return out;
}

// Every `every`-th witness, starting with the first.
inline LandmarkSet select_evenly_spaced(const PointCloud& cloud, std::size_t every) {
    if (every == 0) throw InvalidArgument("landmark spacing must be at least 1");
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < cloud.size(); i += every) idx.push_back(i);
    return landmarks_at(cloud, std::move(idx), every);
}

struct MaxMinResult {
    LandmarkSet landmarks;
    // Distance from each pick (in pick order) to the picks before it; the
    // first entry is +inf.
    std::vector<double> radii;
};

// Greedy farthest-point sampling. The first landmark is a seeded uniform
// draw; ties go to the lowest cloud index.
inline MaxMinResult select_maxmin_detailed(const PointCloud& cloud, std::size_t ell,
                                           std::uint64_t seed) {
    const std::size_t n = cloud.size();
    if (ell == 0) throw InvalidArgument("need at least one landmark");
    if (ell > n)
        throw InvalidArgument("requested " + std::to_string(ell) + " landmarks from a cloud of " +
                              std::to_string(n) + " points");

    Rng rng(seed);
    std::vector<std::size_t> picks;
    picks.reserve(ell);
    std::vector<double> radii;
    radii.reserve(ell);
    std::vector<double> min_d2(n, std::numeric_limits<double>::infinity());
    std::vector<char> chosen(n, 0);

    std::size_t next = static_cast<std::size_t>(rng.below(n));
    radii.push_back(std::numeric_limits<double>::infinity());
    for (;;) {
        picks.push_back(next);
        chosen[next] = 1;
        if (picks.size() == ell) break;
        const auto p = cloud.point(next);
        std::size_t best = n;
        double best_d2 = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (chosen[i]) continue;
            min_d2[i] = std::min(min_d2[i], squared_distance(cloud.point(i), p));
            if (min_d2[i] > best_d2) {
                best_d2 = min_d2[i];
                best = i;
            }
        }
        next = best;
        radii.push_back(std::sqrt(best_d2));
    }

    std::sort(picks.begin(), picks.end());
    return {landmarks_at(cloud, std::move(picks), 0), std::move(radii)};
}

inline LandmarkSet select_maxmin(const PointCloud& cloud, std::size_t ell, std::uint64_t seed) {
    return select_maxmin_detailed(cloud, ell, seed).landmarks;
}

// Same cloud positions, coordinates taken from another cloud (e.g. a
// projection or a higher-dimensional lift sharing the time-index set).
inline LandmarkSet relocate(const LandmarkSet& landmarks, const PointCloud& cloud) {
    return landmarks_at(cloud, landmarks.indices, landmarks.spacing);
}

} // namespace topo_recon
