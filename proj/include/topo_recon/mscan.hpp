#pragma once

// Sweeps over embedding dimension: per-edge existence across m, edge
// lifespans, dimension barcodes and the lifespan (Delta m) filtration.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <set>
#include <vector>

#include "topo_recon/embed.hpp"
#include "topo_recon/error.hpp"
#include "topo_recon/landmarks.hpp"
#include "topo_recon/persistence.hpp"
#include "topo_recon/witness.hpp"

namespace topo_recon {

// Bit m-1 set <=> the edge exists at dimension m. Limits sweeps to m <= 32.
using DimensionMask = std::uint32_t;
inline constexpr std::size_t kMaxSweepDimension = 32;

struct EdgeExistence {
    std::uint32_t i = 0;
    std::uint32_t j = 0;
    DimensionMask mask = 0;
};

struct SweepLevel {
    std::size_t m = 0;
    double diameter = 0.0;
    double epsilon = 0.0;
    EdgeFiltration births; // capped at epsilon
};

struct DimensionSweep {
    std::size_t m_max = 0;
    double xi = 0.0;
    std::vector<std::size_t> landmark_indices; // shared by every m
    std::vector<std::int64_t> landmark_times;
    std::vector<SweepLevel> levels;            // levels[m - 1]
    std::vector<EdgeExistence> existence;      // edges existing for some m, sorted by (i, j)

    std::size_t num_landmarks() const noexcept { return landmark_indices.size(); }
};

struct SweepOptions {
    unsigned threads = 1;
};

// Sweep over a full-dimensional cloud: level m uses its first m coordinates.
// For a delay reconstruction anchored at m_max this is exactly the
// per-dimension reconstruction, since those are coordinate prefixes.
inline DimensionSweep sweep_cloud(const PointCloud& cloud, std::vector<std::size_t> landmark_indices,
                                  double xi, const SweepOptions& opt = {}) {
    const std::size_t m_max = cloud.dim();
    if (m_max > kMaxSweepDimension) throw InvalidArgument("dimension sweeps are limited to m <= 32");
    if (!(xi >= 0.0)) throw InvalidArgument("xi must be >= 0");
    if (landmark_indices.empty()) throw InvalidArgument("sweep needs at least one landmark");

    DimensionSweep sweep;
    sweep.m_max = m_max;
    sweep.xi = xi;
    const LandmarkSet full = landmarks_at(cloud, std::move(landmark_indices));
    sweep.landmark_indices = full.indices;
    sweep.landmark_times = full.coords.time_indices();

    std::vector<DimensionMask> masks;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> keys;
    for (std::size_t m = 1; m <= m_max; ++m) {
        const PointCloud w = project(cloud, m);
        const PointCloud l = project(full.coords, m);
        SweepLevel level;
        level.m = m;
        level.diameter = bbox_diameter(w);
        level.epsilon = xi * level.diameter;
        level.births = edge_births(w, l, {level.epsilon, opt.threads});
        sweep.levels.push_back(std::move(level));
    }

    // merge per-level edge lists (each sorted by (i, j))
    std::vector<EdgeExistence> merged;
    for (const auto& level : sweep.levels) {
        const DimensionMask bit = DimensionMask{1} << (level.m - 1);
        std::vector<EdgeExistence> next;
        next.reserve(merged.size() + level.births.edges.size());
        auto a = merged.begin();
        auto b = level.births.edges.begin();
        while (a != merged.end() || b != level.births.edges.end()) {
            const bool take_b =
                a == merged.end() ||
                (b != level.births.edges.end() && std::pair{b->i, b->j} <= std::pair{a->i, a->j});
            if (!take_b) {
                next.push_back(*a++);
                continue;
            }
            const bool alive = b->birth <= level.epsilon;
            if (a != merged.end() && a->i == b->i && a->j == b->j) {
                next.push_back(*a++);
                if (alive) next.back().mask |= bit;
            } else if (alive) {
                next.push_back({b->i, b->j, bit});
            }
            ++b;
        }
        merged.swap(next);
    }
    sweep.existence = std::move(merged);
    return sweep;
}

// Delay reconstructions m = 1..m_max of one series, all anchored at m_max,
// with landmarks every `every` samples of the shared time-index set.
inline DimensionSweep sweep(const ScalarSeries& series, std::size_t tau_steps, double xi,
                            std::size_t every, std::size_t m_max, const SweepOptions& opt = {}) {
    if (m_max < 1) throw InvalidArgument("m_max must be at least 1");
    const PointCloud cloud = delay_embed(series, m_max, tau_steps, m_max);
    return sweep_cloud(cloud, select_evenly_spaced(cloud, every).indices, xi, opt);
}

// Longest run of consecutive dimensions in the mask.
inline std::size_t lifespan(DimensionMask mask) {
    std::size_t best = 0;
    while (mask) {
        mask >>= std::countr_zero(mask);
        const auto run = static_cast<std::size_t>(std::countr_one(mask));
        best = std::max(best, run);
        if (run >= 32) break;
        mask >>= run;
    }
    return best;
}

inline std::size_t lifespan(const std::set<std::size_t>& dims) {
    std::size_t best = 0, run = 0;
    std::size_t prev = 0;
    for (std::size_t m : dims) {
        run = (run > 0 && m == prev + 1) ? run + 1 : 1;
        best = std::max(best, run);
        prev = m;
    }
    return best;
}

inline std::set<std::size_t> mask_to_set(DimensionMask mask) {
    std::set<std::size_t> out;
    for (std::size_t m = 1; m <= kMaxSweepDimension; ++m)
        if (mask & (DimensionMask{1} << (m - 1))) out.insert(m);
    return out;
}

// Symmetric l x l matrix of edge lifespans; 0 for edges that never exist.
class LifespanMatrix {
public:
    explicit LifespanMatrix(std::size_t ell) : ell_(ell), data_(ell * ell, 0) {}

    std::size_t size() const noexcept { return ell_; }
    std::uint32_t operator()(std::size_t i, std::size_t j) const { return data_[i * ell_ + j]; }
    void set(std::size_t i, std::size_t j, std::uint32_t v) {
        data_[i * ell_ + j] = v;
        data_[j * ell_ + i] = v;
    }

    // Number of unordered edges with the given lifespan.
    std::size_t count(std::uint32_t value) const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < ell_; ++i)
            for (std::size_t j = i + 1; j < ell_; ++j)
                if ((*this)(i, j) == value) ++c;
        return c;
    }

private:
    std::size_t ell_;
    std::vector<std::uint32_t> data_;
};

inline LifespanMatrix lifespan_matrix(const DimensionSweep& sw) {
    LifespanMatrix lm(sw.num_landmarks());
    for (const auto& e : sw.existence) lm.set(e.i, e.j, static_cast<std::uint32_t>(lifespan(e.mask)));
    return lm;
}

// One maximal run [m_birth, m_death) of an edge's existence.
struct DimensionInterval {
    std::uint32_t partner = 0;
    std::size_t m_birth = 0;
    std::size_t m_death = 0;   // first dimension without the edge; m_max + 1 if none
    bool alive_at_max = false; // still present at m_max

    // Born at the (m_birth - 1) -> m_birth transition rather than present
    // from m = 1.
    bool born_in_sweep() const noexcept { return m_birth > 1; }
};

inline std::vector<DimensionInterval> mask_intervals(std::uint32_t partner, DimensionMask mask,
                                                     std::size_t m_max) {
    std::vector<DimensionInterval> out;
    std::size_t m = 1;
    while (m <= m_max) {
        if (!(mask & (DimensionMask{1} << (m - 1)))) {
            ++m;
            continue;
        }
        const std::size_t start = m;
        while (m <= m_max && (mask & (DimensionMask{1} << (m - 1)))) ++m;
        out.push_back({partner, start, m, m == m_max + 1});
    }
    return out;
}

// Existence intervals over m of every edge incident to `landmark`, ordered by
// partner index.
inline std::vector<DimensionInterval> dimension_barcode(const DimensionSweep& sw, std::size_t landmark) {
    if (landmark >= sw.num_landmarks()) throw InvalidArgument("landmark index out of range");
    std::vector<DimensionInterval> out;
    for (const auto& e : sw.existence) {
        if (e.i != landmark && e.j != landmark) continue;
        const std::uint32_t partner = e.i == landmark ? e.j : e.i;
        auto ivs = mask_intervals(partner, e.mask, sw.m_max);
        out.insert(out.end(), ivs.begin(), ivs.end());
    }
    std::stable_sort(out.begin(), out.end(), [](const DimensionInterval& a, const DimensionInterval& b) {
        return a.partner < b.partner;
    });
    return out;
}

struct DmFiltration {
    std::size_t m_max = 0;
    // levels[k] = edges with lifespan >= k, for k = 0..m_max+1 (levels[0]
    // is unused and equals levels[1]).
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> levels;
    bool nested = true;
    EdgeFiltration edges; // filtration value m_max - lifespan
    Barcode barcode;      // over that value; lifespan = m_max - value

    static double value_of(std::size_t m_max, std::size_t lifespan) {
        return static_cast<double>(m_max) - static_cast<double>(lifespan);
    }
};

inline DmFiltration dm_filtration(const DimensionSweep& sw, std::size_t dim_cap = 2) {
    DmFiltration out;
    out.m_max = sw.m_max;
    out.levels.resize(sw.m_max + 2);
    out.edges.vertex_birth.assign(sw.num_landmarks(), 0.0);
    for (const auto& e : sw.existence) {
        const std::size_t span = lifespan(e.mask);
        if (span == 0) continue;
        for (std::size_t k = 0; k <= span; ++k) out.levels[k].emplace_back(e.i, e.j);
        out.edges.edges.push_back({e.i, e.j, DmFiltration::value_of(sw.m_max, span), 0});
    }
    for (std::size_t k = 2; k < out.levels.size(); ++k) {
        std::set<std::pair<std::uint32_t, std::uint32_t>> lower(out.levels[k - 1].begin(),
                                                                out.levels[k - 1].end());
        for (const auto& e : out.levels[k])
            if (!lower.count(e)) out.nested = false;
    }
    out.barcode = persistent_homology(flag_expand(out.edges, dim_cap));
    return out;
}

// A run of nonzero lifespans along a diagonal: (i, j), (i+1, j+1), ...
struct DiagonalRun {
    std::size_t i = 0;
    std::size_t j = 0;
    std::size_t length = 0;
    std::uint32_t min_lifespan = 0;
};

inline std::vector<DiagonalRun> diagonal_runs(const LifespanMatrix& lm, std::size_t min_length = 2) {
    std::vector<DiagonalRun> out;
    const std::size_t n = lm.size();
    for (std::size_t offset = 1; offset < n; ++offset) {
        std::size_t i = 0;
        while (i + offset < n) {
            if (lm(i, i + offset) == 0) {
                ++i;
                continue;
            }
            DiagonalRun run{i, i + offset, 0, UINT32_MAX};
            while (i + offset < n && lm(i, i + offset) != 0) {
                run.min_lifespan = std::min(run.min_lifespan, lm(i, i + offset));
                ++run.length;
                ++i;
            }
            if (run.length >= min_length) out.push_back(run);
        }
    }
    return out;
}

} // namespace topo_recon
