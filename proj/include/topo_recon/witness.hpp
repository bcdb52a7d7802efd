#pragma once

// Fuzzy witness relation in sublevel-set form, and its clique expansion.
//
// A witness w belongs to W_eps(l) when |w - l| <= n(w) + eps, with n(w) the
// distance from w to its nearest landmark. Two landmarks share a witness at
// scale eps exactly when
//
//   edge_birth(i, j) = min_w ( max(|w - l_i|, |w - l_j|) - n(w) ) <= eps,
//
// so one pass over the witnesses yields the lazy (clique) complex at every
// scale at once.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <thread>
#include <unordered_map>
#include <vector>

#include "topo_recon/embed.hpp"
#include "topo_recon/error.hpp"
#include "topo_recon/landmarks.hpp"

namespace topo_recon {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// |W| x |L| Euclidean distances plus each witness's nearest-landmark distance.
class DistanceMatrix {
public:
    DistanceMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols), nearest_(rows) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double operator()(std::size_t w, std::size_t l) const { return entries_[w * cols_ + l]; }
    std::span<const double> row(std::size_t w) const { return {entries_.data() + w * cols_, cols_}; }
    double nearest(std::size_t w) const { return nearest_[w]; }

    std::span<double> mutable_row(std::size_t w) { return {entries_.data() + w * cols_, cols_}; }
    void set_nearest(std::size_t w, double v) { nearest_[w] = v; }

private:
    std::size_t rows_, cols_;
    std::vector<double> entries_;
    std::vector<double> nearest_;
};

namespace detail {

inline void check_compatible(const PointCloud& witnesses, const PointCloud& landmarks) {
    if (witnesses.empty()) throw InvalidArgument("witness set is empty");
    if (landmarks.empty()) throw InvalidArgument("landmark set is empty");
    if (witnesses.dim() != landmarks.dim())
        throw InvalidArgument("witnesses are " + std::to_string(witnesses.dim()) +
                              "-dimensional but landmarks are " + std::to_string(landmarks.dim()) +
                              "-dimensional");
}

// Fills `row` with distances from w to every landmark; returns the minimum.
inline double distance_row(std::span<const double> w, const PointCloud& landmarks,
                           std::span<double> row) {
    double nearest = kInfinity;
    for (std::size_t l = 0; l < landmarks.size(); ++l) {
        row[l] = distance(w, landmarks.point(l));
        nearest = std::min(nearest, row[l]);
    }
    return nearest;
}

} // namespace detail

inline DistanceMatrix distance_matrix(const PointCloud& witnesses, const PointCloud& landmarks) {
    detail::check_compatible(witnesses, landmarks);
    DistanceMatrix dm(witnesses.size(), landmarks.size());
    for (std::size_t w = 0; w < witnesses.size(); ++w)
        dm.set_nearest(w, detail::distance_row(witnesses.point(w), landmarks, dm.mutable_row(w)));
    return dm;
}

inline DistanceMatrix distance_matrix(const PointCloud& witnesses, const LandmarkSet& landmarks) {
    return distance_matrix(witnesses, landmarks.coords);
}

struct Edge {
    std::uint32_t i = 0; // i < j
    std::uint32_t j = 0;
    double birth = 0.0;
    std::size_t witness = 0; // a witness achieving `birth`

    friend bool operator==(const Edge&, const Edge&) = default;
};

// Vertex and edge birth values of the fuzzy witness relation. Edges whose
// birth exceeds `epsilon_cap` are not stored.
struct EdgeFiltration {
    std::vector<double> vertex_birth;
    std::vector<Edge> edges; // sorted by (i, j)
    double epsilon_cap = kInfinity;

    std::size_t num_vertices() const noexcept { return vertex_birth.size(); }

    // nullopt when the edge is never witnessed (at or below the cap).
    std::optional<double> edge_birth(std::uint32_t a, std::uint32_t b) const {
        const Edge* e = find(a, b);
        return e ? std::optional<double>(e->birth) : std::nullopt;
    }

    const Edge* find(std::uint32_t a, std::uint32_t b) const {
        if (a > b) std::swap(a, b);
        auto it = std::lower_bound(edges.begin(), edges.end(), std::pair{a, b},
                                   [](const Edge& e, const std::pair<std::uint32_t, std::uint32_t>& k) {
                                       return std::pair{e.i, e.j} < k;
                                   });
        if (it == edges.end() || it->i != a || it->j != b) return nullptr;
        return &*it;
    }
};

struct EdgeBirthOptions {
    // Edges born above this scale are dropped, which bounds the work per
    // witness to the landmarks within n(w) + cap.
    double epsilon_cap = kInfinity;
    // 0 = hardware concurrency. Results do not depend on it.
    unsigned threads = 1;
};

namespace detail {

// Per-edge running minimum over a contiguous block of witnesses. Dense
// upper-triangular storage for moderate landmark counts, hashed otherwise.
class BirthAccumulator {
public:
    static constexpr std::size_t kDenseLimit = 4096;
    static constexpr std::size_t kNoWitness = std::numeric_limits<std::size_t>::max();

    explicit BirthAccumulator(std::size_t ell)
        : ell_(ell), vertex_birth_(ell, kInfinity), dense_(ell <= kDenseLimit) {
        if (dense_) {
            birth_.assign(ell * (ell - 1) / 2, kInfinity);
            witness_.assign(birth_.size(), kNoWitness);
        }
    }

    void witness_row(std::size_t w, std::span<const double> row, double nearest, double cap,
                     std::vector<std::pair<double, std::uint32_t>>& scratch) {
        scratch.clear();
        for (std::size_t l = 0; l < ell_; ++l) {
            const double rel = row[l] - nearest;
            if (rel < vertex_birth_[l]) vertex_birth_[l] = rel;
            if (rel <= cap) scratch.emplace_back(row[l], static_cast<std::uint32_t>(l));
        }
        // Sorted by distance, the pair value max(d_a, d_b) - n is set by the
        // farther member, so each landmark proposes one value to all closer ones.
        std::sort(scratch.begin(), scratch.end());
        for (std::size_t q = 1; q < scratch.size(); ++q) {
            const double value = scratch[q].first - nearest;
            const std::uint32_t b = scratch[q].second;
            for (std::size_t p = 0; p < q; ++p) propose(scratch[p].second, b, value, w);
        }
    }

    // Folds a later block into this one. Strict comparison keeps the
    // earliest witness on ties, matching a sequential scan.
    void merge(const BirthAccumulator& later) {
        for (std::size_t l = 0; l < ell_; ++l)
            vertex_birth_[l] = std::min(vertex_birth_[l], later.vertex_birth_[l]);
        if (dense_) {
            for (std::size_t k = 0; k < birth_.size(); ++k)
                if (later.birth_[k] < birth_[k]) {
                    birth_[k] = later.birth_[k];
                    witness_[k] = later.witness_[k];
                }
        } else {
            for (const auto& [key, val] : later.sparse_) {
                auto [it, inserted] = sparse_.try_emplace(key, val);
                if (!inserted && val.first < it->second.first) it->second = val;
            }
        }
    }

    EdgeFiltration finish(double cap) const {
        EdgeFiltration ef;
        ef.vertex_birth = vertex_birth_;
        ef.epsilon_cap = cap;
        if (dense_) {
            std::size_t k = 0;
            for (std::uint32_t i = 0; i < ell_; ++i)
                for (std::uint32_t j = i + 1; j < ell_; ++j, ++k)
                    if (witness_[k] != kNoWitness) ef.edges.push_back({i, j, birth_[k], witness_[k]});
        } else {
            for (const auto& [key, val] : sparse_)
                ef.edges.push_back({static_cast<std::uint32_t>(key >> 32),
                                    static_cast<std::uint32_t>(key & 0xffffffffu), val.first,
                                    val.second});
            std::sort(ef.edges.begin(), ef.edges.end(),
                      [](const Edge& a, const Edge& b) { return std::pair{a.i, a.j} < std::pair{b.i, b.j}; });
        }
        return ef;
    }

private:
    void propose(std::uint32_t a, std::uint32_t b, double value, std::size_t w) {
        if (a > b) std::swap(a, b);
        if (dense_) {
            // row-major upper triangle without the diagonal
            const std::size_t k = a * (2 * ell_ - a - 1) / 2 + (b - a - 1);
            if (value < birth_[k]) {
                birth_[k] = value;
                witness_[k] = w;
            }
        } else {
            const std::uint64_t key = (std::uint64_t{a} << 32) | b;
            auto [it, inserted] = sparse_.try_emplace(key, value, w);
            if (!inserted && value < it->second.first) it->second = {value, w};
        }
    }

    std::size_t ell_;
    std::vector<double> vertex_birth_;
    bool dense_;
    std::vector<double> birth_;
    std::vector<std::size_t> witness_;
    std::unordered_map<std::uint64_t, std::pair<double, std::size_t>> sparse_;
};

inline unsigned resolve_threads(unsigned threads) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    return threads;
}

// Runs `row_fn(w, row, acc, scratch)` over witness blocks, one accumulator
// per block, and merges blocks in witness order.
template <typename RowFn>
EdgeFiltration accumulate_births(std::size_t n_witnesses, std::size_t ell, const EdgeBirthOptions& opt,
                                 RowFn&& row_fn) {
    if (std::isnan(opt.epsilon_cap) || opt.epsilon_cap < 0.0)
        throw InvalidArgument("epsilon cap must be >= 0");
    const unsigned threads = std::min<std::size_t>(resolve_threads(opt.threads), std::max<std::size_t>(n_witnesses, 1));

    auto run_block = [&](std::size_t begin, std::size_t end, BirthAccumulator& acc) {
        std::vector<std::pair<double, std::uint32_t>> scratch;
        scratch.reserve(ell);
        for (std::size_t w = begin; w < end; ++w) row_fn(w, acc, scratch);
    };

    if (threads <= 1) {
        BirthAccumulator acc(ell);
        run_block(0, n_witnesses, acc);
        return acc.finish(opt.epsilon_cap);
    }

    std::vector<BirthAccumulator> blocks;
    blocks.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) blocks.emplace_back(ell);
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t begin = n_witnesses * t / threads;
            const std::size_t end = n_witnesses * (t + 1) / threads;
            pool.emplace_back([&, t, begin, end] { run_block(begin, end, blocks[t]); });
        }
    }
    for (unsigned t = 1; t < threads; ++t) blocks[0].merge(blocks[t]);
    return blocks[0].finish(opt.epsilon_cap);
}

} // namespace detail

inline EdgeFiltration edge_births(const DistanceMatrix& dm, const EdgeBirthOptions& opt = {}) {
    if (dm.rows() == 0 || dm.cols() == 0) throw InvalidArgument("empty distance matrix");
    return detail::accumulate_births(
        dm.rows(), dm.cols(), opt, [&](std::size_t w, detail::BirthAccumulator& acc, auto& scratch) {
            acc.witness_row(w, dm.row(w), dm.nearest(w), opt.epsilon_cap, scratch);
        });
}

// Same result as edge_births(distance_matrix(W, L)) without holding the
// |W| x |L| matrix in memory.
inline EdgeFiltration edge_births(const PointCloud& witnesses, const PointCloud& landmarks,
                                  const EdgeBirthOptions& opt = {}) {
    detail::check_compatible(witnesses, landmarks);
    const std::size_t ell = landmarks.size();
    return detail::accumulate_births(
        witnesses.size(), ell, opt, [&](std::size_t w, detail::BirthAccumulator& acc, auto& scratch) {
            thread_local std::vector<double> row;
            row.resize(ell);
            const double nearest = detail::distance_row(witnesses.point(w), landmarks, row);
            acc.witness_row(w, row, nearest, opt.epsilon_cap, scratch);
        });
}

inline EdgeFiltration edge_births(const PointCloud& witnesses, const LandmarkSet& landmarks,
                                  const EdgeBirthOptions& opt = {}) {
    return edge_births(witnesses, landmarks.coords, opt);
}

struct Simplex {
    std::vector<std::uint32_t> vertices; // strictly increasing
    double value = 0.0;

    std::size_t dim() const noexcept { return vertices.size() - 1; }
    friend bool operator==(const Simplex&, const Simplex&) = default;
};

// Canonical filtration order: value, then dimension, then lexicographic
// vertices. Faces always precede their cofaces.
inline bool canonical_less(const Simplex& a, const Simplex& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
    return a.vertices < b.vertices;
}

struct FlagFiltration {
    std::vector<Simplex> simplices; // canonical order
    std::size_t dim_cap = 0;
    std::size_t num_vertices = 0;
};

struct FlagOptions {
    std::size_t max_simplices = 100'000'000;
    // Simplices above this value are not generated.
    double value_cap = kInfinity;
};

// All cliques with at most dim_cap + 1 vertices, valued by the largest
// birth among their edges (and vertices).
inline FlagFiltration flag_expand(const EdgeFiltration& ef, std::size_t dim_cap,
                                  const FlagOptions& opt = {}) {
    if (dim_cap < 1) throw InvalidArgument("dim_cap must be at least 1");
    const std::size_t n = ef.num_vertices();

    // upward adjacency, sorted by neighbour
    std::vector<std::vector<std::pair<std::uint32_t, double>>> up(n);
    for (const Edge& e : ef.edges) {
        if (e.i >= e.j || e.j >= n) throw InvalidArgument("malformed edge in edge filtration");
        if (e.birth <= opt.value_cap) up[e.i].emplace_back(e.j, e.birth);
    }
    for (auto& nb : up) std::sort(nb.begin(), nb.end());

    FlagFiltration ff;
    ff.dim_cap = dim_cap;
    ff.num_vertices = n;
    auto& out = ff.simplices;

    auto emit = [&](const std::vector<std::uint32_t>& verts, double value) {
        if (out.size() >= opt.max_simplices)
            throw ResourceError("flag expansion exceeds " + std::to_string(opt.max_simplices) + " simplices");
        out.push_back({verts, value});
    };

    using Candidate = std::pair<std::uint32_t, double>; // vertex, max birth of its edges to the clique
    std::vector<std::uint32_t> clique;

    // Depth-first over cliques whose members are in increasing order.
    auto extend = [&](auto&& self, double value, const std::vector<Candidate>& cands) -> void {
        if (clique.size() == dim_cap + 1) return;
        for (std::size_t c = 0; c < cands.size(); ++c) {
            const auto [v, reach] = cands[c];
            const double v_value = std::max({value, reach, ef.vertex_birth[v]});
            if (v_value > opt.value_cap) continue;
            clique.push_back(v);
            emit(clique, v_value);
            if (clique.size() < dim_cap + 1) {
                std::vector<Candidate> next;
                const auto& nb = up[v];
                auto it = nb.begin();
                for (std::size_t d = c + 1; d < cands.size(); ++d) {
                    const auto [u, u_reach] = cands[d];
                    it = std::lower_bound(it, nb.end(), u,
                                          [](const std::pair<std::uint32_t, double>& x, std::uint32_t key) {
                                              return x.first < key;
                                          });
                    if (it == nb.end()) break;
                    if (it->first == u) next.emplace_back(u, std::max(u_reach, it->second));
                }
                if (!next.empty()) self(self, v_value, next);
            }
            clique.pop_back();
        }
    };

    for (std::uint32_t v = 0; v < n; ++v) {
        const double vb = ef.vertex_birth[v];
        if (vb > opt.value_cap) continue;
        clique.assign(1, v);
        emit(clique, vb);
        std::vector<Candidate> cands(up[v].begin(), up[v].end());
        extend(extend, vb, cands);
    }
    clique.clear();

    std::sort(out.begin(), out.end(), canonical_less);
    return ff;
}

// Simplices with value <= epsilon; a prefix of the canonical order.
inline std::span<const Simplex> complex_at(const FlagFiltration& ff, double epsilon) {
    auto it = std::upper_bound(ff.simplices.begin(), ff.simplices.end(), epsilon,
                               [](double eps, const Simplex& s) { return eps < s.value; });
    return {ff.simplices.data(), static_cast<std::size_t>(it - ff.simplices.begin())};
}

// 1-skeleton of the complex at epsilon, in canonical order.
inline std::vector<Edge> skeleton_edges(const FlagFiltration& ff, double epsilon) {
    std::vector<Edge> edges;
    for (const Simplex& s : complex_at(ff, epsilon))
        if (s.vertices.size() == 2) edges.push_back({s.vertices[0], s.vertices[1], s.value, 0});
    return edges;
}

} // namespace topo_recon
