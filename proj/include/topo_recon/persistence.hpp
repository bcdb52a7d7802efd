#pragma once

// Persistent homology of a flag filtration over Z/2.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <unordered_map>
#include <vector>

#include "topo_recon/error.hpp"
#include "topo_recon/witness.hpp"

namespace topo_recon {

struct Interval {
    std::size_t k = 0; // homology dimension
    double birth = 0.0;
    double death = kInfinity;
    // Positions in the filtration of the creating and destroying simplices;
    // destroyer is npos for infinite intervals.
    std::size_t creator = 0;
    std::size_t destroyer = npos;
    // A representative k-cycle (list of k-simplices) when requested. This is
    // one choice among homologous cycles, not a canonical one.
    std::vector<std::vector<std::uint32_t>> representative;

    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    bool infinite() const noexcept { return std::isinf(death); }
    double length() const noexcept { return death - birth; }
};

struct Barcode {
    std::vector<Interval> intervals;
    std::size_t dim_cap = 0; // homology is reported for k < dim_cap

    std::vector<const Interval*> in_dimension(std::size_t k) const {
        std::vector<const Interval*> out;
        for (const auto& iv : intervals)
            if (iv.k == k) out.push_back(&iv);
        return out;
    }
};

struct BettiVector {
    std::vector<std::size_t> beta;

    std::size_t operator[](std::size_t k) const { return k < beta.size() ? beta[k] : 0; }
};

struct PersistenceOptions {
    // Homology dimensions whose representative cycles are recorded.
    std::vector<std::size_t> representatives = {1};
    bool clearing = true;
};

namespace detail {

// Z/2 column: sorted row indices; addition is symmetric difference.
using Column = std::vector<std::uint32_t>;

inline void add_into(Column& target, const Column& source, Column& scratch) {
    scratch.clear();
    std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                  std::back_inserter(scratch));
    target.swap(scratch);
}

// Combinatorial number system key of a sorted vertex tuple.
inline std::uint64_t simplex_key(std::span<const std::uint32_t> verts) {
    unsigned __int128 key = 0;
    for (std::size_t r = 0; r < verts.size(); ++r) {
        // C(v, r + 1)
        unsigned __int128 c = 1;
        const std::uint64_t v = verts[r];
        if (v < r + 1) continue;
        for (std::size_t t = 0; t <= r; ++t) {
            c = c * (v - t) / (t + 1);
            if (c > std::numeric_limits<std::uint64_t>::max())
                throw ResourceError("simplex index overflows 64 bits");
        }
        key += c;
        if (key > std::numeric_limits<std::uint64_t>::max())
            throw ResourceError("simplex index overflows 64 bits");
    }
    return static_cast<std::uint64_t>(key);
}

inline void check_order(const FlagFiltration& ff) {
    const auto& s = ff.simplices;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i].vertices.empty()) throw ContractViolation("empty simplex at position " + std::to_string(i));
        if (s[i].vertices.size() > ff.dim_cap + 1)
            throw ContractViolation("simplex above dim_cap at position " + std::to_string(i));
        if (!std::is_sorted(s[i].vertices.begin(), s[i].vertices.end()) ||
            std::adjacent_find(s[i].vertices.begin(), s[i].vertices.end()) != s[i].vertices.end())
            throw ContractViolation("vertices not strictly increasing at position " + std::to_string(i));
        if (i > 0 && !canonical_less(s[i - 1], s[i]))
            throw ContractViolation("filtration not canonically sorted at position " + std::to_string(i));
    }
}

// Boundary columns (as filtration positions) of every simplex.
inline std::vector<Column> boundary_columns(const FlagFiltration& ff) {
    const auto& s = ff.simplices;
    std::vector<std::unordered_map<std::uint64_t, std::uint32_t>> index(ff.dim_cap + 1);
    std::vector<Column> cols(s.size());
    std::vector<std::uint32_t> face;
    for (std::size_t pos = 0; pos < s.size(); ++pos) {
        const auto& v = s[pos].vertices;
        const std::size_t d = v.size() - 1;
        if (d > 0) {
            auto& col = cols[pos];
            col.reserve(v.size());
            for (std::size_t drop = 0; drop < v.size(); ++drop) {
                face.clear();
                for (std::size_t t = 0; t < v.size(); ++t)
                    if (t != drop) face.push_back(v[t]);
                const auto it = index[d - 1].find(simplex_key(face));
                if (it == index[d - 1].end())
                    throw ContractViolation("face of simplex at position " + std::to_string(pos) +
                                            " is missing or appears later");
                col.push_back(it->second);
            }
            std::sort(col.begin(), col.end());
        }
        if (!index[d].emplace(simplex_key(v), static_cast<std::uint32_t>(pos)).second)
            throw ContractViolation("duplicate simplex at position " + std::to_string(pos));
    }
    return cols;
}

} // namespace detail

// Standard column reduction in filtration order, optionally with clearing
// (higher dimensions first). Zero-length intervals are omitted.
inline Barcode persistent_homology(const FlagFiltration& ff, const PersistenceOptions& opt = {}) {
    if (ff.dim_cap < 1) throw ContractViolation("dim_cap must be at least 1");
    if (ff.simplices.size() >= std::numeric_limits<std::uint32_t>::max())
        throw ResourceError("filtration too large");
    detail::check_order(ff);
    const auto& s = ff.simplices;
    const std::size_t n = s.size();
    auto cols = detail::boundary_columns(ff);

    std::size_t max_dim = 0;
    std::vector<std::vector<std::uint32_t>> by_dim(ff.dim_cap + 1);
    for (std::uint32_t pos = 0; pos < n; ++pos) {
        by_dim[s[pos].dim()].push_back(pos);
        max_dim = std::max(max_dim, s[pos].dim());
    }

    auto wants_cycles = [&](std::size_t d) {
        return std::find(opt.representatives.begin(), opt.representatives.end(), d) !=
               opt.representatives.end();
    };

    constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> pivot_owner(n, kNone); // row -> column whose low it is
    std::vector<char> negative(n, 0);                 // column reduced to nonzero
    std::vector<char> cleared(n, 0);
    // V columns (R = D V) for dimensions whose cycles are tracked.
    std::unordered_map<std::uint32_t, detail::Column> v_cols;
    detail::Column scratch;

    for (std::size_t d = max_dim; d >= 1; --d) {
        const bool track = wants_cycles(d) && d < ff.dim_cap;
        for (std::uint32_t j : by_dim[d]) {
            if (opt.clearing && !track && cleared[j]) {
                cols[j].clear();
                continue;
            }
            auto& col = cols[j];
            detail::Column v;
            if (track) v.push_back(j);
            while (!col.empty() && pivot_owner[col.back()] != kNone) {
                const std::uint32_t other = pivot_owner[col.back()];
                detail::add_into(col, cols[other], scratch);
                if (track) detail::add_into(v, v_cols.at(other), scratch);
            }
            if (!col.empty()) {
                pivot_owner[col.back()] = j;
                negative[j] = 1;
                cleared[col.back()] = 1;
            }
            if (track) v_cols.emplace(j, std::move(v));
        }
    }

    Barcode bc;
    bc.dim_cap = ff.dim_cap;
    for (std::uint32_t j = 0; j < n; ++j) {
        const std::size_t d = s[j].dim();
        if (d >= ff.dim_cap || negative[j]) continue;
        Interval iv;
        iv.k = d;
        iv.birth = s[j].value;
        iv.creator = j;
        if (pivot_owner[j] != kNone) {
            iv.destroyer = pivot_owner[j];
            iv.death = s[iv.destroyer].value;
            if (!(iv.death > iv.birth)) continue;
        }
        if (auto it = v_cols.find(j); it != v_cols.end())
            for (std::uint32_t pos : it->second) iv.representative.push_back(s[pos].vertices);
        bc.intervals.push_back(std::move(iv));
    }

    return bc;
}

// beta[k] = number of k-intervals with birth <= epsilon < death.
inline BettiVector betti_at(const Barcode& bc, double epsilon) {
    if (!(epsilon >= 0.0)) throw InvalidArgument("epsilon must be >= 0");
    BettiVector out;
    out.beta.assign(std::max<std::size_t>(bc.dim_cap, 1), 0);
    for (const auto& iv : bc.intervals)
        if (iv.birth <= epsilon && epsilon < iv.death) ++out.beta[iv.k];
    return out;
}

// Disjoint-set forest with path halving and union by size.
class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    // Returns false when a and b were already joined.
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

// Connected components of the epsilon-sublevel 1-skeleton, computed
// directly from the edge filtration.
inline std::size_t components_unionfind(const EdgeFiltration& ef, double epsilon) {
    if (!(epsilon >= 0.0)) throw InvalidArgument("epsilon must be >= 0");
    const std::size_t n = ef.num_vertices();
    DisjointSets sets(n);
    std::size_t count = 0;
    for (std::size_t v = 0; v < n; ++v)
        if (ef.vertex_birth[v] <= epsilon) ++count;
    // an edge is present once it and both endpoints are born
    for (const Edge& e : ef.edges)
        if (std::max({e.birth, ef.vertex_birth[e.i], ef.vertex_birth[e.j]}) <= epsilon && sets.unite(e.i, e.j))
            --count;
    return count;
}

struct RepresentativeCycle {
    std::size_t k = 0;
    double birth = 0.0;
    double death = kInfinity;
    std::vector<std::vector<std::uint32_t>> simplices; // a representative, not the cycle
};

// Representatives of the top_n longest k-intervals (infinite first, then by
// length). Intervals computed without representatives contribute empty chains.
inline std::vector<RepresentativeCycle> representative_cycles(const Barcode& bc, std::size_t k,
                                                              std::size_t top_n) {
    if (k < 1) throw InvalidArgument("representative cycles need k >= 1");
    auto ivs = bc.in_dimension(k);
    std::stable_sort(ivs.begin(), ivs.end(),
                     [](const Interval* a, const Interval* b) { return a->length() > b->length(); });
    if (ivs.size() > top_n) ivs.resize(top_n);
    std::vector<RepresentativeCycle> out;
    for (const Interval* iv : ivs) out.push_back({iv->k, iv->birth, iv->death, iv->representative});
    return out;
}

} // namespace topo_recon
