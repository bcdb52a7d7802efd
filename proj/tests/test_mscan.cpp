#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "topo_recon/topo_recon.hpp"

namespace tr = topo_recon;

namespace {

tr::DimensionMask mask_of(std::initializer_list<std::size_t> dims) {
    tr::DimensionMask m = 0;
    for (auto d : dims) m |= tr::DimensionMask{1} << (d - 1);
    return m;
}

tr::ScalarSeries sine(std::size_t n, double period) {
    tr::ScalarSeries s;
    for (std::size_t i = 0; i < n; ++i) s.values.push_back(std::sin(2 * std::numbers::pi * i / period));
    return s;
}

} // namespace

TEST(Lifespan, Examples) {
    EXPECT_EQ(tr::lifespan(mask_of({2, 5, 6, 7})), 3u);
    EXPECT_EQ(tr::lifespan(std::set<std::size_t>{2, 5, 6, 7}), 3u);
    EXPECT_EQ(tr::lifespan(tr::DimensionMask{0}), 0u);
    EXPECT_EQ(tr::lifespan(std::set<std::size_t>{}), 0u);
    EXPECT_EQ(tr::lifespan(mask_of({1, 2, 3, 4, 5, 6, 7, 8})), 8u);
    EXPECT_EQ(tr::lifespan(~tr::DimensionMask{0}), 32u);
    EXPECT_EQ(tr::mask_to_set(mask_of({1, 3})), (std::set<std::size_t>{1, 3}));
}

TEST(Lifespan, MaskAndSetAgree) {
    tr::Rng rng(1);
    for (int i = 0; i < 500; ++i) {
        const auto m = static_cast<tr::DimensionMask>(rng.next_u64());
        EXPECT_EQ(tr::lifespan(m), tr::lifespan(tr::mask_to_set(m)));
    }
}

TEST(DimensionIntervals, Flags) {
    const auto full = tr::mask_intervals(3, mask_of({1, 2, 3, 4, 5, 6, 7, 8}), 8);
    ASSERT_EQ(full.size(), 1u);
    EXPECT_TRUE(full[0].alive_at_max);
    EXPECT_FALSE(full[0].born_in_sweep());
    EXPECT_EQ(full[0].m_death, 9u);

    const auto two = tr::mask_intervals(3, mask_of({2}), 8);
    ASSERT_EQ(two.size(), 1u);
    EXPECT_EQ(two[0].m_birth, 2u);
    EXPECT_EQ(two[0].m_death, 3u);
    EXPECT_TRUE(two[0].born_in_sweep());
    EXPECT_FALSE(two[0].alive_at_max);

    EXPECT_EQ(tr::mask_intervals(0, mask_of({1, 3, 4, 8}), 8).size(), 3u);
}

TEST(Sweep, ConstantSeriesKeepsEveryEdge) {
    tr::ScalarSeries s{std::vector<double>(400, 2.0), 1.0};
    const auto sw = tr::sweep(s, 5, 0.01, 50, 6);
    const std::size_t ell = sw.num_landmarks();
    ASSERT_GT(ell, 2u);
    EXPECT_EQ(sw.existence.size(), ell * (ell - 1) / 2);
    const auto lm = tr::lifespan_matrix(sw);
    for (std::size_t i = 0; i < ell; ++i)
        for (std::size_t j = 0; j < ell; ++j) EXPECT_EQ(lm(i, j), i == j ? 0u : 6u);
}

TEST(Sweep, LevelsMatchDirectReconstruction) {
    tr::Rng rng(2);
    tr::ScalarSeries s;
    double x = 0.3;
    for (int i = 0; i < 3000; ++i) {
        x = 3.9 * x * (1 - x); // logistic map
        s.values.push_back(x + 0.01 * rng.uniform01());
    }
    const std::size_t tau = 3, m_max = 5, every = 60;
    const double xi = 0.02;
    const auto sw = tr::sweep(s, tau, xi, every, m_max);
    for (std::size_t m = 1; m <= m_max; ++m) {
        const auto w = tr::delay_embed(s, m, tau, m_max);
        const auto l = tr::select_evenly_spaced(w, every);
        EXPECT_EQ(sw.levels[m - 1].diameter, tr::bbox_diameter(w));
        const double eps = xi * tr::bbox_diameter(w);
        const auto ef = tr::edge_births(w, l, {eps, 1});
        EXPECT_EQ(sw.levels[m - 1].births.edges, ef.edges);
        for (const auto& e : sw.existence) {
            const bool bit = e.mask >> (m - 1) & 1u;
            const auto b = ef.edge_birth(e.i, e.j);
            EXPECT_EQ(bit, b.has_value() && *b <= eps);
        }
    }
    const auto threaded = tr::sweep(s, tau, xi, every, m_max, {3});
    ASSERT_EQ(threaded.existence.size(), sw.existence.size());
    for (std::size_t k = 0; k < sw.existence.size(); ++k) EXPECT_EQ(threaded.existence[k].mask, sw.existence[k].mask);
}

TEST(Sweep, LifespanMatrixProperties) {
    const auto sw = tr::sweep(sine(6000, 700), 175, 0.02, 100, 6);
    const auto lm = tr::lifespan_matrix(sw);
    for (std::size_t i = 0; i < lm.size(); ++i) {
        EXPECT_EQ(lm(i, i), 0u);
        for (std::size_t j = 0; j < lm.size(); ++j) EXPECT_EQ(lm(i, j), lm(j, i));
    }
}

TEST(Sweep, PeriodicSeriesGivesLongDiagonals) {
    // a limit cycle: consecutive landmarks stay neighbours at every m
    const std::size_t m_max = 6;
    const auto sw = tr::sweep(sine(20000, 1000), 250, 0.02, 97, m_max);
    const auto lm = tr::lifespan_matrix(sw);
    const auto runs = tr::diagonal_runs(lm, 2);
    std::size_t longest = 0;
    for (const auto& r : runs)
        if (r.min_lifespan >= m_max - 1) longest = std::max(longest, r.length);
    EXPECT_GE(longest, lm.size() / 2);

    // high-lifespan entries sit on long diagonal runs
    std::set<std::pair<std::size_t, std::size_t>> on_runs;
    for (const auto& r : runs)
        if (r.length >= 5)
            for (std::size_t t = 0; t < r.length; ++t) on_runs.emplace(r.i + t, r.j + t);
    std::size_t high = 0, high_on_runs = 0;
    for (std::size_t i = 0; i < lm.size(); ++i)
        for (std::size_t j = i + 1; j < lm.size(); ++j)
            if (lm(i, j) >= m_max - 1) {
                ++high;
                high_on_runs += on_runs.count({i, j});
            }
    ASSERT_GT(high, 0u);
    EXPECT_GE(static_cast<double>(high_on_runs), 0.9 * static_cast<double>(high)) << high_on_runs << "/" << high;
}

TEST(Sweep, DimensionBarcode) {
    const auto sw = tr::sweep(sine(6000, 700), 175, 0.02, 100, 4);
    const auto bars = tr::dimension_barcode(sw, 0);
    for (std::size_t k = 1; k < bars.size(); ++k) EXPECT_LE(bars[k - 1].partner, bars[k].partner);
    for (const auto& b : bars) {
        EXPECT_LT(b.m_birth, b.m_death);
        EXPECT_EQ(b.alive_at_max, b.m_death == 5u);
    }
    EXPECT_THROW(tr::dimension_barcode(sw, sw.num_landmarks()), tr::InvalidArgument);
}

TEST(DmFiltrationTest, NestedLevelsAndBarcode) {
    tr::DimensionSweep sw;
    sw.m_max = 4;
    sw.landmark_indices = {0, 1, 2, 3};
    // square whose sides have lifespans 4, 3, 2, 1 and one dead pair
    sw.existence = {{0, 1, mask_of({1, 2, 3, 4})},
                    {1, 2, mask_of({2, 3, 4})},
                    {2, 3, mask_of({1, 3, 4})},
                    {0, 3, mask_of({4})}};
    const auto dm = tr::dm_filtration(sw, 2);
    EXPECT_TRUE(dm.nested);
    ASSERT_EQ(dm.levels.size(), 6u);
    EXPECT_EQ(dm.levels[1].size(), 4u);
    EXPECT_EQ(dm.levels[2].size(), 3u);
    EXPECT_EQ(dm.levels[3].size(), 2u);
    EXPECT_EQ(dm.levels[4].size(), 1u);
    EXPECT_EQ(dm.levels[5].size(), 0u);
    // the loop closes at lifespan 1 (value 3)
    const auto ones = dm.barcode.in_dimension(1);
    ASSERT_EQ(ones.size(), 1u);
    EXPECT_EQ(ones[0]->birth, 3.0);
    EXPECT_TRUE(ones[0]->infinite());
    EXPECT_EQ(tr::betti_at(dm.barcode, 0.0)[0], 3u);
}
