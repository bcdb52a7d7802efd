#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "topo_recon/landmarks.hpp"
#include "topo_recon/random.hpp"

namespace tr = topo_recon;

namespace {

tr::PointCloud line_cloud(const std::vector<double>& xs) {
    tr::PointCloud c(1);
    for (std::size_t i = 0; i < xs.size(); ++i) c.push_back(static_cast<std::int64_t>(i), std::vector<double>{xs[i]});
    return c;
}

double min_pairwise(const tr::PointCloud& c, const std::vector<std::size_t>& idx) {
    double best = INFINITY;
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b)
            best = std::min(best, tr::distance(c.point(idx[a]), c.point(idx[b])));
    return best;
}

} // namespace

TEST(EvenlySpaced, HandCount) {
    const auto c = line_cloud({0, 1, 2, 3, 4});
    const auto l = tr::select_evenly_spaced(c, 2);
    EXPECT_EQ(l.indices, (std::vector<std::size_t>{0, 2, 4}));
    EXPECT_EQ(l.size(), 3u);
    EXPECT_EQ(l.coords.coords(), (std::vector<double>{0, 2, 4}));
    EXPECT_EQ(l.spacing, 2u);
}

TEST(EvenlySpaced, SpacingOneTakesEverything) {
    const auto c = line_cloud({3, 1, 4, 1, 5});
    EXPECT_TRUE(tr::select_evenly_spaced(c, 1).coords == c);
    EXPECT_THROW(tr::select_evenly_spaced(c, 0), tr::InvalidArgument);
}

TEST(EvenlySpaced, LandmarkCountFormula) {
    std::vector<double> xs(100001);
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = static_cast<double>(i);
    EXPECT_EQ(tr::select_evenly_spaced(line_cloud(xs), 500).size(), 201u);
    xs.pop_back();
    EXPECT_EQ(tr::select_evenly_spaced(line_cloud(xs), 500).size(), 200u);
}

TEST(MaxMin, FarthestPointOnLine) {
    const auto c = line_cloud({0, 1, 10});
    // find a seed whose first pick is index 0
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        tr::Rng rng(seed);
        if (rng.below(3) != 0) continue;
        const auto r = tr::select_maxmin_detailed(c, 2, seed);
        EXPECT_EQ(r.landmarks.indices, (std::vector<std::size_t>{0, 2}));
        EXPECT_EQ(r.radii[1], 10.0);
        return;
    }
    FAIL() << "no seed picked index 0 first";
}

TEST(MaxMin, AllPointsWhenEllIsCloudSize) {
    const auto c = line_cloud({5, 2, 9, 1});
    for (std::uint64_t seed : {0u, 1u, 99u})
        EXPECT_EQ(tr::select_maxmin(c, 4, seed).indices, (std::vector<std::size_t>{0, 1, 2, 3}));
    EXPECT_THROW(tr::select_maxmin(c, 5, 0), tr::InvalidArgument);
    EXPECT_THROW(tr::select_maxmin(c, 0, 0), tr::InvalidArgument);
}

TEST(MaxMin, SeedDeterminism) {
    tr::Rng rng(4);
    tr::PointCloud c(2);
    for (int i = 0; i < 300; ++i) c.push_back(i, std::vector<double>{rng.uniform(0, 1), rng.uniform(0, 1)});
    EXPECT_EQ(tr::select_maxmin(c, 12, 3).indices, tr::select_maxmin(c, 12, 3).indices);
}

TEST(MaxMin, GreedyIsTwoApproximation) {
    tr::Rng rng(17);
    tr::PointCloud c(2);
    for (int i = 0; i < 100; ++i) {
        const double a = rng.uniform(0, 2 * std::numbers::pi);
        c.push_back(i, std::vector<double>{std::cos(a), std::sin(a)});
    }
    // brute-force best 4-subset separation
    double best = 0;
    for (std::size_t a = 0; a < 100; ++a)
        for (std::size_t b = a + 1; b < 100; ++b)
            for (std::size_t d = b + 1; d < 100; ++d)
                for (std::size_t e = d + 1; e < 100; ++e) best = std::max(best, min_pairwise(c, {a, b, d, e}));
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto l = tr::select_maxmin(c, 4, seed);
        EXPECT_GE(min_pairwise(c, l.indices), best / 2);
    }
}

TEST(Relocate, SharesPositions) {
    tr::PointCloud a(2), b(3);
    for (int i = 0; i < 10; ++i) {
        a.push_back(i, std::vector<double>{1.0 * i, 2.0 * i});
        b.push_back(i, std::vector<double>{1.0 * i, 2.0 * i, 3.0 * i});
    }
    const auto l = tr::select_evenly_spaced(b, 3);
    const auto r = tr::relocate(l, a);
    EXPECT_EQ(r.indices, l.indices);
    EXPECT_EQ(r.coords.coords(), (std::vector<double>{0, 0, 3, 6, 6, 12, 9, 18}));
}
