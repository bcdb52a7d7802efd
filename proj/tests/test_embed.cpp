#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "topo_recon/embed.hpp"
#include "topo_recon/random.hpp"
#include "topo_recon/signal.hpp"

namespace tr = topo_recon;

namespace {

tr::ScalarSeries random_series(std::uint64_t seed, std::size_t n) {
    tr::Rng rng(seed);
    tr::ScalarSeries s;
    for (std::size_t i = 0; i < n; ++i) s.values.push_back(rng.uniform(-5, 5));
    return s;
}

tr::PointCloud cloud_of(const std::vector<std::vector<double>>& pts) {
    tr::PointCloud c(pts.front().size());
    for (std::size_t i = 0; i < pts.size(); ++i) c.push_back(static_cast<std::int64_t>(i), pts[i]);
    return c;
}

} // namespace

TEST(DelayEmbed, HandExample) {
    const tr::ScalarSeries s{{1, 2, 3, 4}, 1.0};
    const auto c = tr::delay_embed(s, 2, 1, 2);
    ASSERT_EQ(c.size(), 3u);
    EXPECT_EQ(c.coords(), (std::vector<double>{2, 1, 3, 2, 4, 3}));
    EXPECT_EQ(c.time_indices(), (std::vector<std::int64_t>{1, 2, 3}));
}

TEST(DelayEmbed, DimensionOneIsTheSeries) {
    const auto s = random_series(3, 50);
    const auto c = tr::delay_embed(s, 1, 7, 1);
    EXPECT_EQ(c.coords(), s.values);
}

TEST(DelayEmbed, AnchoredPrefixProperty) {
    const auto s = random_series(11, 400);
    const std::size_t tau = 13, anchor = 6;
    const auto top = tr::delay_embed(s, anchor, tau, anchor);
    for (std::size_t m = 1; m <= anchor; ++m) {
        const auto c = tr::delay_embed(s, m, tau, anchor);
        EXPECT_EQ(c.time_indices(), top.time_indices());
        EXPECT_TRUE(tr::project(top, m) == c) << "m=" << m;
    }
    EXPECT_TRUE(tr::project(top, anchor) == top);
}

TEST(DelayEmbed, RejectsBadArguments) {
    const auto s = random_series(1, 10);
    EXPECT_THROW(tr::delay_embed(s, 0, 1, 1), tr::InvalidArgument);
    EXPECT_THROW(tr::delay_embed(s, 2, 0, 2), tr::InvalidArgument);
    EXPECT_THROW(tr::delay_embed(s, 3, 1, 2), tr::InvalidArgument);
    EXPECT_THROW(tr::delay_embed(s, 2, 5, 3), tr::InvalidArgument);
    EXPECT_THROW(tr::project(tr::delay_embed(s, 2, 1, 2), 3), tr::InvalidArgument);
}

TEST(PointCloudTest, EnforcesOrderAndFiniteness) {
    tr::PointCloud c(2);
    c.push_back(3, std::vector<double>{0, 0});
    EXPECT_THROW(c.push_back(3, std::vector<double>{1, 1}), tr::InvalidArgument);
    EXPECT_THROW(c.push_back(4, std::vector<double>{1, std::nan("")}), tr::InvalidArgument);
    EXPECT_THROW(c.push_back(4, std::vector<double>{1}), tr::InvalidArgument);
}

TEST(Diameter, BoundingBoxDiagonal) {
    EXPECT_DOUBLE_EQ(tr::bbox_diameter(cloud_of({{0, 0}, {3, 0}, {1, 4}})), 5.0);
    EXPECT_EQ(tr::bbox_diameter(cloud_of({{2, 7, 1}})), 0.0);
    EXPECT_THROW(tr::bbox_diameter(tr::PointCloud(2)), tr::InvalidArgument);
}

TEST(Diameter, TranslationAndScale) {
    tr::Rng rng(5);
    std::vector<std::vector<double>> pts, moved;
    for (int i = 0; i < 100; ++i) {
        pts.push_back({rng.uniform(-1, 1), rng.uniform(-2, 2), rng.uniform(0, 3)});
        moved.push_back({3 * pts.back()[0] + 10, 3 * pts.back()[1] - 4, 3 * pts.back()[2] + 0.5});
    }
    EXPECT_NEAR(tr::bbox_diameter(cloud_of(moved)), 3 * tr::bbox_diameter(cloud_of(pts)), 1e-12);
}

TEST(Diameter, ScaleParameter) {
    const auto c = cloud_of({{0, 0}, {3, 4}});
    const auto sp = tr::epsilon_from_xi(0.1, c);
    EXPECT_DOUBLE_EQ(sp.diameter, 5.0);
    EXPECT_DOUBLE_EQ(sp.epsilon, 0.5);
    EXPECT_EQ(tr::epsilon_from_xi(0.0, c).epsilon, 0.0);
    EXPECT_THROW(tr::epsilon_from_xi(-0.1, c), tr::InvalidArgument);
}

TEST(Ami, LagZeroIsEntropy) {
    const auto s = random_series(9, 5000);
    const std::size_t bins = 12;
    const auto curve = tr::ami_curve(s, 3, bins);
    const auto b = tr::detail::bin_series(s.values, bins);
    std::map<std::uint32_t, double> hist;
    for (auto v : b) hist[v] += 1;
    double h = 0;
    for (auto& [k, c] : hist) h -= c / b.size() * std::log2(c / b.size());
    EXPECT_NEAR(curve.values[0], h, 1e-12);
}

TEST(Ami, SymmetricAndNonNegative) {
    const auto s = random_series(21, 3000);
    const auto b = tr::detail::bin_series(s.values, 10);
    const std::span<const std::uint32_t> all(b);
    for (std::size_t tau : {1u, 5u, 40u}) {
        const std::size_t n = b.size() - tau;
        const double fwd = tr::detail::mutual_information(all.first(n), all.subspan(tau, n), 10);
        const double bwd = tr::detail::mutual_information(all.subspan(tau, n), all.first(n), 10);
        EXPECT_NEAR(fwd, bwd, 1e-12);
        EXPECT_GE(fwd, 0.0);
    }
}

TEST(Ami, IndependentSamplesCarryLittleInformation) {
    const auto s = random_series(77, 100000);
    const auto curve = tr::ami_curve(s, 5, 16);
    EXPECT_GT(curve.values[0], 3.9); // log2(16) for uniform samples
    for (std::size_t tau = 1; tau <= 5; ++tau) EXPECT_LT(curve.values[tau], 0.1);
}

TEST(Ami, DefaultBins) {
    EXPECT_EQ(tr::default_ami_bins(100000), 64u);
    EXPECT_EQ(tr::default_ami_bins(10000), 64u);
    EXPECT_EQ(tr::default_ami_bins(1000), 10u);
    EXPECT_EQ(tr::default_ami_bins(9999), 22u);
}

TEST(Ami, ConstantSeriesIsDegenerate) {
    tr::ScalarSeries s{std::vector<double>(100, 1.0), 1.0};
    EXPECT_THROW(tr::ami_curve(s, 5, 8), tr::DegenerateInput);
}

TEST(FirstMinimum, Examples) {
    EXPECT_EQ(tr::first_minimum({{5, 3, 1, 2, 3}, 0}), 2u);
    EXPECT_EQ(tr::first_minimum({{5, 4, 3, 2, 1}, 0}), std::nullopt);
    // plateau: the first point of the plateau already satisfies the rule
    EXPECT_EQ(tr::first_minimum({{5, 3, 3, 4}, 0}), 1u);
    EXPECT_EQ(tr::first_minimum({{1, 2, 0, 3}, 0}), 2u);
    EXPECT_THROW(tr::first_minimum({{1, 2}, 0}), tr::InvalidArgument);
}
