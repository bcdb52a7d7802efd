#include <gtest/gtest.h>

#include <filesystem>

#include "oracles.hpp"
#include "topo_recon/io.hpp"
#include "topo_recon/svg.hpp"

namespace tr = topo_recon;
namespace io = topo_recon::io;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("topo_recon_io_" + name)).string();
}

} // namespace

TEST(SeriesFile, TwoLines) {
    const auto s = io::series_from_text("# T=0.001\n1.0\n2.0\n");
    EXPECT_EQ(s.values, (std::vector<double>{1.0, 2.0}));
    EXPECT_EQ(s.sample_interval, 0.001);
}

TEST(SeriesFile, RoundTripIsExact) {
    tr::Rng rng(1);
    tr::ScalarSeries s;
    s.sample_interval = 0.001;
    for (int i = 0; i < 1000; ++i) s.values.push_back(rng.uniform(-1e3, 1e3) * std::pow(10.0, rng.uniform(-8, 8)));
    const auto path = temp_path("series.txt");
    io::save_series(path, s);
    const auto back = io::load_series(path);
    EXPECT_EQ(back.values, s.values);
    EXPECT_EQ(back.sample_interval, s.sample_interval);
    std::filesystem::remove(path);
}

TEST(SeriesFile, ErrorCitesLine) {
    try {
        io::series_from_text("# T=0.001\n1.0\nabc\n4.0\n");
        FAIL() << "expected ParseError";
    } catch (const tr::ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    }
    EXPECT_THROW(io::series_from_text(""), tr::ParseError);
    EXPECT_THROW(io::series_from_text("1.0\n"), tr::ParseError);
    EXPECT_THROW(io::series_from_text("# T=0\n1.0\n"), tr::ParseError);
    EXPECT_THROW(io::load_series("/nonexistent/dir/file.txt"), tr::IoError);
}

TEST(SeriesFile, CsvInput) {
    const auto s = io::series_from_csv("x\n1.5\n-2\n", 0.01);
    EXPECT_EQ(s.values, (std::vector<double>{1.5, -2}));
    EXPECT_EQ(s.sample_interval, 0.01);
    EXPECT_THROW(io::series_from_csv("y\n1\n", 1.0), tr::ParseError);
}

TEST(CloudFile, RoundTrip) {
    tr::ScalarSeries s;
    tr::Rng rng(2);
    for (int i = 0; i < 200; ++i) s.values.push_back(rng.uniform(-20, 20));
    const auto c = tr::delay_embed(s, 3, 7, 4);
    EXPECT_TRUE(io::cloud_from_csv(io::cloud_to_csv(c)) == c);

    const auto l = tr::select_evenly_spaced(c, 9);
    const auto back = io::landmarks_from_csv(io::landmarks_to_csv(l));
    EXPECT_EQ(back.indices, l.indices);
    EXPECT_TRUE(back.coords == l.coords);
}

TEST(CloudFile, Errors) {
    EXPECT_THROW(io::cloud_from_csv("t,c0\n0,1\n0,2\n"), tr::ParseError);
    EXPECT_THROW(io::cloud_from_csv("t,c0,c1\n0,1\n"), tr::ParseError);
    EXPECT_THROW(io::cloud_from_csv("t,x\n0,1\n"), tr::ParseError);
    try {
        io::cloud_from_csv("t,c0\n0,1\n\n2,zz\n");
        FAIL();
    } catch (const tr::ParseError& e) {
        EXPECT_EQ(e.line(), 4u);
    }
}

TEST(BarcodeFile, RoundTripWithInfinity) {
    tr::Barcode bc;
    bc.dim_cap = 2;
    for (auto [k, b, d] : {std::tuple<std::size_t, double, double>{0, 0.0, tr::kInfinity}, {0, 0.0, 0.125}, {1, 0.4, 1.7}}) {
        tr::Interval iv;
        iv.k = k;
        iv.birth = b;
        iv.death = d;
        bc.intervals.push_back(iv);
    }
    const auto text = io::barcode_to_csv(bc);
    EXPECT_NE(text.find("inf"), std::string::npos);
    const auto back = io::barcode_from_csv(text);
    ASSERT_EQ(back.intervals.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(back.intervals[i].k, bc.intervals[i].k);
        EXPECT_EQ(back.intervals[i].birth, bc.intervals[i].birth);
        EXPECT_EQ(back.intervals[i].death, bc.intervals[i].death);
    }
    EXPECT_EQ(io::barcode_from_csv("k,birth,death\n").intervals.size(), 0u);
}

TEST(FiltrationFile, RoundTrip) {
    tr::Rng rng(3);
    const auto ff = tr::flag_expand(oracle::random_edge_filtration(rng, 8, 0.6, true), 3);
    const auto back = io::filtration_from_json(io::filtration_to_json(ff));
    EXPECT_EQ(back.simplices, ff.simplices);
    EXPECT_EQ(back.num_vertices, ff.num_vertices);
    EXPECT_THROW(io::filtration_from_json("{\"a\": 1}"), tr::ParseError);
    EXPECT_THROW(io::filtration_from_json("[{\"vertices\": [], \"value\": 0}]"), tr::ParseError);
}

TEST(EdgeFile, EmptyAndThresholded) {
    EXPECT_EQ(io::edges_to_csv({}), "i,j,birth\n");
    tr::EdgeFiltration ef;
    ef.vertex_birth.assign(3, 0.0);
    ef.edges = {{0, 1, 0.1}, {0, 2, 0.3}, {1, 2, 0.2}};
    const auto edges = tr::skeleton_edges(tr::flag_expand(ef, 2), 0.25);
    const auto back = io::edges_from_csv(io::edges_to_csv(edges));
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[1].birth, 0.2);
}

TEST(LifespanFile, RoundTripAndValidation) {
    tr::LifespanMatrix lm(3);
    lm.set(0, 1, 2);
    lm.set(1, 2, 5);
    const auto back = io::lifespan_from_csv(io::lifespan_to_csv(lm));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(back(i, j), lm(i, j));
    EXPECT_THROW(io::lifespan_from_csv("0,1\n2,0\n"), tr::ParseError);
    EXPECT_THROW(io::lifespan_from_csv("1,0\n0,0\n"), tr::ParseError);
    EXPECT_THROW(io::lifespan_from_csv("0,1,0\n1,0,0\n"), tr::ParseError);
}

TEST(Heatmap, AllZeroMatrixIsBlank) {
    const tr::LifespanMatrix lm(4);
    const auto svg = tr::svg::render_heatmap(lm);
    EXPECT_NE(svg.find("<svg"), std::string::npos);
    for (std::size_t v = 1; v < tr::svg::kLifespanPalette.size(); ++v) {
        // only the legend may use the palette colors
        const std::string fill = std::string("fill=\"") + tr::svg::kLifespanPalette[v] + "\"/>";
        EXPECT_EQ(svg.find(fill), std::string::npos);
    }
    EXPECT_STREQ(tr::svg::lifespan_color(1), "#1f3fbf");
    EXPECT_STREQ(tr::svg::lifespan_color(3), "#17becf");
    EXPECT_STREQ(tr::svg::lifespan_color(99), tr::svg::kLifespanPalette.back());
}

TEST(Skeleton, Deterministic) {
    tr::PointCloud l(3);
    for (int i = 0; i < 5; ++i) l.push_back(i, std::vector<double>{1.0 * i, 0.5 * i * i, -1.0 * i});
    const std::vector<tr::Edge> edges{{0, 1, 0.1}, {1, 2, 0.2}};
    const tr::svg::SkeletonView view{true, 30, 20};
    const auto a = tr::svg::render_skeleton(l, edges, view, {{0, 1}});
    EXPECT_EQ(a, tr::svg::render_skeleton(l, edges, view, {{0, 1}}));
    EXPECT_NE(a.find("stroke-dasharray"), std::string::npos);
    EXPECT_EQ(tr::svg::render_skeleton(l, edges).find("stroke-dasharray"), std::string::npos);
}
