#pragma once

// Text file formats: scalar series, point clouds, landmark tables, edge
// lists, barcodes and filtration JSON. Doubles are written in shortest
// round-trip form, so save followed by load is bit-exact.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "json.hpp"

#include "topo_recon/embed.hpp"
#include "topo_recon/error.hpp"
#include "topo_recon/landmarks.hpp"
#include "topo_recon/mscan.hpp"
#include "topo_recon/persistence.hpp"
#include "topo_recon/signal.hpp"
#include "topo_recon/witness.hpp"

namespace topo_recon::io {

inline std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

inline double parse_double(std::string_view text, std::size_t line) {
    const auto t = trim(text);
    if (t == "inf" || t == "+inf" || t == "Infinity") return kInfinity;
    if (t == "-inf") return -kInfinity;
    double v = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw ParseError(line, "not a number: '" + std::string(t) + "'");
    return v;
}

template <typename Int>
Int parse_int(std::string_view text, std::size_t line) {
    const auto t = trim(text);
    Int v{};
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw ParseError(line, "not an integer: '" + std::string(t) + "'");
    return v;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
}

struct CsvRow {
    std::size_t line = 0; // 1-based
    std::vector<std::string_view> fields;
};

// Minimal CSV: comma separated, no quoting, blank lines skipped. Views
// point into `text`.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<CsvRow> rows;
};

inline std::vector<std::string_view> split(std::string_view line, char sep = ',') {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(sep, start);
        out.push_back(trim(line.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

inline CsvTable parse_csv(std::string_view text) {
    CsvTable table;
    std::size_t line_no = 0, pos = 0;
    bool have_header = false;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        ++line_no;
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        if (trim(line).empty()) continue;
        auto fields = split(line);
        if (!have_header) {
            for (auto f : fields) table.header.emplace_back(f);
            have_header = true;
            continue;
        }
        if (fields.size() != table.header.size())
            throw ParseError(line_no, "expected " + std::to_string(table.header.size()) + " fields, found " +
                                          std::to_string(fields.size()));
        table.rows.push_back({line_no, std::move(fields)});
    }
    if (!have_header) throw ParseError(0, "empty file");
    return table;
}

inline void expect_header(const CsvTable& t, const std::vector<std::string>& expected) {
    if (t.header != expected) {
        std::string want;
        for (const auto& h : expected) want += (want.empty() ? "" : ",") + h;
        throw ParseError(1, "expected header '" + want + "'");
    }
}

// ---- scalar series ---------------------------------------------------------

enum class SeriesFormat { Text, Csv };

inline std::string series_to_text(const ScalarSeries& s) {
    std::string out = "# T=" + format_double(s.sample_interval) + "\n";
    for (double v : s.values) out += format_double(v) + "\n";
    return out;
}

inline ScalarSeries series_from_text(std::string_view text) {
    ScalarSeries s;
    bool have_header = false;
    std::size_t line_no = 0, pos = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        const auto line = trim(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
        ++line_no;
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
        if (line.empty()) continue;
        if (!have_header) {
            constexpr std::string_view prefix = "# T=";
            if (line.substr(0, prefix.size()) != prefix)
                throw ParseError(line_no, "expected '# T=<sample interval>' header");
            s.sample_interval = parse_double(line.substr(prefix.size()), line_no);
            if (!(s.sample_interval > 0.0) || !std::isfinite(s.sample_interval))
                throw ParseError(line_no, "sample interval must be positive");
            have_header = true;
            continue;
        }
        if (line.front() == '#') continue;
        const double v = parse_double(line, line_no);
        if (!std::isfinite(v)) throw ParseError(line_no, "non-finite value");
        s.values.push_back(v);
    }
    if (!have_header || s.values.empty()) throw ParseError(0, "empty series file");
    return s;
}

inline ScalarSeries series_from_csv(std::string_view text, double sample_interval) {
    const auto t = parse_csv(text);
    expect_header(t, {"x"});
    if (!(sample_interval > 0.0)) throw InvalidArgument("sample interval must be positive");
    ScalarSeries s;
    s.sample_interval = sample_interval;
    for (const auto& row : t.rows) {
        const double v = parse_double(row.fields[0], row.line);
        if (!std::isfinite(v)) throw ParseError(row.line, "non-finite value");
        s.values.push_back(v);
    }
    if (s.values.empty()) throw ParseError(0, "empty series file");
    return s;
}

inline void save_series(const std::string& path, const ScalarSeries& s) { write_file(path, series_to_text(s)); }

// CSV input carries no sample interval, so it is supplied by the caller.
inline ScalarSeries load_series(const std::string& path, SeriesFormat fmt = SeriesFormat::Text,
                                double csv_sample_interval = 1.0) {
    const std::string text = read_file(path);
    return fmt == SeriesFormat::Text ? series_from_text(text) : series_from_csv(text, csv_sample_interval);
}

// ---- point clouds and landmarks --------------------------------------------

inline std::vector<std::string> cloud_header(std::size_t m, bool with_idx) {
    std::vector<std::string> h;
    if (with_idx) h.push_back("idx");
    h.push_back("t");
    for (std::size_t k = 0; k < m; ++k) h.push_back("c" + std::to_string(k));
    return h;
}

inline std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "," : "") + parts[i];
    return out;
}

inline std::string cloud_to_csv(const PointCloud& c) {
    std::string out = join(cloud_header(c.dim(), false)) + "\n";
    for (std::size_t i = 0; i < c.size(); ++i) {
        out += std::to_string(c.time_index(i));
        for (double v : c.point(i)) out += "," + format_double(v);
        out += "\n";
    }
    return out;
}

inline std::size_t cloud_dim_from_header(const CsvTable& t, bool with_idx) {
    const std::size_t fixed = with_idx ? 2 : 1;
    if (t.header.size() <= fixed) throw ParseError(1, "point cloud header has no coordinate columns");
    const std::size_t m = t.header.size() - fixed;
    expect_header(t, cloud_header(m, with_idx));
    return m;
}

inline PointCloud cloud_from_csv(std::string_view text) {
    const auto t = parse_csv(text);
    const std::size_t m = cloud_dim_from_header(t, false);
    PointCloud c(m);
    c.reserve(t.rows.size());
    std::vector<double> p(m);
    for (const auto& row : t.rows) {
        const auto time = parse_int<std::int64_t>(row.fields[0], row.line);
        for (std::size_t k = 0; k < m; ++k) p[k] = parse_double(row.fields[k + 1], row.line);
        try {
            c.push_back(time, p);
        } catch (const InvalidArgument& e) {
            throw ParseError(row.line, e.what());
        }
    }
    if (c.empty()) throw ParseError(0, "point cloud has no points");
    return c;
}

inline void save_cloud(const std::string& path, const PointCloud& c) { write_file(path, cloud_to_csv(c)); }
inline PointCloud load_cloud(const std::string& path) { return cloud_from_csv(read_file(path)); }

inline std::string landmarks_to_csv(const LandmarkSet& l) {
    std::string out = join(cloud_header(l.coords.dim(), true)) + "\n";
    for (std::size_t i = 0; i < l.size(); ++i) {
        out += std::to_string(l.indices[i]) + "," + std::to_string(l.coords.time_index(i));
        for (double v : l.coords.point(i)) out += "," + format_double(v);
        out += "\n";
    }
    return out;
}

inline LandmarkSet landmarks_from_csv(std::string_view text) {
    const auto t = parse_csv(text);
    const std::size_t m = cloud_dim_from_header(t, true);
    LandmarkSet l;
    l.coords = PointCloud(m);
    std::vector<double> p(m);
    for (const auto& row : t.rows) {
        const auto idx = parse_int<std::size_t>(row.fields[0], row.line);
        const auto time = parse_int<std::int64_t>(row.fields[1], row.line);
        for (std::size_t k = 0; k < m; ++k) p[k] = parse_double(row.fields[k + 2], row.line);
        if (!l.indices.empty() && idx <= l.indices.back())
            throw ParseError(row.line, "landmark indices must be strictly increasing");
        try {
            l.coords.push_back(time, p);
        } catch (const InvalidArgument& e) {
            throw ParseError(row.line, e.what());
        }
        l.indices.push_back(idx);
    }
    if (l.indices.empty()) throw ParseError(0, "landmark file has no rows");
    if (l.indices.size() >= 2) l.spacing = l.indices[1] - l.indices[0];
    return l;
}

inline void save_landmarks(const std::string& path, const LandmarkSet& l) {
    write_file(path, landmarks_to_csv(l));
}
inline LandmarkSet load_landmarks(const std::string& path) { return landmarks_from_csv(read_file(path)); }

// ---- edges, barcodes, cycles -----------------------------------------------

inline std::string edges_to_csv(const std::vector<Edge>& edges) {
    std::string out = "i,j,birth\n";
    for (const auto& e : edges)
        out += std::to_string(e.i) + "," + std::to_string(e.j) + "," + format_double(e.birth) + "\n";
    return out;
}

inline std::vector<Edge> edges_from_csv(std::string_view text) {
    const auto t = parse_csv(text);
    expect_header(t, {"i", "j", "birth"});
    std::vector<Edge> edges;
    for (const auto& row : t.rows) {
        Edge e;
        e.i = parse_int<std::uint32_t>(row.fields[0], row.line);
        e.j = parse_int<std::uint32_t>(row.fields[1], row.line);
        e.birth = parse_double(row.fields[2], row.line);
        if (e.i > e.j) std::swap(e.i, e.j);
        edges.push_back(e);
    }
    return edges;
}

inline std::string barcode_to_csv(const Barcode& bc) {
    std::string out = "k,birth,death\n";
    for (const auto& iv : bc.intervals)
        out += std::to_string(iv.k) + "," + format_double(iv.birth) + "," + format_double(iv.death) + "\n";
    return out;
}

// Intervals only; representatives and simplex positions are not stored.
inline Barcode barcode_from_csv(std::string_view text) {
    const auto t = parse_csv(text);
    expect_header(t, {"k", "birth", "death"});
    Barcode bc;
    for (const auto& row : t.rows) {
        Interval iv;
        iv.k = parse_int<std::size_t>(row.fields[0], row.line);
        iv.birth = parse_double(row.fields[1], row.line);
        iv.death = parse_double(row.fields[2], row.line);
        if (std::isnan(iv.birth) || std::isnan(iv.death) || iv.death < iv.birth)
            throw ParseError(row.line, "interval must satisfy birth <= death");
        bc.dim_cap = std::max(bc.dim_cap, iv.k + 1);
        bc.intervals.push_back(std::move(iv));
    }
    return bc;
}

// One row per simplex of each cycle, in long format.
inline std::string cycles_to_csv(const std::vector<RepresentativeCycle>& cycles) {
    std::string out = "cycle,k,birth,death,vertices\n";
    for (std::size_t c = 0; c < cycles.size(); ++c) {
        for (const auto& simplex : cycles[c].simplices) {
            std::string verts;
            for (std::size_t t = 0; t < simplex.size(); ++t) verts += (t ? " " : "") + std::to_string(simplex[t]);
            out += std::to_string(c) + "," + std::to_string(cycles[c].k) + "," + format_double(cycles[c].birth) +
                   "," + format_double(cycles[c].death) + "," + verts + "\n";
        }
    }
    return out;
}

// ---- filtration JSON -------------------------------------------------------

inline std::string filtration_to_json(const FlagFiltration& ff) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : ff.simplices) arr.push_back({{"vertices", s.vertices}, {"value", s.value}});
    return arr.dump() + "\n";
}

// dim_cap is the larger of `min_dim_cap` and the top simplex dimension.
// The JSON carries no expansion cap, so dim_cap is the highest simplex
// dimension present (at least 1): homology is only trusted below it.
inline FlagFiltration filtration_from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(0, std::string("invalid filtration JSON: ") + e.what());
    }
    if (!doc.is_array()) throw ParseError(0, "filtration JSON must be an array");
    FlagFiltration ff;
    ff.dim_cap = 1;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& item = doc[i];
        Simplex s;
        try {
            s.vertices = item.at("vertices").get<std::vector<std::uint32_t>>();
            s.value = item.at("value").get<double>();
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(0, "simplex " + std::to_string(i) + ": " + e.what());
        }
        if (s.vertices.empty()) throw ParseError(0, "simplex " + std::to_string(i) + " has no vertices");
        ff.dim_cap = std::max(ff.dim_cap, s.vertices.size() - 1);
        for (auto v : s.vertices) ff.num_vertices = std::max<std::size_t>(ff.num_vertices, v + 1);
        ff.simplices.push_back(std::move(s));
    }
    return ff;
}

// ---- dimension sweep tables ------------------------------------------------

// l rows of l comma-separated integers, no header.
inline std::string lifespan_to_csv(const LifespanMatrix& lm) {
    std::string out;
    for (std::size_t i = 0; i < lm.size(); ++i) {
        for (std::size_t j = 0; j < lm.size(); ++j) out += (j ? "," : "") + std::to_string(lm(i, j));
        out += "\n";
    }
    return out;
}

inline LifespanMatrix lifespan_from_csv(std::string_view text) {
    std::vector<std::vector<std::uint32_t>> rows;
    std::size_t line_no = 0, pos = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        const auto line = trim(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
        ++line_no;
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
        if (line.empty()) continue;
        std::vector<std::uint32_t> row;
        for (auto f : split(line)) row.push_back(parse_int<std::uint32_t>(f, line_no));
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError(line_no, "ragged lifespan matrix");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError(0, "empty lifespan matrix");
    if (rows.size() != rows.front().size()) throw ParseError(0, "lifespan matrix is not square");
    LifespanMatrix lm(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.size(); ++j) {
            if (rows[i][j] != rows[j][i]) throw ParseError(i + 1, "lifespan matrix is not symmetric");
            if (i == j && rows[i][j] != 0) throw ParseError(i + 1, "lifespan matrix diagonal must be 0");
            if (i < j) lm.set(i, j, rows[i][j]);
        }
    return lm;
}

// i, j, and the dimension bitmask (bit m-1 set when the edge exists at m).
inline std::string existence_to_csv(const std::vector<EdgeExistence>& ex) {
    std::string out = "i,j,mask\n";
    for (const auto& e : ex)
        out += std::to_string(e.i) + "," + std::to_string(e.j) + "," + std::to_string(e.mask) + "\n";
    return out;
}

inline std::string dimension_barcode_to_csv(const std::vector<DimensionInterval>& ivs) {
    std::string out = "partner,m_birth,m_death,alive_at_max\n";
    for (const auto& iv : ivs)
        out += std::to_string(iv.partner) + "," + std::to_string(iv.m_birth) + "," + std::to_string(iv.m_death) +
               "," + (iv.alive_at_max ? "1" : "0") + "\n";
    return out;
}

} // namespace topo_recon::io
