// topo-recon: command-line front end for delay reconstruction, fuzzy witness
// complexes, persistence barcodes and embedding-dimension sweeps.
//
// Every subcommand writes a run.json provenance record (parameters plus a
// SHA-256 checksum of each output file) next to its outputs.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "topo_recon/topo_recon.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
namespace tr = topo_recon;

namespace {

struct GlobalOptions {
    std::uint64_t seed = 0;
    std::string out_dir;
    unsigned threads = 0;
};

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

// Collects outputs of one invocation and writes run.json.
class Run {
public:
    Run(const GlobalOptions& g, CLI::App* sub, std::string name) : g_(g), sub_(sub), name_(std::move(name)) {}

    // Output path, resolved against --out-dir when relative.
    std::string out_path(const std::string& p) const {
        if (g_.out_dir.empty() || fs::path(p).is_absolute()) return p;
        return (fs::path(g_.out_dir) / p).string();
    }

    void write(const std::string& path, const std::string& content) {
        const fs::path parent = fs::path(path).parent_path();
        if (!parent.empty()) fs::create_directories(parent);
        tr::io::write_file(path, content);
        outputs_.push_back({path, sha256_hex(content)});
    }

    void finish(const std::string& run_dir) const {
        json params = json::object();
        for (const CLI::Option* opt : sub_->get_options()) {
            if (opt->get_name() == "--help" || opt->get_name().empty()) continue;
            const auto& res = opt->results();
            std::string key = opt->get_name();
            while (!key.empty() && key.front() == '-') key.erase(key.begin());
            if (res.empty()) {
                params[key] = opt->get_default_str().empty() ? json(nullptr) : json(opt->get_default_str());
            } else {
                params[key] = res.size() == 1 ? json(res.front()) : json(res);
            }
        }
        json doc = {
            {"tool", "topo-recon"},
            {"subcommand", name_},
            {"seed", g_.seed},
            {"threads", g_.threads},
            {"parameters", params},
        };
        json outs = json::array();
        for (const auto& [path, sum] : outputs_) outs.push_back({{"path", path}, {"sha256", sum}});
        doc["outputs"] = outs;
        const fs::path dir = run_dir.empty() ? fs::path(".") : fs::path(run_dir);
        fs::create_directories(dir);
        tr::io::write_file((dir / "run.json").string(), doc.dump(2) + "\n");
    }

    std::string default_run_dir(const std::string& primary_output) const {
        if (!g_.out_dir.empty()) return g_.out_dir;
        const fs::path parent = fs::path(primary_output).parent_path();
        return parent.empty() ? "." : parent.string();
    }

private:
    const GlobalOptions& g_;
    CLI::App* sub_;
    std::string name_;
    std::vector<std::pair<std::string, std::string>> outputs_;
};

std::vector<double> parse_list(const std::string& text, std::size_t expected, const std::string& what) {
    std::vector<double> out;
    for (auto f : tr::io::split(text)) out.push_back(tr::io::parse_double(f, 0));
    if (expected && out.size() != expected)
        throw tr::InvalidArgument(what + " needs " + std::to_string(expected) + " comma-separated values");
    return out;
}

tr::io::SeriesFormat series_format(const std::string& f) {
    if (f == "text") return tr::io::SeriesFormat::Text;
    if (f == "csv") return tr::io::SeriesFormat::Csv;
    throw tr::InvalidArgument("unknown series format '" + f + "'");
}

// "auto" -> first AMI minimum, otherwise an explicit sample count.
std::size_t resolve_tau(const tr::ScalarSeries& s, const std::string& tau, std::size_t tau_max, std::size_t bins) {
    if (tau != "auto") {
        const auto v = tr::io::parse_int<std::size_t>(tau, 0);
        if (v == 0) throw tr::InvalidArgument("tau must be at least 1");
        return v;
    }
    tau_max = std::min(tau_max, s.size() - 1);
    const auto curve = tr::ami_curve(s, tau_max, bins ? bins : tr::default_ami_bins(s.size()));
    const auto tau_min = tr::first_minimum(curve);
    if (!tau_min) throw tr::DegenerateInput("AMI curve has no local minimum up to tau_max=" + std::to_string(tau_max));
    return *tau_min;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Delay reconstruction, fuzzy witness complexes and persistence"};
    app.name("topo-recon");
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand
    GlobalOptions g;
    app.add_option("--seed", g.seed, "Random seed")->default_val(0);
    app.add_option("--out-dir", g.out_dir, "Directory for relative output paths and run.json");
    app.add_option("--threads", g.threads, "Worker threads (0 = auto); results do not depend on it")->default_val(0);

    std::function<void()> action;

    // ---- generate ----------------------------------------------------------
    auto* gen = app.add_subcommand("generate", "Generate a reference trajectory and its scalar observation");
    auto* lorenz = gen->add_subcommand("lorenz", "Lorenz system by fixed-step RK4");
    gen->require_subcommand(1);
    struct {
        double r = 28, b = 8.0 / 3.0, sigma = 10, dt = 0.001;
        std::size_t steps = 100000, transient = 10000;
        std::string ic = "1,1,1", measure = "x", out, cloud_out;
    } gen_opt;
    lorenz->add_option("--r", gen_opt.r)->default_val(28.0);
    lorenz->add_option("--b", gen_opt.b)->default_str(tr::io::format_double(8.0 / 3.0));
    lorenz->add_option("--sigma", gen_opt.sigma)->default_val(10.0);
    lorenz->add_option("--dt", gen_opt.dt)->default_val(0.001);
    lorenz->add_option("--steps", gen_opt.steps, "Number of output samples")->default_val(100000);
    lorenz->add_option("--transient", gen_opt.transient, "Steps discarded before output")->default_val(10000);
    lorenz->add_option("--ic", gen_opt.ic, "Initial condition x,y,z")->default_val("1,1,1");
    lorenz->add_option("--measure", gen_opt.measure, "Observed coordinate: x, y, z or an index")->default_val("x");
    lorenz->add_option("--out", gen_opt.out, "Scalar series output")->required();
    lorenz->add_option("--cloud-out", gen_opt.cloud_out, "Optional full-state trajectory as a point cloud CSV");
    lorenz->callback([&] {
        action = [&] {
            Run run(g, lorenz, "generate lorenz");
            const auto ic = parse_list(gen_opt.ic, 3, "--ic");
            const auto traj = tr::integrate_lorenz({gen_opt.r, gen_opt.b, gen_opt.sigma}, {ic[0], ic[1], ic[2]},
                                                   gen_opt.dt, gen_opt.steps, gen_opt.transient);
            const auto series = tr::observe(traj, tr::MeasurementFn::parse(gen_opt.measure));
            const auto out = run.out_path(gen_opt.out);
            run.write(out, tr::io::series_to_text(series));
            if (!gen_opt.cloud_out.empty())
                run.write(run.out_path(gen_opt.cloud_out), tr::io::cloud_to_csv(tr::to_cloud(traj)));
            run.finish(run.default_run_dir(out));
        };
    });

    // ---- noise -------------------------------------------------------------
    auto* noise = app.add_subcommand("noise", "Add uniform noise on [-nu/2, nu/2] to a series");
    struct {
        double nu = 0;
        std::string in, out, format = "text";
        double sample_interval = 1.0;
    } noise_opt;
    noise->add_option("--nu", noise_opt.nu, "Noise width")->required();
    noise->add_option("--in", noise_opt.in)->required();
    noise->add_option("--out", noise_opt.out)->required();
    noise->add_option("--format", noise_opt.format, "Input format: text or csv")->default_val("text");
    noise->add_option("--sample-interval", noise_opt.sample_interval, "T for csv input")->default_val(1.0);
    noise->callback([&] {
        action = [&] {
            Run run(g, noise, "noise");
            const auto s = tr::io::load_series(noise_opt.in, series_format(noise_opt.format), noise_opt.sample_interval);
            const auto out = run.out_path(noise_opt.out);
            run.write(out, tr::io::series_to_text(tr::add_uniform_noise(s, noise_opt.nu, g.seed)));
            run.finish(run.default_run_dir(out));
        };
    });

    // ---- ami ---------------------------------------------------------------
    auto* ami = app.add_subcommand("ami", "Average mutual information curve and its first minimum");
    struct {
        std::string in, out, format = "text";
        std::size_t tau_max = 500, bins = 0;
        double sample_interval = 1.0;
    } ami_opt;
    ami->add_option("--in", ami_opt.in)->required();
    ami->add_option("--tau-max", ami_opt.tau_max)->default_val(500);
    ami->add_option("--bins", ami_opt.bins, "Histogram bins (0 = automatic)")->default_val(0);
    ami->add_option("--out", ami_opt.out, "CSV with columns tau,ami_bits")->required();
    ami->add_option("--format", ami_opt.format)->default_val("text");
    ami->add_option("--sample-interval", ami_opt.sample_interval)->default_val(1.0);
    ami->callback([&] {
        action = [&] {
            Run run(g, ami, "ami");
            const auto s = tr::io::load_series(ami_opt.in, series_format(ami_opt.format), ami_opt.sample_interval);
            const auto bins = ami_opt.bins ? ami_opt.bins : tr::default_ami_bins(s.size());
            const auto curve = tr::ami_curve(s, ami_opt.tau_max, bins);
            std::string csv = "tau,ami_bits\n";
            for (std::size_t t = 0; t < curve.values.size(); ++t)
                csv += std::to_string(t) + "," + tr::io::format_double(curve.values[t]) + "\n";
            const auto out = run.out_path(ami_opt.out);
            run.write(out, csv);
            const auto m = tr::first_minimum(curve);
            if (m)
                std::cout << "first_minimum " << *m << "\n";
            else
                std::cout << "first_minimum none\n";
            run.finish(run.default_run_dir(out));
        };
    });

    // ---- embed -------------------------------------------------------------
    auto* embed = app.add_subcommand("embed", "Delay-coordinate reconstruction");
    struct {
        std::string in, out, tau = "auto", format = "text";
        std::size_t m = 2, m_anchor = 0, tau_max = 500, bins = 0;
        double sample_interval = 1.0;
    } embed_opt;
    embed->add_option("--in", embed_opt.in)->required();
    embed->add_option("--m", embed_opt.m, "Embedding dimension")->required();
    embed->add_option("--tau", embed_opt.tau, "Delay in samples, or 'auto' for the first AMI minimum")->default_val("auto");
    embed->add_option("--m-anchor", embed_opt.m_anchor, "Anchor dimension (0 = m)")->default_val(0);
    embed->add_option("--tau-max", embed_opt.tau_max, "AMI search range for --tau auto")->default_val(500);
    embed->add_option("--bins", embed_opt.bins, "AMI bins for --tau auto (0 = automatic)")->default_val(0);
    embed->add_option("--out", embed_opt.out)->required();
    embed->add_option("--format", embed_opt.format)->default_val("text");
    embed->add_option("--sample-interval", embed_opt.sample_interval)->default_val(1.0);
    embed->callback([&] {
        action = [&] {
            Run run(g, embed, "embed");
            const auto s = tr::io::load_series(embed_opt.in, series_format(embed_opt.format), embed_opt.sample_interval);
            const auto tau = resolve_tau(s, embed_opt.tau, embed_opt.tau_max, embed_opt.bins);
            const auto anchor = embed_opt.m_anchor ? embed_opt.m_anchor : embed_opt.m;
            const auto cloud = tr::delay_embed(s, embed_opt.m, tau, anchor);
            const auto out = run.out_path(embed_opt.out);
            run.write(out, tr::io::cloud_to_csv(cloud));
            std::cout << "tau " << tau << "\npoints " << cloud.size() << "\n";
            run.finish(run.default_run_dir(out));
        };
    });

    // ---- landmarks ---------------------------------------------------------
    auto* lmk = app.add_subcommand("landmarks", "Select landmarks from a witness cloud");
    struct {
        std::string in, out;
        std::size_t every = 0, maxmin = 0;
    } lmk_opt;
    lmk->add_option("--in", lmk_opt.in)->required();
    auto* every_opt = lmk->add_option("--every", lmk_opt.every, "Every n-th point");
    auto* maxmin_opt = lmk->add_option("--maxmin", lmk_opt.maxmin, "Number of max-min landmarks");
    every_opt->excludes(maxmin_opt);
    lmk->add_option("--out", lmk_opt.out)->required();
    lmk->callback([&] {
        action = [&] {
            Run run(g, lmk, "landmarks");
            const auto cloud = tr::io::load_cloud(lmk_opt.in);
            tr::LandmarkSet l;
            if (lmk_opt.maxmin)
                l = tr::select_maxmin(cloud, lmk_opt.maxmin, g.seed);
            else if (lmk_opt.every)
                l = tr::select_evenly_spaced(cloud, lmk_opt.every);
            else
                throw tr::InvalidArgument("one of --every or --maxmin is required");
            const auto out = run.out_path(lmk_opt.out);
            run.write(out, tr::io::landmarks_to_csv(l));
            std::cout << "landmarks " << l.size() << "\n";
            run.finish(run.default_run_dir(out));
        };
    });

    // ---- complex -----------------------------------------------------------
    auto* cpx = app.add_subcommand("complex", "Fuzzy witness flag filtration");
    struct {
        std::string witnesses, landmarks, out, skeleton_prefix;
        std::optional<double> xi, epsilon;
        std::size_t dim_cap = 3, max_simplices = 100'000'000;
    } cpx_opt;
    cpx->add_option("--witnesses", cpx_opt.witnesses)->required();
    cpx->add_option("--landmarks", cpx_opt.landmarks)->required();
    auto* xi_opt = cpx->add_option("--xi", cpx_opt.xi, "Scale cap as a fraction of the witness diameter");
    auto* eps_opt = cpx->add_option("--epsilon", cpx_opt.epsilon, "Scale cap in data units");
    xi_opt->excludes(eps_opt);
    cpx->add_option("--dim-cap", cpx_opt.dim_cap)->default_val(3);
    cpx->add_option("--max-simplices", cpx_opt.max_simplices)->default_val(100'000'000);
    cpx->add_option("--out", cpx_opt.out, "Filtration JSON")->required();
    cpx->add_option("--skeleton-prefix", cpx_opt.skeleton_prefix,
                    "Also write <prefix>_edges.csv and <prefix>_landmarks.csv at the cap");
    cpx->callback([&] {
        action = [&] {
            Run run(g, cpx, "complex");
            const auto w = tr::io::load_cloud(cpx_opt.witnesses);
            const auto l = tr::io::load_landmarks(cpx_opt.landmarks);
            double cap = tr::kInfinity;
            if (cpx_opt.xi) cap = tr::epsilon_from_xi(*cpx_opt.xi, w).epsilon;
            if (cpx_opt.epsilon) cap = *cpx_opt.epsilon;
            const auto ef = tr::edge_births(w, l, {cap, g.threads});
            const auto ff = tr::flag_expand(ef, cpx_opt.dim_cap, {cpx_opt.max_simplices, cap});
            const auto out = run.out_path(cpx_opt.out);
            run.write(out, tr::io::filtration_to_json(ff));
            if (!cpx_opt.skeleton_prefix.empty()) {
                run.write(run.out_path(cpx_opt.skeleton_prefix + "_edges.csv"),
                          tr::io::edges_to_csv(tr::skeleton_edges(ff, cap)));
                run.write(run.out_path(cpx_opt.skeleton_prefix + "_landmarks.csv"), tr::io::landmarks_to_csv(l));
            }
            std::cout << "epsilon " << tr::io::format_double(cap) << "\nsimplices " << ff.simplices.size() << "\n";
            run.finish(run.default_run_dir(out));
        };
    });

    // ---- barcode -----------------------------------------------------------
    auto* bar = app.add_subcommand("barcode", "Persistent homology of a filtration");
    struct {
        std::string filtration, out, eps_grid, grid_out, cycles;
        std::size_t dim_cap = 3, top = 2;
    } bar_opt;
    bar->add_option("--filtration", bar_opt.filtration)->required();
    bar->add_option("--out", bar_opt.out, "Barcode CSV (k,birth,death)")->required();
    bar->add_option("--dim-cap", bar_opt.dim_cap,
                    "Homology is reported below this dimension (and below the filtration's top dimension)")
        ->default_val(3);
    bar->add_option("--eps-grid", bar_opt.eps_grid, "min,max,n: Betti numbers on a uniform epsilon grid");
    bar->add_option("--grid-out", bar_opt.grid_out, "Grid CSV path (default <out>.grid.csv)");
    bar->add_option("--cycles", bar_opt.cycles, "Representative 1-cycles of the longest bars (CSV)");
    bar->add_option("--top", bar_opt.top, "Number of representative cycles")->default_val(2);
    bar->callback([&] {
        action = [&] {
            Run run(g, bar, "barcode");
            if (bar_opt.dim_cap < 1) throw tr::InvalidArgument("--dim-cap must be at least 1");
            auto ff = tr::io::filtration_from_json(tr::io::read_file(bar_opt.filtration));
            if (ff.dim_cap > bar_opt.dim_cap) {
                // dropping the higher simplices leaves lower homology intact
                std::erase_if(ff.simplices, [&](const tr::Simplex& s) { return s.dim() > bar_opt.dim_cap; });
                ff.dim_cap = bar_opt.dim_cap;
            }
            tr::PersistenceOptions popt;
            if (bar_opt.cycles.empty()) popt.representatives.clear();
            const auto bc = tr::persistent_homology(ff, popt);
            const auto out = run.out_path(bar_opt.out);
            run.write(out, tr::io::barcode_to_csv(bc));
            if (!bar_opt.eps_grid.empty()) {
                const auto grid = parse_list(bar_opt.eps_grid, 3, "--eps-grid");
                const auto n = static_cast<std::size_t>(grid[2]);
                if (n < 1 || grid[1] < grid[0]) throw tr::InvalidArgument("--eps-grid needs min <= max and n >= 1");
                std::string csv = "epsilon";
                for (std::size_t k = 0; k < bc.dim_cap; ++k) csv += ",b" + std::to_string(k);
                csv += "\n";
                for (std::size_t i = 0; i < n; ++i) {
                    const double eps = n == 1 ? grid[0] : grid[0] + (grid[1] - grid[0]) * i / (n - 1);
                    const auto b = tr::betti_at(bc, eps);
                    csv += tr::io::format_double(eps);
                    for (std::size_t k = 0; k < bc.dim_cap; ++k) csv += "," + std::to_string(b[k]);
                    csv += "\n";
                }
                run.write(run.out_path(bar_opt.grid_out.empty() ? bar_opt.out + ".grid.csv" : bar_opt.grid_out), csv);
            }
            if (!bar_opt.cycles.empty())
                run.write(run.out_path(bar_opt.cycles),
                          tr::io::cycles_to_csv(tr::representative_cycles(bc, 1, bar_opt.top)));
            run.finish(run.default_run_dir(out));
        };
    });

    // ---- mscan -------------------------------------------------------------
    auto* ms = app.add_subcommand("mscan", "Sweep embedding dimension and track edge lifespans");
    struct {
        std::string in, tau = "auto", format = "text", landmarks_for_barcode = "0";
        double xi = 0.0054, sample_interval = 1.0;
        std::size_t every = 500, m_max = 8, tau_max = 500, bins = 0, dim_cap = 2;
    } ms_opt;
    ms->add_option("--in", ms_opt.in)->required();
    ms->add_option("--tau", ms_opt.tau)->default_val("auto");
    ms->add_option("--xi", ms_opt.xi)->default_val(0.0054);
    ms->add_option("--every", ms_opt.every)->default_val(500);
    ms->add_option("--m-max", ms_opt.m_max)->default_val(8);
    ms->add_option("--tau-max", ms_opt.tau_max)->default_val(500);
    ms->add_option("--bins", ms_opt.bins)->default_val(0);
    ms->add_option("--dim-cap", ms_opt.dim_cap, "Simplex dimension cap for per-m and Delta m homology")->default_val(2);
    ms->add_option("--barcode-landmarks", ms_opt.landmarks_for_barcode,
                   "Comma-separated landmark indices for dimension_barcode_<i>.csv, or 'all'")
        ->default_val("0");
    ms->add_option("--format", ms_opt.format)->default_val("text");
    ms->add_option("--sample-interval", ms_opt.sample_interval)->default_val(1.0);
    ms->callback([&] {
        action = [&] {
            Run run(g, ms, "mscan");
            const auto s = tr::io::load_series(ms_opt.in, series_format(ms_opt.format), ms_opt.sample_interval);
            const auto tau = resolve_tau(s, ms_opt.tau, ms_opt.tau_max, ms_opt.bins);
            const auto sw = tr::sweep(s, tau, ms_opt.xi, ms_opt.every, ms_opt.m_max, {g.threads});
            const auto lm = tr::lifespan_matrix(sw);
            run.write(run.out_path("lifespan.csv"), tr::io::lifespan_to_csv(lm));
            run.write(run.out_path("existence.csv"), tr::io::existence_to_csv(sw.existence));

            std::vector<std::size_t> which;
            if (ms_opt.landmarks_for_barcode == "all") {
                for (std::size_t i = 0; i < sw.num_landmarks(); ++i) which.push_back(i);
            } else if (!ms_opt.landmarks_for_barcode.empty()) {
                for (auto f : tr::io::split(ms_opt.landmarks_for_barcode))
                    which.push_back(tr::io::parse_int<std::size_t>(f, 0));
            }
            for (auto i : which)
                run.write(run.out_path("dimension_barcode_" + std::to_string(i) + ".csv"),
                          tr::io::dimension_barcode_to_csv(tr::dimension_barcode(sw, i)));

            const auto dm = tr::dm_filtration(sw, ms_opt.dim_cap);
            run.write(run.out_path("dm_barcode.csv"), tr::io::barcode_to_csv(dm.barcode));
            std::string levels = "lifespan_at_least,edges,b0,b1\n";
            for (std::size_t k = sw.m_max; k >= 1; --k) {
                const auto b = tr::betti_at(dm.barcode, tr::DmFiltration::value_of(sw.m_max, k));
                levels += std::to_string(k) + "," + std::to_string(dm.levels[k].size()) + "," + std::to_string(b[0]) +
                          "," + std::to_string(b[1]) + "\n";
            }
            run.write(run.out_path("dm_levels.csv"), levels);

            std::string per_m = "m,diameter,epsilon,edges,b0,b1\n";
            for (const auto& level : sw.levels) {
                const auto bc = tr::persistent_homology(tr::flag_expand(level.births, ms_opt.dim_cap), {{}, true});
                const auto b = tr::betti_at(bc, level.epsilon);
                std::size_t alive = 0;
                for (const auto& e : level.births.edges)
                    if (e.birth <= level.epsilon) ++alive;
                per_m += std::to_string(level.m) + "," + tr::io::format_double(level.diameter) + "," +
                         tr::io::format_double(level.epsilon) + "," + std::to_string(alive) + "," +
                         std::to_string(b[0]) + "," + std::to_string(b[1]) + "\n";
            }
            run.write(run.out_path("sweep.csv"), per_m);

            std::string runs = "i,j,length,min_lifespan\n";
            for (const auto& r : tr::diagonal_runs(lm))
                runs += std::to_string(r.i) + "," + std::to_string(r.j) + "," + std::to_string(r.length) + "," +
                        std::to_string(r.min_lifespan) + "\n";
            run.write(run.out_path("diagonal_runs.csv"), runs);

            std::cout << "tau " << tau << "\nlandmarks " << sw.num_landmarks() << "\nlifespan1_edges " << lm.count(1)
                      << "\nnested " << (dm.nested ? "yes" : "no") << "\n";
            run.finish(g.out_dir.empty() ? "." : g.out_dir);
        };
    });

    // ---- render ------------------------------------------------------------
    auto* render = app.add_subcommand("render", "Static SVG renderings");
    render->require_subcommand(1);
    struct {
        std::string in, out, edges, landmarks, view, emphasize;
    } rd_opt;
    auto* rb = render->add_subcommand("barcode", "Barcode CSV to SVG");
    rb->add_option("--in", rd_opt.in)->required();
    rb->add_option("--out", rd_opt.out)->required();
    rb->callback([&] {
        action = [&] {
            Run run(g, rb, "render barcode");
            const auto bc = tr::io::barcode_from_csv(tr::io::read_file(rd_opt.in));
            const auto out = run.out_path(rd_opt.out);
            run.write(out, tr::svg::render_barcode(bc));
            run.finish(run.default_run_dir(out));
        };
    });
    auto* rh = render->add_subcommand("heatmap", "Lifespan matrix CSV to SVG");
    rh->add_option("--in", rd_opt.in)->required();
    rh->add_option("--out", rd_opt.out)->required();
    rh->callback([&] {
        action = [&] {
            Run run(g, rh, "render heatmap");
            const auto lm = tr::io::lifespan_from_csv(tr::io::read_file(rd_opt.in));
            const auto out = run.out_path(rd_opt.out);
            run.write(out, tr::svg::render_heatmap(lm));
            run.finish(run.default_run_dir(out));
        };
    });
    auto* rs = render->add_subcommand("skeleton", "Edge list and landmark table to SVG");
    rs->add_option("--edges", rd_opt.edges)->required();
    rs->add_option("--landmarks", rd_opt.landmarks)->required();
    rs->add_option("--view", rd_opt.view, "az,el in degrees for clouds of dimension >= 3");
    rs->add_option("--emphasize", rd_opt.emphasize, "Edge CSV of edges drawn thick");
    rs->add_option("--out", rd_opt.out)->required();
    rs->callback([&] {
        action = [&] {
            Run run(g, rs, "render skeleton");
            const auto edges = tr::io::edges_from_csv(tr::io::read_file(rd_opt.edges));
            const auto l = tr::io::load_landmarks(rd_opt.landmarks);
            tr::svg::SkeletonView view;
            if (!rd_opt.view.empty()) {
                const auto v = parse_list(rd_opt.view, 2, "--view");
                view.rotate = true;
                view.azimuth = v[0];
                view.elevation = v[1];
            }
            std::set<std::pair<std::uint32_t, std::uint32_t>> strong;
            if (!rd_opt.emphasize.empty())
                for (const auto& e : tr::io::edges_from_csv(tr::io::read_file(rd_opt.emphasize))) strong.insert({e.i, e.j});
            const auto out = run.out_path(rd_opt.out);
            run.write(out, tr::svg::render_skeleton(l.coords, edges, view, strong));
            run.finish(run.default_run_dir(out));
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() != 0) std::cerr << app.help();
        return app.exit(e);
    }

    try {
        if (action) action();
    } catch (const tr::Error& e) {
        std::cerr << "error: " << e.kind() << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
