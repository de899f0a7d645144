// Command-line front end: sampling, verification and ensemble statistics.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or guard error.
// Output headers echo the semantic configuration (command, sizes, seed),
// never the thread count or output paths, so reruns are byte-identical
// whatever the parallelism.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "feuille/metrics.hpp"
#include "feuille/oracles.hpp"

using namespace feuille;
namespace fs = std::filesystem;

namespace {

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct RunConfig {
    std::string command;
    i64 n = 0;
    i64 depth = 1;
    std::uint64_t seed = 0;
    i64 replicates = 1;
    i64 max_n = 4;
    i64 grid_min = 1024;
    int threads = 0;
    std::string out_dir = ".";
    bool simplify = false;
    bool svg = true;
    int svg_width = 640;
    int svg_height = 400;
    bool inject_fault = false;

    std::string header(std::uint64_t replicate) const {
        std::ostringstream os;
        os << "# feuille " << command << " --n " << n << " --depth " << depth << " --seed " << seed
           << " --replicates " << replicates << " seed=" << seed << ":" << replicate;
        return os.str();
    }
};

std::ofstream open_out(const RunConfig& cfg, const std::string& name) {
    fs::create_directories(cfg.out_dir);
    fs::path p = fs::path(cfg.out_dir) / name;
    std::ofstream f(p);
    if (!f) throw std::runtime_error("cannot open output file: " + p.string());
    return f;
}

int cmd_sample(const RunConfig& cfg) {
    for (i64 r = 0; r < cfg.replicates; ++r) {
        Seed s{cfg.seed, static_cast<std::uint64_t>(r)};
        IteratedSnake snake = sample_iterated_snake(cfg.n, cfg.depth, s);
        for (i64 j = 1; j <= cfg.depth; ++j) {
            std::ofstream f = open_out(cfg, "layer" + std::to_string(j) + "_r" + std::to_string(r) + ".csv");
            f << cfg.header(r) << "\n";
            write_process_csv(f, j, cfg.n, snake.layers[j - 1].contour, snake.layers[j - 1].labels);
        }
        Feuilletage fl = build_feuilletage(snake);
        std::ofstream f = open_out(cfg, "edges_r" + std::to_string(r) + ".txt");
        f << cfg.header(r) << "\n";
        write_edge_list(f, fl, s, cfg.simplify);
    }
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    if (cfg.max_n < 1 || cfg.max_n > 8) {
        std::cerr << "verify: --max-n must be within the oracle guards (1..8)\n";
        return 2;
    }
    inject_catalan_fault(cfg.inject_fault);
    bool all_ok = true;
    auto report = [&](const std::string& name, bool ok, const std::string& detail) {
        std::cout << (ok ? "PASS " : "FAIL ") << name;
        if (!detail.empty()) std::cout << " (" << detail << ")";
        std::cout << "\n";
        if (!ok) all_ok = false;
    };

    // codec round trips and corner identities
    for (i64 n = 1; n <= cfg.max_n; ++n) {
        bool ok = true;
        i64 count = 0;
        std::string detail;
        for_each_dyck(n, [&](const Walk& c) {
            ++count;
            Walk h = contour_to_height(c);
            if (height_to_contour(h) != c) ok = false;
            PlanarTree t = height_to_tree(h);
            if (tree_to_height(t) != h) ok = false;
            for (i64 k = 0; k <= n; ++k) {
                i64 m = first_corner(h, k);
                if (m != 2 * k - h[k] || c[m] != h[k]) ok = false;
            }
        });
        if (count != catalan_number(n)) {
            ok = false;
            detail = "count " + std::to_string(count) + " != C_n " + std::to_string(catalan_number(n));
        }
        report("codec round trips n=" + std::to_string(n), ok, detail);
    }

    // conjugation lands in the height-sequence family
    for (i64 len = 1; len <= cfg.max_n; ++len) {
        bool ok = true;
        // every label sequence of length len
        Walk l(len + 1, 0);
        std::function<void(i64)> rec = [&](i64 i) {
            if (!ok) return;
            if (i == len) {
                if (l[len] != 0) return;
                Conjugation conj = conjugate_labels(l);
                if (!is_height_seq(conj.height)) ok = false;
                return;
            }
            for (i64 d = -1; d <= 1; ++d) {
                l[i + 1] = l[i] + d;
                rec(i + 1);
            }
        };
        rec(0);
        report("conjugation closure N=" + std::to_string(len), ok, "");
    }

    for (i64 n = 1; n <= std::min<i64>(cfg.max_n, 5); ++n) {
        EnumerationReport rep = verify_cvs_exhaustive(n);
        std::ostringstream detail;
        detail << "count " << rep.exact_count << " vs formula " << rep.formula_count;
        report("cvs bijection n=" + std::to_string(n), rep.ok(), detail.str());
    }

    for (i64 n = 1; n <= std::min<i64>(cfg.max_n, 3); ++n) {
        for (i64 d = 1; d <= 3; ++d) {
            EnumerationReport rep = verify_feuilletage_counts(n, d);
            std::ostringstream detail;
            detail << rep.exact_count << " realizations";
            if (!rep.mismatches.empty()) detail << "; " << rep.mismatches.front();
            report("feuilletage counts n=" + std::to_string(n) + " D=" + std::to_string(d), rep.ok(),
                   detail.str());
        }
    }
    return all_ok ? 0 : 1;
}

int cmd_stats(const RunConfig& cfg) {
    int threads = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
    Seed seed{cfg.seed, 0};

    EnsembleSummary es = ensemble_summary(cfg.n, cfg.depth, cfg.replicates, seed, threads);

    std::vector<i64> grid;
    for (i64 g = cfg.grid_min; g <= cfg.n; g *= 2) grid.push_back(g);
    ExponentFit fit;
    bool have_fit = grid.size() >= 2;
    if (have_fit) fit = fit_diameter_exponent(grid, cfg.depth, cfg.replicates, seed, threads);

    {
        std::ofstream f = open_out(cfg, "profile.csv");
        f << cfg.header(0) << "\n";
        f << "r,count\n";
        for (std::size_t r = 0; r < es.mean_profile.size(); ++r)
            f << r << "," << fmt_double(es.mean_profile[r]) << "\n";
    }
    {
        std::ofstream f = open_out(cfg, "balls.csv");
        f << cfg.header(0) << "\n";
        f << "r,N_r,ratio\n";
        double acc = 0;
        for (std::size_t r = 0; r < es.mean_profile.size(); ++r) {
            acc += es.mean_profile[r];
            f << r << "," << fmt_double(acc) << "," << fmt_double(es.mean_ratios[r]) << "\n";
        }
    }
    {
        std::ofstream f = open_out(cfg, "summary.csv");
        f << cfg.header(0) << "\n";
        if (have_fit)
            f << "# exponent=" << fmt_double(fit.exponent) << " half_width=" << fmt_double(fit.half_width)
              << " grid=" << grid.front() << ".." << grid.back() << "\n";
        f << "# mass=" << fmt_double([&] {
            double m = 0;
            for (double q : es.mean_profile) m += q / es.norm_scale_y / es.norm_scale_x;
            return m;
        }()) << "\n";
        f << "x,mean_q,stderr\n";
        for (std::size_t r = 0; r < es.mean_profile.size(); ++r)
            f << fmt_double(r / es.norm_scale_x) << "," << fmt_double(es.mean_profile[r] / es.norm_scale_y)
              << "," << fmt_double(es.stderr_profile[r] / es.norm_scale_y) << "\n";
    }
    if (cfg.svg) {
        {
            IteratedSnake snake = sample_iterated_snake(cfg.n, cfg.depth, seed);
            std::vector<SvgSeries> series;
            const char* colors[] = {"#1f6feb", "#d73a49", "#28a745", "#6f42c1", "#e36209"};
            for (i64 j = 0; j < cfg.depth; ++j) {
                SvgSeries sc, sl;
                const Walk& c = snake.layers[j].contour;
                const Walk& l = snake.layers[j].labels;
                for (std::size_t i = 0; i < c.size(); ++i) {
                    double x = static_cast<double>(i) / (c.size() - 1);
                    sc.x.push_back(x);
                    sc.y.push_back(static_cast<double>(c[i]));
                    sl.x.push_back(x);
                    sl.y.push_back(static_cast<double>(l[i]));
                }
                sc.color = colors[j % 5];
                sl.color = colors[(j + 2) % 5];
                series.push_back(std::move(sc));
                series.push_back(std::move(sl));
            }
            std::ofstream f = open_out(cfg, "processes.svg");
            write_svg_polylines(f, series, cfg.svg_width, cfg.svg_height, "contour and label processes");
        }
        {
            SvgSeries s;
            for (std::size_t r = 0; r < es.mean_profile.size(); ++r) {
                s.x.push_back(r / es.norm_scale_x);
                s.y.push_back(es.mean_profile[r] / es.norm_scale_y);
            }
            std::ofstream f = open_out(cfg, "profile.svg");
            write_svg_polylines(f, {s}, cfg.svg_width, cfg.svg_height, "mean normalized profile");
        }
        {
            SvgSeries s;
            for (std::size_t r = 0; r < es.mean_ratios.size(); ++r) {
                s.x.push_back(static_cast<double>(r));
                s.y.push_back(es.mean_ratios[r]);
            }
            std::ofstream f = open_out(cfg, "balls.svg");
            write_svg_polylines(f, {s}, cfg.svg_width, cfg.svg_height, "mean log N_r / log(r+1)");
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"iterated discrete snakes, quadrangulations and feuilletages"};
    app.require_subcommand(1);
    RunConfig cfg;

    CLI::App* sample = app.add_subcommand("sample", "sample snakes and dump processes + edge list");
    sample->add_option("--n", cfg.n, "base size (edges of the first tree)")->required();
    sample->add_option("--depth", cfg.depth, "number of levels");
    sample->add_option("--seed", cfg.seed, "master seed");
    sample->add_option("--replicates", cfg.replicates, "independent replicates");
    sample->add_option("--threads", cfg.threads, "replicate parallelism cap");
    sample->add_option("--out", cfg.out_dir, "output directory");
    sample->add_flag("--simplify-edges", cfg.simplify, "drop loops and parallel edges in the export");

    CLI::App* verify = app.add_subcommand("verify", "run the exhaustive oracle suite");
    verify->add_option("--max-n", cfg.max_n, "largest size for the exhaustive checks");
    verify->add_flag("--inject-fault", cfg.inject_fault, "corrupt an internal table (test hook)");

    CLI::App* stats = app.add_subcommand("stats", "ensemble profiles, ball volumes, exponent fit");
    stats->add_option("--n", cfg.n, "feuilletage size")->required();
    stats->add_option("--depth", cfg.depth, "number of levels");
    stats->add_option("--seed", cfg.seed, "master seed");
    stats->add_option("--replicates", cfg.replicates, "ensemble size");
    stats->add_option("--threads", cfg.threads, "replicate parallelism cap");
    stats->add_option("--out", cfg.out_dir, "output directory");
    stats->add_option("--grid-min", cfg.grid_min, "smallest n of the exponent grid");
    stats->add_option("--svg-width", cfg.svg_width, "figure width");
    stats->add_option("--svg-height", cfg.svg_height, "figure height");
    stats->add_flag("--svg,!--no-svg", cfg.svg, "emit SVG figures");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sample->parsed()) {
            cfg.command = "sample";
            if (cfg.n < 1 || cfg.depth < 1 || cfg.replicates < 1) {
                std::cerr << "sample: --n, --depth and --replicates must be positive\n";
                return 2;
            }
            return cmd_sample(cfg);
        }
        if (verify->parsed()) {
            cfg.command = "verify";
            return cmd_verify(cfg);
        }
        if (stats->parsed()) {
            cfg.command = "stats";
            if (cfg.n < 1 || cfg.depth < 1 || cfg.replicates < 1) {
                std::cerr << "stats: --n, --depth and --replicates must be positive\n";
                return 2;
            }
            return cmd_stats(cfg);
        }
    } catch (const std::out_of_range& e) {
        std::cerr << "guard error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
