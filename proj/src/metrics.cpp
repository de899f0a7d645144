#include "feuille/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace feuille {

Graph graph_from_edges(i64 n_vertices, const std::vector<std::pair<i64, i64>>& edges) {
    Graph g;
    g.n_vertices = n_vertices;
    g.offsets.assign(n_vertices + 1, 0);
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n_vertices || v < 0 || v >= n_vertices)
            throw std::invalid_argument("graph_from_edges: vertex out of range");
        ++g.offsets[u + 1];
        ++g.offsets[v + 1];
    }
    for (i64 i = 0; i < n_vertices; ++i) g.offsets[i + 1] += g.offsets[i];
    g.nbrs.assign(g.offsets.back(), 0);
    std::vector<i64> cursor(g.offsets.begin(), g.offsets.end() - 1);
    for (auto [u, v] : edges) {
        g.nbrs[cursor[u]++] = v;
        g.nbrs[cursor[v]++] = u;
    }
    return g;
}

Graph graph_from_feuilletage(const Feuilletage& f) {
    // keep loops and parallel edges; rename so the root class is vertex 0
    return graph_from_edges(f.n_classes, export_quotient_graph(f, false));
}

DistanceResult bfs_distances(const Graph& g, i64 source) {
    if (source < 0 || source >= g.n_vertices) throw std::out_of_range("bfs_distances: bad source");
    DistanceResult out;
    out.dist.assign(g.n_vertices, -1);
    std::vector<i64> queue;
    queue.reserve(g.n_vertices);
    queue.push_back(source);
    out.dist[source] = 0;
    for (std::size_t h = 0; h < queue.size(); ++h) {
        i64 u = queue[h];
        for (i64 i = g.offsets[u]; i < g.offsets[u + 1]; ++i) {
            i64 w = g.nbrs[i];
            if (out.dist[w] == -1) {
                out.dist[w] = out.dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    if (static_cast<i64>(queue.size()) != g.n_vertices) {
        for (i64 v = 0; v < g.n_vertices; ++v)
            if (out.dist[v] == -1) out.unreachable.push_back(v);
    }
    return out;
}

Profile profile(const Graph& g, i64 source) {
    DistanceResult d = bfs_distances(g, source);
    if (!d.unreachable.empty()) {
        std::ostringstream os;
        os << "profile: disconnected input, " << d.unreachable.size() << " unreachable vertices";
        throw std::invalid_argument(os.str());
    }
    i64 ecc = *std::max_element(d.dist.begin(), d.dist.end());
    Profile p;
    p.counts.assign(ecc + 1, 0);
    for (i64 x : d.dist) ++p.counts[x];
    return p;
}

BallStats ball_stats(const Profile& p) {
    BallStats b;
    b.cumulative.resize(p.counts.size());
    b.ratios.resize(p.counts.size());
    i64 acc = 0;
    for (std::size_t r = 0; r < p.counts.size(); ++r) {
        acc += p.counts[r];
        b.cumulative[r] = acc;
        // log(N_0)/log(1) is 0/0; pinned to 0
        b.ratios[r] = r == 0 ? 0.0
                             : std::log(static_cast<double>(acc)) / std::log(static_cast<double>(r + 1));
    }
    return b;
}

EccDiam eccentricity_and_diameter_bound(const Graph& g, i64 source) {
    DistanceResult d1 = bfs_distances(g, source);
    if (!d1.unreachable.empty())
        throw std::invalid_argument("eccentricity_and_diameter_bound: disconnected input");
    i64 far = source, ecc = 0;
    for (i64 v = 0; v < g.n_vertices; ++v)
        if (d1.dist[v] > ecc) {
            ecc = d1.dist[v];
            far = v;
        }
    DistanceResult d2 = bfs_distances(g, far);
    i64 ecc2 = *std::max_element(d2.dist.begin(), d2.dist.end());
    return {ecc, std::max(ecc, ecc2)};
}

namespace {

// Deterministic parallel map over replicates: results land in
// per-replicate slots, reduction is a fixed-order sequential fold.
template <typename F>
void parallel_replicates(i64 replicates, int threads, F&& body) {
    if (threads <= 1 || replicates <= 1) {
        for (i64 r = 0; r < replicates; ++r) body(r);
        return;
    }
    int workers = std::min<i64>(threads, replicates);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&, t] {
            for (i64 r = t; r < replicates; r += workers) body(r);
        });
    }
    for (auto& th : pool) th.join();
}

double kahan_sum(const std::vector<double>& xs) {
    double sum = 0.0, comp = 0.0;
    for (double x : xs) {
        double y = x - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

}  // namespace

EnsembleSummary ensemble_summary(i64 n, i64 depth, i64 replicates, Seed seed, int threads) {
    if (n < 1 || depth < 1 || replicates < 1)
        throw std::invalid_argument("ensemble_summary: parameters must be positive");
    std::vector<Profile> profiles(replicates);
    std::vector<i64> diams(replicates);
    parallel_replicates(replicates, threads, [&](i64 r) {
        Seed s{seed.master, seed.replicate + static_cast<std::uint64_t>(r)};
        IteratedSnake snake = sample_iterated_snake_trees(n, depth, s);
        Feuilletage f = build_feuilletage(snake);
        Graph g = graph_from_feuilletage(f);
        profiles[r] = profile(g, 0);
        diams[r] = eccentricity_and_diameter_bound(g, 0).diam_lower;
    });

    std::size_t max_r = 0;
    for (const auto& p : profiles) max_r = std::max(max_r, p.counts.size());

    EnsembleSummary out;
    out.n = n;
    out.depth = depth;
    out.replicates = replicates;
    out.norm_scale_x = std::pow(static_cast<double>(n), std::exp2(-static_cast<double>(depth)));
    out.norm_scale_y = std::pow(static_cast<double>(n), 1.0 - std::exp2(-static_cast<double>(depth)));
    out.mean_profile.assign(max_r, 0.0);
    out.stderr_profile.assign(max_r, 0.0);
    out.mean_ratios.assign(max_r, 0.0);

    std::vector<double> column(replicates);
    for (std::size_t r = 0; r < max_r; ++r) {
        for (i64 k = 0; k < replicates; ++k)
            column[k] = r < profiles[k].counts.size() ? static_cast<double>(profiles[k].counts[r]) : 0.0;
        double mean = kahan_sum(column) / replicates;
        out.mean_profile[r] = mean;
        if (replicates > 1) {
            std::vector<double> sq(replicates);
            for (i64 k = 0; k < replicates; ++k) sq[k] = (column[k] - mean) * (column[k] - mean);
            out.stderr_profile[r] = std::sqrt(kahan_sum(sq) / (replicates - 1) / replicates);
        }
    }
    // ball ratios: mean over replicates at each radius, N_r saturating at
    // the vertex count beyond each replicate's eccentricity
    std::vector<std::vector<i64>> cum(replicates);
    for (i64 k = 0; k < replicates; ++k) cum[k] = ball_stats(profiles[k]).cumulative;
    for (std::size_t r = 0; r < max_r; ++r) {
        for (i64 k = 0; k < replicates; ++k) {
            i64 acc = r < cum[k].size() ? cum[k][r] : cum[k].back();
            column[k] = r == 0 ? 0.0
                               : std::log(static_cast<double>(acc)) /
                                     std::log(static_cast<double>(r + 1));
        }
        out.mean_ratios[r] = kahan_sum(column) / replicates;
    }
    out.max_mean_ratio = out.mean_ratios.empty()
                             ? 0.0
                             : *std::max_element(out.mean_ratios.begin(), out.mean_ratios.end());
    std::vector<double> dcol(replicates);
    for (i64 k = 0; k < replicates; ++k) dcol[k] = static_cast<double>(diams[k]);
    out.mean_diam_lower = kahan_sum(dcol) / replicates;
    return out;
}

ExponentFit fit_diameter_exponent(const std::vector<i64>& grid, i64 depth, i64 replicates,
                                  Seed seed, int threads) {
    if (grid.size() < 2) throw std::invalid_argument("fit_diameter_exponent: need >= 2 grid points");
    i64 points = static_cast<i64>(grid.size());
    // diam[g][r]: paired replicates across the grid share a seed stream
    std::vector<std::vector<double>> diam(points, std::vector<double>(replicates));
    for (i64 gi = 0; gi < points; ++gi) {
        parallel_replicates(replicates, threads, [&](i64 r) {
            Seed s{seed.master, seed.replicate + static_cast<std::uint64_t>(r)};
            IteratedSnake snake = sample_iterated_snake_trees(grid[gi], depth, s);
            Feuilletage f = build_feuilletage(snake);
            Graph g = graph_from_feuilletage(f);
            diam[gi][r] = static_cast<double>(eccentricity_and_diameter_bound(g, 0).diam_lower);
        });
    }

    auto slope_from = [&](const std::vector<double>& means) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (i64 gi = 0; gi < points; ++gi) {
            double x = std::log(static_cast<double>(grid[gi]));
            double y = std::log(means[gi]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        double denom = points * sxx - sx * sx;
        return (points * sxy - sx * sy) / denom;
    };

    ExponentFit out;
    out.grid = grid;
    out.mean_diameters.resize(points);
    for (i64 gi = 0; gi < points; ++gi) out.mean_diameters[gi] = kahan_sum(diam[gi]) / replicates;
    out.exponent = slope_from(out.mean_diameters);

    // jackknife over paired replicates
    if (replicates > 1) {
        std::vector<double> slopes(replicates);
        std::vector<double> means(points);
        for (i64 r = 0; r < replicates; ++r) {
            for (i64 gi = 0; gi < points; ++gi)
                means[gi] = (out.mean_diameters[gi] * replicates - diam[gi][r]) / (replicates - 1);
            slopes[r] = slope_from(means);
        }
        double mean_slope = kahan_sum(slopes) / replicates;
        double ss = 0;
        for (double s : slopes) ss += (s - mean_slope) * (s - mean_slope);
        double var = ss * (replicates - 1) / replicates;
        out.half_width = 1.96 * std::sqrt(var);
    }
    return out;
}

void write_svg_polylines(std::ostream& os, const std::vector<SvgSeries>& series, int width,
                         int height, const std::string& title) {
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool first = true;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (first) {
                xmin = xmax = s.x[i];
                ymin = ymax = s.y[i];
                first = false;
            }
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    const int margin = 40;
    auto sx = [&](double x) { return margin + (x - xmin) / (xmax - xmin) * (width - 2 * margin); };
    auto sy = [&](double y) { return height - margin - (y - ymin) / (ymax - ymin) * (height - 2 * margin); };
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << margin << "\" y=\"20\" font-size=\"13\" font-family=\"sans-serif\">" << title
       << "</text>\n";
    // axes
    os << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin
       << "\" y2=\"" << height - margin << "\" stroke=\"#444\"/>\n";
    os << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
       << height - margin << "\" stroke=\"#444\"/>\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", xmax);
    os << "<text x=\"" << width - margin << "\" y=\"" << height - margin + 16
       << "\" font-size=\"11\" text-anchor=\"end\" font-family=\"sans-serif\">" << buf << "</text>\n";
    std::snprintf(buf, sizeof buf, "%.6g", ymax);
    os << "<text x=\"" << margin << "\" y=\"" << margin - 6
       << "\" font-size=\"11\" font-family=\"sans-serif\">" << buf << "</text>\n";
    for (const auto& s : series) {
        os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.2f,%.2f ", sx(s.x[i]), sy(s.y[i]));
            os << buf;
        }
        os << "\"/>\n";
    }
    os << "</svg>\n";
}

}  // namespace feuille
