#pragma once
// Graph-distance statistics: BFS, profiles, ball volumes, eccentricity
// and two-sweep diameter bounds, ensemble means of normalized profiles
// and the log-log exponent fit.

#include <iosfwd>
#include <string>

#include "feuille/feuilletage.hpp"

namespace feuille {

// Compressed adjacency; loops and parallel edges are kept.
struct Graph {
    i64 n_vertices = 0;
    std::vector<i64> offsets;
    std::vector<i64> nbrs;
};

Graph graph_from_edges(i64 n_vertices, const std::vector<std::pair<i64, i64>>& edges);
Graph graph_from_feuilletage(const Feuilletage& f);

struct DistanceResult {
    std::vector<i64> dist;        // -1 where unreachable
    std::vector<i64> unreachable; // empty on connected input
};

DistanceResult bfs_distances(const Graph& g, i64 source);

struct Profile {
    std::vector<i64> counts;  // counts[i] = vertices at distance i
};

// Histogram of BFS distances; throws on disconnected input, reporting the
// unreachable count.
Profile profile(const Graph& g, i64 source);

struct BallStats {
    std::vector<i64> cumulative;  // N_r
    std::vector<double> ratios;   // log(N_r)/log(r+1), 0 at r = 0
};

BallStats ball_stats(const Profile& p);

struct EccDiam {
    i64 ecc;         // exact eccentricity of the source
    i64 diam_lower;  // two-sweep BFS lower bound, >= ecc
};

EccDiam eccentricity_and_diameter_bound(const Graph& g, i64 source);

struct EnsembleSummary {
    i64 n = 0;
    i64 depth = 0;
    i64 replicates = 0;
    // mean profile on integer radii; normalized columns use abscissa
    // r / n^(1/2^D) and ordinate q / n^(1 - 1/2^D)
    std::vector<double> mean_profile;
    std::vector<double> stderr_profile;
    std::vector<double> mean_ratios;      // mean log(N_r)/log(r+1) per radius
    double max_mean_ratio = 0.0;
    double mean_diam_lower = 0.0;
    double norm_scale_x = 1.0;            // n^(1/2^D)
    double norm_scale_y = 1.0;            // n^(1 - 1/2^D)
};

// Samples `replicates` feuilletages on deterministic per-replicate
// streams, in parallel; the reduction is a fixed-order fold over
// replicate slots, so results do not depend on the thread count.
EnsembleSummary ensemble_summary(i64 n, i64 depth, i64 replicates, Seed seed, int threads);

struct ExponentFit {
    std::vector<i64> grid;               // n values
    std::vector<double> mean_diameters;  // mean two-sweep bound per n
    double exponent = 0.0;
    double half_width = 0.0;  // 1.96 x jackknife standard error
};

// OLS slope of log mean diameter against log n; jackknife over paired
// replicates for the half-width.
ExponentFit fit_diameter_exponent(const std::vector<i64>& grid, i64 depth, i64 replicates,
                                  Seed seed, int threads);

// Minimal self-contained SVG polyline figure, one series per call row.
struct SvgSeries {
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f6feb";
};

void write_svg_polylines(std::ostream& os, const std::vector<SvgSeries>& series, int width,
                         int height, const std::string& title);

}  // namespace feuille
