#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "nodenet/backbone.hpp"
#include "nodenet/node_vectors.hpp"
#include "nodenet/similarity.hpp"

namespace nodenet {

struct Projection2D {
    RowMat coords;                  // n x 2
    double explained[2] = {0, 0};   // variance fractions, first >= second
};

// Top-2 principal components of the mean-centered rows, via SVD. Component
// signs are fixed by making each one's largest-magnitude loading positive.
Projection2D pca_project(const RowMat& vectors);

struct NetworkStats {
    int n_nodes = 0;
    std::size_t n_edges = 0;
    std::vector<int> degrees;
    std::map<int, int> degree_histogram;
    int isolated_count = 0;
    double isolated_pct = 0.0;  // percent, 0..100
    double density = 0.0;
    double mean_degree = 0.0;
    int max_degree = 0;
};

NetworkStats network_stats(const EdgeList& edges);

enum class SeparationMetric { cosine, euclidean };

struct SeparationReport {
    RowMat centroid_distances;  // communities x communities
    double purity = 0.0;
    std::vector<int> nearest;  // per node, index of nearest centroid
};

// Nearest-centroid assignment quality of a community labeling over a vector
// set. Cosine distance suits raw embeddings, Euclidean the 2D projection.
SeparationReport community_separation(const RowMat& vectors,
                                      const std::vector<int>& communities,
                                      SeparationMetric metric = SeparationMetric::cosine);

struct SweepRow {
    double threshold;
    std::size_t remaining_edges;
    int isolated_nodes;
    double isolated_pct;
};

// One GTE evaluation per grid point, computed in a single pass over the
// similarity stream. Rows come back in ascending threshold order.
std::vector<SweepRow> threshold_sweep(const SimilarityView& sim, std::vector<double> grid);

void write_projection(const Projection2D& projection, const std::vector<std::string>& labels,
                      const std::vector<std::string>& community_names,
                      const std::filesystem::path& path);
void write_projection_svg(const Projection2D& projection, const std::vector<int>& communities,
                          const std::filesystem::path& path);
void write_network_stats(const NetworkStats& stats, const std::filesystem::path& path);
void write_degree_histogram(const NetworkStats& stats, const std::filesystem::path& path);
void write_threshold_sweep(const std::vector<SweepRow>& rows, const std::filesystem::path& path);
void write_separation(const SeparationReport& report, const std::vector<std::string>& community_names,
                      SeparationMetric metric, const std::filesystem::path& path);

}  // namespace nodenet
