#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nodenet/similarity.hpp"

namespace nodenet {

struct Edge {
    int source;  // always < target
    int target;
    double weight;
};

struct EdgeList {
    int n_nodes = 0;
    std::vector<Edge> edges;  // canonical (source, target) ascending order
};

// Keeps every pair with similarity strictly above the threshold. Isolated
// nodes are allowed.
EdgeList gte(const SimilarityView& sim, double threshold);

// Similarities of `members` renormalized to a probability vector over the
// neighborhood of `node`.
std::vector<double> normalized_weights(const SimilarityView& sim, int node,
                                       std::span<const int> members);

// alpha == 1 requests the Shannon limit; any other positive alpha uses the
// closed form ln(sum w^alpha) / (1 - alpha).
double renyi_entropy(std::span<const double> weights, double alpha);

// Effective neighbor count exp(H_alpha), computed through the power form
// (sum w^alpha)^(1/(1-alpha)) rather than by exponentiating the entropy.
double diversity_index(std::span<const double> weights, double alpha);

struct RemConfig {
    double alpha = 2.0;
    int max_iterations = 10;
    double init_cap_fraction = 0.5;
    // Union keeps an edge when either endpoint retains it and is what the
    // no-isolated-nodes guarantee relies on; intersection requires both.
    bool intersection = false;

    void validate() const;
};

struct RemTraceRow {
    int iteration;  // 0 is the state right after the initial cap
    std::size_t remaining_edges;
    int isolated_nodes;
};

struct RemResult {
    EdgeList edges;
    std::vector<RemTraceRow> trace;
};

// Called once per completed iteration with every node's active-set size.
using RemObserver = std::function<void(int iteration, std::span<const int> active_sizes)>;

// Iterative diversity filtering: each node starts from its strongest
// neighbors (capped at init_cap_fraction * n), and each pass renormalizes the
// active set, computes its diversity index, and keeps that many strongest
// neighbors. Stops when no set shrinks or after max_iterations.
RemResult rem(const SimilarityView& sim, const RemConfig& config,
              const RemObserver& observer = {});

void write_edges(const EdgeList& edges, const std::vector<std::string>& labels,
                 const std::filesystem::path& path);
EdgeList load_edges(const std::filesystem::path& path, const std::vector<std::string>& labels);

void write_rem_trace(const std::vector<RemTraceRow>& trace, const std::filesystem::path& path);

}  // namespace nodenet
