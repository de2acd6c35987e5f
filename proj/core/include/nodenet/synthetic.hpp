#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nodenet/dataset.hpp"

namespace nodenet {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

// Planted-community benchmark layout. Each condition (test) assigns every
// community one sub-interval to draw from; an interval index of -1 means the
// full global range (the perturbation test).
struct SyntheticSpec {
    int n_nodes = 0;
    int n_communities = 0;
    Interval global_range{};
    std::vector<Interval> intervals;
    std::vector<std::vector<int>> plan;  // plan[test][community] -> interval index or -1
    std::vector<std::string> condition_labels;
    int overlap_variant = 1;
    std::uint64_t seed = 0;
    bool seed_explicit = false;  // true when the layout file pinned its own seed

    // Canonical 5-community layout: cyclic interval rotation over the first
    // five tests, full-range sixth test. overlap_variant v in {2,3,4} makes the
    // second community copy the first community's intervals in tests 1..v so
    // that the two groups overlap in v sub-intervals; v=1 keeps the plain
    // rotation.
    static SyntheticSpec table1(int n_nodes, std::uint64_t seed, int overlap_variant = 1);

    void validate() const;
};

// Community of a node index under the contiguous equal-block layout.
int community_of(const SyntheticSpec& spec, int node);

NodalDataset generate_synthetic(const SyntheticSpec& spec);

// label -> community index for every node, aligned with generate_synthetic.
std::vector<int> community_assignments(const SyntheticSpec& spec);

void write_communities(const SyntheticSpec& spec, const std::filesystem::path& path);

struct CommunityAssignment {
    std::vector<int> ids;            // per node, aligned with the label list passed in
    std::vector<std::string> names;  // per community id, in file order
};

CommunityAssignment load_communities(const std::filesystem::path& path,
                                     const std::vector<std::string>& node_labels);

// Parse a spec from JSON text (file contents, not a path). Accepted keys:
// n_nodes, n_communities, overlap_variant, seed; optional intervals/global_range
// override the canonical layout.
SyntheticSpec parse_synthetic_spec(const std::string& json_text);

// Inverse of parse_synthetic_spec, with every field written out.
std::string synthetic_spec_to_json_text(const SyntheticSpec& spec);

}  // namespace nodenet
