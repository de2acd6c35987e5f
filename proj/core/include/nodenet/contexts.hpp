#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "nodenet/dataset.hpp"

namespace nodenet {

// Per-node tolerance: delta_i = max(relative * |v_i|, absolute_floor).
struct ToleranceRule {
    double relative = 0.1;
    double absolute_floor = 0.0;

    void validate() const;
    double delta(double value) const;
};

// For every condition, the set of nodes measured within tolerance of each
// node's value. Nodes without a measurement in a condition have no set there
// at all, which is distinct from having an empty one.
class ContextSets {
  public:
    ContextSets() = default;

    static ContextSets from_sets(std::vector<std::vector<std::vector<int>>> sets,
                                 std::vector<std::vector<std::uint8_t>> present,
                                 std::vector<std::string> node_labels = {},
                                 std::vector<std::string> condition_labels = {});

    int n_nodes() const { return n_nodes_; }
    int n_conditions() const { return static_cast<int>(sets_.size()); }

    bool has_set(int condition, int node) const {
        return present_[condition][node] != 0;
    }
    const std::vector<int>& set(int condition, int node) const {
        return sets_[condition][node];
    }
    // Binary search; false when `node` has no set in `condition`.
    bool contains(int condition, int node, int candidate) const;

    const std::vector<std::string>& node_labels() const { return node_labels_; }
    const std::vector<std::string>& condition_labels() const { return condition_labels_; }

  private:
    int n_nodes_ = 0;
    std::vector<std::vector<std::vector<int>>> sets_;    // [condition][node] -> sorted ids
    std::vector<std::vector<std::uint8_t>> present_;     // [condition][node]
    std::vector<std::string> node_labels_;
    std::vector<std::string> condition_labels_;
};

// include_self keeps each node inside its own set (strict-literal mode);
// default drops it since a self loop carries no co-measurement information.
ContextSets build_context_sets(const NodalDataset& dataset, const ToleranceRule& rule,
                               bool include_self = false);

void write_context_sets_json(const ContextSets& contexts, const std::filesystem::path& path);

}  // namespace nodenet
