#pragma once

#include <string>
#include <vector>

#include "nodenet/node_vectors.hpp"

namespace nodenet {

struct Neighbor {
    int id;
    double sim;
};

// Pairwise cosine view over an embedding, plus each node's positive-similarity
// neighbors sorted by descending similarity (node id breaks ties). Immutable
// once built.
class SimilarityView {
  public:
    // Cosine over the given vectors; rows are unit-normalized up front so a
    // single weight query costs one dot product.
    static SimilarityView from_vectors(const NodeVectors& vectors);

    // Explicit symmetric weight matrix, mostly for tests. The diagonal is
    // ignored.
    static SimilarityView from_matrix(RowMat weights, std::vector<std::string> labels = {});

    int n() const { return n_; }
    const std::vector<std::string>& labels() const { return labels_; }

    double weight(int i, int j) const;
    const std::vector<Neighbor>& positive_neighbors(int i) const { return neighbors_[i]; }

  private:
    int n_ = 0;
    std::vector<std::string> labels_;
    RowMat unit_rows_;   // cosine mode
    RowMat dense_;       // matrix mode
    bool dense_mode_ = false;
    std::vector<std::vector<Neighbor>> neighbors_;

    void build_neighbor_lists();
};

}  // namespace nodenet
