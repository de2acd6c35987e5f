#include "nodenet/similarity.hpp"

#include <algorithm>
#include <cmath>

#include "nodenet/errors.hpp"

namespace nodenet {

SimilarityView SimilarityView::from_vectors(const NodeVectors& vectors) {
    SimilarityView view;
    view.n_ = vectors.n();
    view.labels_ = vectors.labels;
    view.unit_rows_ = vectors.rows;
    for (int i = 0; i < view.n_; ++i) {
        const double norm = view.unit_rows_.row(i).norm();
        if (!(norm > 0.0) || !std::isfinite(norm))
            throw NumericError("degenerate vector: node '" + vectors.labels[i] +
                               "' has zero or non-finite norm");
        view.unit_rows_.row(i) /= norm;
    }
    view.build_neighbor_lists();
    return view;
}

SimilarityView SimilarityView::from_matrix(RowMat weights, std::vector<std::string> labels) {
    if (weights.rows() != weights.cols())
        throw InputError("similarity matrix must be square");
    SimilarityView view;
    view.n_ = static_cast<int>(weights.rows());
    if (labels.empty())
        for (int i = 0; i < view.n_; ++i) labels.push_back("v" + std::to_string(i + 1));
    if (static_cast<int>(labels.size()) != view.n_)
        throw InputError("similarity matrix labels do not match its size");
    for (int i = 0; i < view.n_; ++i)
        for (int j = i + 1; j < view.n_; ++j) {
            if (!std::isfinite(weights(i, j)))
                throw NumericError("similarity matrix has a non-finite entry");
            if (weights(i, j) != weights(j, i))
                throw InputError("similarity matrix is not symmetric");
        }
    view.labels_ = std::move(labels);
    view.dense_ = std::move(weights);
    view.dense_mode_ = true;
    view.build_neighbor_lists();
    return view;
}

double SimilarityView::weight(int i, int j) const {
    if (dense_mode_) return dense_(i, j);
    return unit_rows_.row(i).dot(unit_rows_.row(j));
}

void SimilarityView::build_neighbor_lists() {
    neighbors_.assign(n_, {});

    // Work in row blocks so the n-by-n product never materializes whole. Only
    // the upper triangle is read and each value is mirrored, which keeps the
    // two directions of a pair bit-identical.
    const int block = std::max(1, std::min(n_, 4096 * 1024 / std::max(n_, 1) + 1));
    RowMat chunk;
    for (int begin = 0; begin < n_; begin += block) {
        const int rows = std::min(block, n_ - begin);
        if (dense_mode_)
            chunk = dense_.middleRows(begin, rows);
        else
            chunk.noalias() = unit_rows_.middleRows(begin, rows) * unit_rows_.transpose();
        for (int r = 0; r < rows; ++r) {
            const int i = begin + r;
            for (int j = i + 1; j < n_; ++j) {
                const double w = chunk(r, j);
                if (w > 0.0) {
                    neighbors_[i].push_back({j, w});
                    neighbors_[j].push_back({i, w});
                }
            }
        }
    }
    for (auto& list : neighbors_)
        std::sort(list.begin(), list.end(), [](const Neighbor& a, const Neighbor& b) {
            return a.sim != b.sim ? a.sim > b.sim : a.id < b.id;
        });
}

}  // namespace nodenet
