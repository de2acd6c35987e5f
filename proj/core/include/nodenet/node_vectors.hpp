#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace nodenet {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Trained per-node vectors, label-indexed by row.
struct NodeVectors {
    std::vector<std::string> labels;
    RowMat rows;

    int n() const { return static_cast<int>(rows.rows()); }
    int dim() const { return static_cast<int>(rows.cols()); }
    int index_of(const std::string& label) const;  // -1 when unknown
};

void write_embeddings(const NodeVectors& vectors, const std::filesystem::path& path);
NodeVectors load_embeddings(const std::filesystem::path& path);

// Raw binary companion: 8-byte magic "NVECBIN1", then n and d as little-endian
// uint64, then the row-major matrix as 64-bit floats. Labels live in the CSV.
void write_embeddings_bin(const NodeVectors& vectors, const std::filesystem::path& path);
RowMat load_embeddings_bin(const std::filesystem::path& path);

}  // namespace nodenet
