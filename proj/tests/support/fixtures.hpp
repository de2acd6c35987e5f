#pragma once

#include <nodenet/node_vectors.hpp>
#include <nodenet/rng.hpp>

#include <filesystem>
#include <string>
#include <vector>

#include <unistd.h>

namespace fixtures {

// Scratch directory under the system temp root, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("nodenet-test-" + tag + "-" + std::to_string(++counter) + "-" +
                 std::to_string(static_cast<long>(::getpid())));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

inline nodenet::NodeVectors random_vectors(int n, int dim, std::uint64_t seed) {
    nodenet::Rng rng(seed);
    nodenet::NodeVectors vecs;
    vecs.rows = nodenet::RowMat(n, dim);
    for (int i = 0; i < n; ++i) {
        vecs.labels.push_back("n" + std::to_string(i));
        for (int k = 0; k < dim; ++k) vecs.rows(i, k) = rng.uniform(-1.0, 1.0);
    }
    return vecs;
}

inline std::vector<double> random_simplex(std::size_t m, nodenet::Rng& rng) {
    std::vector<double> w(m);
    double total = 0.0;
    for (auto& v : w) {
        v = rng.uniform(1e-3, 1.0);
        total += v;
    }
    for (auto& v : w) v /= total;
    return w;
}

}  // namespace fixtures
