#include "nodenet/node_vectors.hpp"

#include <cmath>
#include <cstring>

#include "nodenet/errors.hpp"
#include "nodenet/io_util.hpp"

namespace nodenet {

int NodeVectors::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return static_cast<int>(i);
    return -1;
}

void write_embeddings(const NodeVectors& vectors, const std::filesystem::path& path) {
    auto out = open_output(path);
    out << format_header("embeddings", 1) << '\n';
    out << "node";
    for (int j = 0; j < vectors.dim(); ++j) out << ",e" << j + 1;
    out << '\n';
    for (int i = 0; i < vectors.n(); ++i) {
        out << vectors.labels[i];
        for (int j = 0; j < vectors.dim(); ++j) out << ',' << format_double(vectors.rows(i, j));
        out << '\n';
    }
    if (!out) throw InputError("write failed: " + path.string());
}

NodeVectors load_embeddings(const std::filesystem::path& path) {
    auto in = open_input(path);
    std::string line;
    std::vector<std::string> labels;
    std::vector<std::vector<double>> rows;
    std::size_t line_no = 0;
    bool header_skipped = false;
    int dim = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.starts_with("#")) {
            consume_format_header(line, "embeddings", 1);
            continue;
        }
        if (line.empty()) continue;
        auto cells = split_line(line, ',');
        if (!header_skipped && cells.size() >= 2 && cells[0] == "node") {
            header_skipped = true;
            continue;
        }
        if (cells.size() < 2)
            throw InputError("embeddings " + path.string() + " line " + std::to_string(line_no) +
                             ": expected label plus at least one coordinate");
        if (dim < 0) dim = static_cast<int>(cells.size()) - 1;
        if (static_cast<int>(cells.size()) - 1 != dim)
            throw InputError("embeddings " + path.string() + " line " + std::to_string(line_no) +
                             ": inconsistent dimension");
        labels.push_back(cells[0]);
        std::vector<double> row(dim);
        for (int j = 0; j < dim; ++j) {
            if (!parse_finite_double(cells[j + 1], row[j]))
                throw InputError("embeddings " + path.string() + " line " +
                                 std::to_string(line_no) + ": cell '" + cells[j + 1] +
                                 "' is not a finite number");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw InputError("embeddings " + path.string() + ": no vectors");

    NodeVectors out;
    out.labels = std::move(labels);
    out.rows.resize(static_cast<Eigen::Index>(rows.size()), dim);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < dim; ++j) out.rows(static_cast<Eigen::Index>(i), j) = rows[i][j];
    return out;
}

namespace {
constexpr char kBinMagic[8] = {'N', 'V', 'E', 'C', 'B', 'I', 'N', '1'};
}

void write_embeddings_bin(const NodeVectors& vectors, const std::filesystem::path& path) {
    auto out = open_output(path, std::ios::out | std::ios::binary);
    out.write(kBinMagic, sizeof kBinMagic);
    const std::uint64_t n = static_cast<std::uint64_t>(vectors.n());
    const std::uint64_t d = static_cast<std::uint64_t>(vectors.dim());
    out.write(reinterpret_cast<const char*>(&n), sizeof n);
    out.write(reinterpret_cast<const char*>(&d), sizeof d);
    out.write(reinterpret_cast<const char*>(vectors.rows.data()),
              static_cast<std::streamsize>(n * d * sizeof(double)));
    if (!out) throw InputError("write failed: " + path.string());
}

RowMat load_embeddings_bin(const std::filesystem::path& path) {
    auto in = open_input(path, std::ios::in | std::ios::binary);
    char magic[8];
    in.read(magic, sizeof magic);
    if (!in || std::memcmp(magic, kBinMagic, sizeof magic) != 0)
        throw InputError("embeddings " + path.string() + ": not a NVECBIN1 file");
    std::uint64_t n = 0, d = 0;
    in.read(reinterpret_cast<char*>(&n), sizeof n);
    in.read(reinterpret_cast<char*>(&d), sizeof d);
    if (!in || n == 0 || d == 0 || n > (1ull << 32) || d > (1ull << 20))
        throw InputError("embeddings " + path.string() + ": corrupt dimensions");
    RowMat rows(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    in.read(reinterpret_cast<char*>(rows.data()),
            static_cast<std::streamsize>(n * d * sizeof(double)));
    if (!in) throw InputError("embeddings " + path.string() + ": truncated data");
    if (!rows.allFinite())
        throw InputError("embeddings " + path.string() + ": non-finite values");
    return rows;
}

}  // namespace nodenet
