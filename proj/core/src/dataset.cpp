#include "nodenet/dataset.hpp"

#include <algorithm>
#include <unordered_set>

#include "nodenet/errors.hpp"
#include "nodenet/io_util.hpp"

namespace nodenet {

NodalDataset::NodalDataset(std::vector<std::string> node_labels,
                           std::vector<std::string> condition_labels,
                           std::vector<double> values, std::vector<std::uint8_t> present)
    : node_labels_(std::move(node_labels)),
      condition_labels_(std::move(condition_labels)),
      values_(std::move(values)),
      present_(std::move(present)) {
    validate_and_index();
}

NodalDataset::NodalDataset(std::vector<std::string> node_labels,
                           std::vector<std::string> condition_labels,
                           const std::vector<std::vector<std::optional<double>>>& rows) {
    node_labels_ = std::move(node_labels);
    condition_labels_ = std::move(condition_labels);
    const std::size_t n = node_labels_.size();
    const std::size_t m = condition_labels_.size();
    if (rows.size() != n)
        throw InputError("dataset structure error: " + std::to_string(rows.size()) +
                         " rows for " + std::to_string(n) + " node labels");
    values_.assign(n * m, 0.0);
    present_.assign(n * m, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != m)
            throw InputError("dataset structure error: row " + std::to_string(i + 1) +
                             " has " + std::to_string(rows[i].size()) + " cells, expected " +
                             std::to_string(m));
        for (std::size_t w = 0; w < m; ++w) {
            if (rows[i][w]) {
                values_[i * m + w] = *rows[i][w];
                present_[i * m + w] = 1;
            }
        }
    }
    validate_and_index();
}

void NodalDataset::validate_and_index() {
    const std::size_t n = node_labels_.size();
    const std::size_t m = condition_labels_.size();
    if (values_.size() != n * m || present_.size() != n * m)
        throw InputError("dataset structure error: matrix size does not match labels");

    node_index_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!node_index_.emplace(node_labels_[i], static_cast<int>(i)).second)
            throw InputError("label collision: duplicate node label '" + node_labels_[i] + "'");
    }
    std::unordered_set<std::string> conds;
    for (const auto& c : condition_labels_) {
        if (!conds.insert(c).second)
            throw InputError("label collision: duplicate condition label '" + c + "'");
    }

    missing_per_condition_.assign(m, 0);
    for (std::size_t w = 0; w < m; ++w) {
        int missing = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (!present_[i * m + w]) ++missing;
        missing_per_condition_[w] = missing;
    }
}

int NodalDataset::node_index(const std::string& label) const {
    auto it = node_index_.find(label);
    return it == node_index_.end() ? -1 : it->second;
}

namespace {

bool is_missing(const std::string& cell, const CsvOptions& options) {
    return std::find(options.missing_tokens.begin(), options.missing_tokens.end(), cell) !=
           options.missing_tokens.end();
}

}  // namespace

NodalDataset load_dataset(const std::filesystem::path& path, const CsvOptions& options) {
    auto in = open_input(path);
    std::string line;
    std::vector<std::string> header;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.starts_with("#")) {
            consume_format_header(line, "nodal-dataset", 1);
            continue;
        }
        header = split_line(line, options.delimiter);
        break;
    }
    if (header.empty())
        throw InputError("dataset structure error: " + path.string() + " has no header row");

    std::vector<std::string> condition_labels(header.begin() + 1, header.end());
    std::vector<std::string> node_labels;
    std::vector<double> values;
    std::vector<std::uint8_t> present;
    const std::size_t m = condition_labels.size();

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;
        if (line.starts_with("#")) continue;
        auto cells = split_line(line, options.delimiter);
        if (cells.size() != m + 1)
            throw InputError("dataset structure error: row at line " + std::to_string(line_no) +
                             " has " + std::to_string(cells.size()) + " cells, expected " +
                             std::to_string(m + 1));
        node_labels.push_back(cells[0]);
        for (std::size_t w = 0; w < m; ++w) {
            const std::string& cell = cells[w + 1];
            if (is_missing(cell, options)) {
                values.push_back(0.0);
                present.push_back(0);
                continue;
            }
            double v;
            if (!parse_finite_double(cell, v))
                throw InputError("parse error at row '" + cells[0] + "', column '" +
                                 condition_labels[w] + "' (line " + std::to_string(line_no) +
                                 "): cell '" + cell + "' is not a finite number");
            values.push_back(v);
            present.push_back(1);
        }
    }
    return NodalDataset(std::move(node_labels), std::move(condition_labels), std::move(values),
                        std::move(present));
}

void write_dataset(const NodalDataset& dataset, const std::filesystem::path& path,
                   const CsvOptions& options) {
    auto out = open_output(path);
    const std::string& missing =
        options.missing_tokens.empty() ? std::string() : options.missing_tokens.front();
    out << "node";
    for (const auto& c : dataset.condition_labels()) out << options.delimiter << c;
    out << '\n';
    for (int i = 0; i < dataset.n_nodes(); ++i) {
        out << dataset.node_label(i);
        for (int w = 0; w < dataset.n_conditions(); ++w) {
            out << options.delimiter;
            if (dataset.has(i, w))
                out << format_double(dataset.raw_value(i, w));
            else
                out << missing;
        }
        out << '\n';
    }
    if (!out) throw InputError("write failed: " + path.string());
}

}  // namespace nodenet
