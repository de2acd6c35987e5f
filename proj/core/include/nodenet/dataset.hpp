#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace nodenet {

/// CSV parsing options. A cell matching any entry of `missing_tokens` is
/// treated as a missing measurement; the default recognizes empty cells only.
struct CsvOptions {
    char delimiter = ',';
    std::vector<std::string> missing_tokens = {""};
};

/// Node-by-condition matrix of optional real measurements. Immutable after
/// construction; safe to share across concurrent readers.
class NodalDataset {
public:
    NodalDataset(std::vector<std::string> node_labels,
                 std::vector<std::string> condition_labels,
                 std::vector<double> values, std::vector<std::uint8_t> present);

    /// Convenience constructor from a dense optional matrix (row = node).
    NodalDataset(std::vector<std::string> node_labels,
                 std::vector<std::string> condition_labels,
                 const std::vector<std::vector<std::optional<double>>>& rows);

    int n_nodes() const { return static_cast<int>(node_labels_.size()); }
    int n_conditions() const { return static_cast<int>(condition_labels_.size()); }

    const std::vector<std::string>& node_labels() const { return node_labels_; }
    const std::vector<std::string>& condition_labels() const { return condition_labels_; }
    const std::string& node_label(int i) const { return node_labels_[i]; }
    const std::string& condition_label(int w) const { return condition_labels_[w]; }

    bool has(int node, int condition) const {
        return present_[cell(node, condition)] != 0;
    }
    double raw_value(int node, int condition) const { return values_[cell(node, condition)]; }
    std::optional<double> value(int node, int condition) const {
        if (!has(node, condition)) return std::nullopt;
        return values_[cell(node, condition)];
    }

    /// Number of missing values in a condition.
    int missing_count(int condition) const { return missing_per_condition_[condition]; }
    int present_count(int condition) const { return n_nodes() - missing_count(condition); }

    /// Index of a node label, or -1 when unknown.
    int node_index(const std::string& label) const;

private:
    std::size_t cell(int node, int condition) const {
        return static_cast<std::size_t>(node) * condition_labels_.size() +
               static_cast<std::size_t>(condition);
    }
    void validate_and_index();

    std::vector<std::string> node_labels_;
    std::vector<std::string> condition_labels_;
    std::vector<double> values_;          // row-major |N| x |Omega|
    std::vector<std::uint8_t> present_;   // 1 where a measurement exists
    std::vector<int> missing_per_condition_;
    std::unordered_map<std::string, int> node_index_;
};

/// Loads a dataset from CSV. First row is `node,<cond1>,...`; one row per
/// node; a cell matching a missing token is a missing value. Lines starting
/// with '#' are skipped.
NodalDataset load_dataset(const std::filesystem::path& path, const CsvOptions& options = {});

/// Writes a dataset as CSV, inverse of load_dataset. Missing cells are
/// emitted as the first missing token.
void write_dataset(const NodalDataset& dataset, const std::filesystem::path& path,
                   const CsvOptions& options = {});

}  // namespace nodenet
