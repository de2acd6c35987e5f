#include "nodenet/contexts.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "nodenet/errors.hpp"
#include "nodenet/io_util.hpp"

namespace nodenet {

void ToleranceRule::validate() const {
    if (relative < 0.0 || absolute_floor < 0.0)
        throw ConfigError("tolerance rule: relative and absolute_floor must be nonnegative");
    if (relative == 0.0 && absolute_floor == 0.0)
        throw ConfigError("tolerance rule: relative and absolute_floor cannot both be zero");
}

double ToleranceRule::delta(double value) const {
    return std::max(relative * std::abs(value), absolute_floor);
}

ContextSets ContextSets::from_sets(std::vector<std::vector<std::vector<int>>> sets,
                                   std::vector<std::vector<std::uint8_t>> present,
                                   std::vector<std::string> node_labels,
                                   std::vector<std::string> condition_labels) {
    ContextSets cs;
    cs.sets_ = std::move(sets);
    cs.present_ = std::move(present);
    if (cs.sets_.size() != cs.present_.size())
        throw InputError("context sets: presence mask does not match set table");
    cs.n_nodes_ = cs.sets_.empty() ? 0 : static_cast<int>(cs.sets_.front().size());
    for (std::size_t w = 0; w < cs.sets_.size(); ++w)
        if (static_cast<int>(cs.sets_[w].size()) != cs.n_nodes_ ||
            static_cast<int>(cs.present_[w].size()) != cs.n_nodes_)
            throw InputError("context sets: ragged condition tables");
    if (node_labels.empty())
        for (int i = 0; i < cs.n_nodes_; ++i) node_labels.push_back("v" + std::to_string(i + 1));
    if (condition_labels.empty())
        for (std::size_t w = 0; w < cs.sets_.size(); ++w)
            condition_labels.push_back("T" + std::to_string(w + 1));
    cs.node_labels_ = std::move(node_labels);
    cs.condition_labels_ = std::move(condition_labels);
    return cs;
}

bool ContextSets::contains(int condition, int node, int candidate) const {
    if (!has_set(condition, node)) return false;
    const auto& s = sets_[condition][node];
    return std::binary_search(s.begin(), s.end(), candidate);
}

ContextSets build_context_sets(const NodalDataset& dataset, const ToleranceRule& rule,
                               bool include_self) {
    rule.validate();
    const int n = dataset.n_nodes();
    const int m = dataset.n_conditions();

    std::vector<std::vector<std::vector<int>>> sets(m,
                                                    std::vector<std::vector<int>>(n));
    std::vector<std::vector<std::uint8_t>> present(m, std::vector<std::uint8_t>(n, 0));

    std::vector<std::pair<double, int>> measured;  // (value, node), sorted by value
    for (int w = 0; w < m; ++w) {
        measured.clear();
        for (int i = 0; i < n; ++i)
            if (dataset.has(i, w)) measured.emplace_back(dataset.raw_value(i, w), i);
        std::sort(measured.begin(), measured.end());

        for (const auto& [value, node] : measured) {
            present[w][node] = 1;
            const double d = rule.delta(value);
            auto lo = std::lower_bound(measured.begin(), measured.end(),
                                       std::make_pair(value - d, -1));
            auto hi = std::upper_bound(measured.begin(), measured.end(),
                                       std::make_pair(value + d, n));
            auto& out = sets[w][node];
            out.reserve(static_cast<std::size_t>(hi - lo));
            for (auto it = lo; it != hi; ++it)
                if (include_self || it->second != node) out.push_back(it->second);
            std::sort(out.begin(), out.end());
        }
    }
    return ContextSets::from_sets(std::move(sets), std::move(present), dataset.node_labels(),
                                  dataset.condition_labels());
}

void write_context_sets_json(const ContextSets& contexts, const std::filesystem::path& path) {
    nlohmann::ordered_json conditions;
    for (int w = 0; w < contexts.n_conditions(); ++w) {
        nlohmann::ordered_json per_cond = nlohmann::ordered_json::object();
        for (int i = 0; i < contexts.n_nodes(); ++i) {
            if (!contexts.has_set(w, i)) continue;
            auto& arr = per_cond[contexts.node_labels()[i]];
            arr = nlohmann::ordered_json::array();
            for (int j : contexts.set(w, i)) arr.push_back(contexts.node_labels()[j]);
        }
        conditions[contexts.condition_labels()[w]] = std::move(per_cond);
    }
    nlohmann::ordered_json root;
    root["kind"] = "context-sets";
    root["version"] = 1;
    root["conditions"] = std::move(conditions);
    auto out = open_output(path);
    out << root.dump(2) << '\n';
    if (!out) throw InputError("write failed: " + path.string());
}

}  // namespace nodenet
