#include "nodenet/synthetic.hpp"

#include <cstdio>
#include <map>
#include <utility>

#include <nlohmann/json.hpp>

#include "nodenet/errors.hpp"
#include "nodenet/io_util.hpp"
#include "nodenet/rng.hpp"

namespace nodenet {

namespace {

SyntheticSpec canonical_layout(int n_nodes, int n_communities, std::uint64_t seed,
                               int overlap_variant) {
    SyntheticSpec spec;
    spec.n_nodes = n_nodes;
    spec.n_communities = n_communities;
    spec.overlap_variant = overlap_variant;
    spec.seed = seed;

    const int k = n_communities;
    spec.global_range = {1.0, 100.0 * k};
    spec.intervals.reserve(k);
    for (int j = 0; j < k; ++j) spec.intervals.push_back({100.0 * j + 1.0, 100.0 * (j + 1)});

    // k rotation tests followed by one full-range perturbation test.
    spec.plan.assign(k + 1, std::vector<int>(k, -1));
    for (int t = 0; t < k; ++t)
        for (int g = 0; g < k; ++g) spec.plan[t][g] = (g + t) % k;
    // Overlap variant v >= 2: the second community mirrors the first one's
    // intervals in the first v tests.
    if (overlap_variant >= 2 && k >= 2)
        for (int t = 0; t < overlap_variant && t < k; ++t) spec.plan[t][1] = spec.plan[t][0];

    spec.condition_labels.reserve(k + 1);
    for (int t = 0; t < k + 1; ++t) spec.condition_labels.push_back("T" + std::to_string(t + 1));
    return spec;
}

std::string node_label(int index, int n_nodes) {
    int width = static_cast<int>(std::to_string(n_nodes).size());
    char buf[32];
    std::snprintf(buf, sizeof buf, "n%0*d", width, index + 1);
    return buf;
}

}  // namespace

SyntheticSpec SyntheticSpec::table1(int n_nodes, std::uint64_t seed, int overlap_variant) {
    return canonical_layout(n_nodes, 5, seed, overlap_variant);
}

void SyntheticSpec::validate() const {
    if (n_nodes <= 0) throw ConfigError("synthetic spec: n_nodes must be positive");
    if (n_communities <= 0) throw ConfigError("synthetic spec: n_communities must be positive");
    if (n_nodes % n_communities != 0)
        throw ConfigError("synthetic spec: n_nodes (" + std::to_string(n_nodes) +
                          ") not divisible by n_communities (" + std::to_string(n_communities) +
                          ")");
    if (overlap_variant < 1 || overlap_variant > 4)
        throw ConfigError("synthetic spec: overlap_variant must be in 1..4");
    if (intervals.empty()) throw ConfigError("synthetic spec: no sub-intervals");
    for (std::size_t j = 0; j < intervals.size(); ++j) {
        const auto& iv = intervals[j];
        if (!(iv.lo < iv.hi) || iv.lo < global_range.lo || iv.hi > global_range.hi)
            throw ConfigError("synthetic spec: sub-interval " + std::to_string(j + 1) +
                              " is empty or outside the global range");
        if (j > 0 && intervals[j - 1].hi > iv.lo)
            throw ConfigError("synthetic spec: sub-intervals must be adjacent non-overlapping blocks");
    }
    if (plan.size() != condition_labels.size())
        throw ConfigError("synthetic spec: plan rows do not match condition labels");
    for (const auto& row : plan) {
        if (static_cast<int>(row.size()) != n_communities)
            throw ConfigError("synthetic spec: plan row does not cover every community");
        for (int idx : row)
            if (idx < -1 || idx >= static_cast<int>(intervals.size()))
                throw ConfigError("synthetic spec: plan references unknown sub-interval");
    }
}

int community_of(const SyntheticSpec& spec, int node) {
    return node / (spec.n_nodes / spec.n_communities);
}

NodalDataset generate_synthetic(const SyntheticSpec& spec) {
    spec.validate();
    const int n = spec.n_nodes;
    const int m = static_cast<int>(spec.plan.size());

    std::vector<std::string> labels;
    labels.reserve(n);
    for (int i = 0; i < n; ++i) labels.push_back(node_label(i, n));

    std::vector<double> values(static_cast<std::size_t>(n) * m);
    std::vector<std::uint8_t> present(static_cast<std::size_t>(n) * m, 1);
    Rng rng(derive_seed(spec.seed, "synthetic-values"));
    for (int i = 0; i < n; ++i) {
        const int g = community_of(spec, i);
        for (int t = 0; t < m; ++t) {
            const int idx = spec.plan[t][g];
            const Interval& iv = idx < 0 ? spec.global_range : spec.intervals[idx];
            values[static_cast<std::size_t>(i) * m + t] = rng.uniform(iv.lo, iv.hi);
        }
    }
    return NodalDataset(std::move(labels), spec.condition_labels, std::move(values),
                        std::move(present));
}

std::vector<int> community_assignments(const SyntheticSpec& spec) {
    std::vector<int> out(spec.n_nodes);
    for (int i = 0; i < spec.n_nodes; ++i) out[i] = community_of(spec, i);
    return out;
}

void write_communities(const SyntheticSpec& spec, const std::filesystem::path& path) {
    auto out = open_output(path);
    out << format_header("communities", 1) << '\n';
    out << "node,community\n";
    for (int i = 0; i < spec.n_nodes; ++i)
        out << node_label(i, spec.n_nodes) << ",G" << community_of(spec, i) + 1 << '\n';
    if (!out) throw InputError("write failed: " + path.string());
}

CommunityAssignment load_communities(const std::filesystem::path& path,
                                     const std::vector<std::string>& node_labels) {
    auto in = open_input(path);
    std::string line;
    std::map<std::string, std::string> by_node;
    std::map<std::string, int> group_ids;
    CommunityAssignment out;
    bool header_skipped = false;
    while (std::getline(in, line)) {
        if (line.starts_with("#")) {
            consume_format_header(line, "communities", 1);
            continue;
        }
        if (line.empty()) continue;
        auto cells = split_line(line, ',');
        if (!header_skipped && cells.size() >= 2 && cells[0] == "node") {
            header_skipped = true;
            continue;
        }
        if (cells.size() != 2)
            throw InputError("community file " + path.string() + ": expected node,community rows");
        by_node[cells[0]] = cells[1];
        if (group_ids.emplace(cells[1], static_cast<int>(out.names.size())).second)
            out.names.push_back(cells[1]);
    }
    out.ids.reserve(node_labels.size());
    for (const auto& label : node_labels) {
        auto it = by_node.find(label);
        if (it == by_node.end())
            throw InputError("community file " + path.string() + ": no entry for node '" + label +
                             "'");
        out.ids.push_back(group_ids.at(it->second));
    }
    return out;
}

SyntheticSpec parse_synthetic_spec(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("synthetic spec: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("synthetic spec: top level must be a JSON object");
    if (!j.contains("n_nodes")) throw ConfigError("synthetic spec: n_nodes is required");

    try {
    const int n_nodes = j.value("n_nodes", 0);
    const int n_communities = j.value("n_communities", 5);
    const int variant = j.value("overlap_variant", 1);
    SyntheticSpec spec = canonical_layout(n_nodes, n_communities, 0, variant);
    if (j.contains("seed")) {
        spec.seed = j.at("seed").get<std::uint64_t>();
        spec.seed_explicit = true;
    }
    if (j.contains("global_range")) {
        auto r = j.at("global_range");
        spec.global_range = {r.at(0).get<double>(), r.at(1).get<double>()};
    }
    if (j.contains("intervals")) {
        spec.intervals.clear();
        for (const auto& r : j.at("intervals"))
            spec.intervals.push_back({r.at(0).get<double>(), r.at(1).get<double>()});
    }
    if (j.contains("plan")) {
        spec.plan.clear();
        for (const auto& row : j.at("plan")) spec.plan.push_back(row.get<std::vector<int>>());
        spec.condition_labels.clear();
        for (std::size_t t = 0; t < spec.plan.size(); ++t)
            spec.condition_labels.push_back("T" + std::to_string(t + 1));
    }
    if (j.contains("condition_labels"))
        spec.condition_labels = j.at("condition_labels").get<std::vector<std::string>>();
    spec.validate();
    return spec;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("synthetic spec: ") + e.what());
    }
}

std::string synthetic_spec_to_json_text(const SyntheticSpec& spec) {
    nlohmann::ordered_json j;
    j["n_nodes"] = spec.n_nodes;
    j["n_communities"] = spec.n_communities;
    j["overlap_variant"] = spec.overlap_variant;
    if (spec.seed_explicit) j["seed"] = spec.seed;
    j["global_range"] = {spec.global_range.lo, spec.global_range.hi};
    auto intervals = nlohmann::ordered_json::array();
    for (const auto& iv : spec.intervals) intervals.push_back({iv.lo, iv.hi});
    j["intervals"] = std::move(intervals);
    j["plan"] = spec.plan;
    j["condition_labels"] = spec.condition_labels;
    return j.dump();
}

}  // namespace nodenet
