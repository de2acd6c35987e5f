#include "nodenet/backbone.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <unordered_map>

#include "nodenet/errors.hpp"
#include "nodenet/io_util.hpp"

namespace nodenet {

EdgeList gte(const SimilarityView& sim, double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0))
        throw ConfigError("gte: threshold must lie in (0, 1)");
    EdgeList out;
    out.n_nodes = sim.n();
    for (int i = 0; i < sim.n(); ++i) {
        for (const auto& nb : sim.positive_neighbors(i)) {
            if (nb.sim <= threshold) break;  // lists are sorted by similarity
            if (nb.id > i) out.edges.push_back({i, nb.id, nb.sim});
        }
    }
    std::sort(out.edges.begin(), out.edges.end(), [](const Edge& a, const Edge& b) {
        return std::tie(a.source, a.target) < std::tie(b.source, b.target);
    });
    return out;
}

std::vector<double> normalized_weights(const SimilarityView& sim, int node,
                                       std::span<const int> members) {
    if (members.empty())
        throw InputError("normalized weights: empty neighborhood for node '" +
                         sim.labels()[node] + "'");
    std::vector<double> out;
    out.reserve(members.size());
    double total = 0.0;
    for (int j : members) {
        const double w = sim.weight(node, j);
        if (!(w > 0.0))
            throw InputError("normalized weights: '" + sim.labels()[j] +
                             "' is not a positive neighbor of '" + sim.labels()[node] + "'");
        out.push_back(w);
        total += w;
    }
    for (auto& w : out) w /= total;
    return out;
}

namespace {

void check_weights(std::span<const double> weights) {
    if (weights.empty()) throw InputError("entropy: empty weight vector");
    double sum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w))
            throw InputError("entropy: weights must be finite and nonnegative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw InputError("entropy: weights must sum to 1 (got " + format_double(sum) + ")");
}

double shannon(std::span<const double> weights) {
    double h = 0.0;
    for (double w : weights)
        if (w > 0.0) h -= w * std::log(w);
    return h;
}

}  // namespace

double renyi_entropy(std::span<const double> weights, double alpha) {
    if (!(alpha > 0.0)) throw ConfigError("renyi entropy: alpha must be positive");
    check_weights(weights);
    double h;
    if (alpha == 1.0) {
        h = shannon(weights);
    } else {
        double s = 0.0;
        for (double w : weights) s += std::pow(w, alpha);
        h = std::log(s) / (1.0 - alpha);
    }
    if (h < 0.0 && h > -1e-9) h = 0.0;  // rounding dust near the certain-event case
    return h;
}

double diversity_index(std::span<const double> weights, double alpha) {
    if (!(alpha > 0.0)) throw ConfigError("diversity index: alpha must be positive");
    check_weights(weights);
    double d;
    if (alpha == 1.0) {
        d = std::exp(shannon(weights));
    } else {
        double s = 0.0;
        for (double w : weights) s += std::pow(w, alpha);
        d = std::pow(s, 1.0 / (1.0 - alpha));
    }
    if (d < 1.0 && d > 1.0 - 1e-9) d = 1.0;
    return d;
}

void RemConfig::validate() const {
    if (!(alpha > 0.0)) throw ConfigError("rem config: alpha must be positive");
    if (max_iterations < 1) throw ConfigError("rem config: max_iterations must be at least 1");
    if (!(init_cap_fraction > 0.0) || init_cap_fraction > 1.0)
        throw ConfigError("rem config: init_cap_fraction must lie in (0, 1]");
}

namespace {

struct PairRec {
    int a;
    int b;
    double sim;
};

// Edges implied by the current active prefixes: union keeps a pair retained by
// either endpoint, intersection only those retained by both.
std::vector<PairRec> collect_edges(const SimilarityView& sim, const std::vector<int>& active,
                                   bool intersection) {
    std::vector<PairRec> pairs;
    for (int i = 0; i < sim.n(); ++i) {
        const auto& list = sim.positive_neighbors(i);
        for (int r = 0; r < active[i]; ++r)
            pairs.push_back({std::min(i, list[r].id), std::max(i, list[r].id), list[r].sim});
    }
    std::sort(pairs.begin(), pairs.end(), [](const PairRec& x, const PairRec& y) {
        return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
    std::vector<PairRec> out;
    out.reserve(pairs.size());
    for (std::size_t k = 0; k < pairs.size();) {
        std::size_t run = k + 1;
        while (run < pairs.size() && pairs[run].a == pairs[k].a && pairs[run].b == pairs[k].b)
            ++run;
        if (!intersection || run - k >= 2) out.push_back(pairs[k]);
        k = run;
    }
    return out;
}

RemTraceRow trace_row(int iteration, const std::vector<PairRec>& edges, int n) {
    std::vector<char> connected(n, 0);
    for (const auto& e : edges) {
        connected[e.a] = 1;
        connected[e.b] = 1;
    }
    int isolated = 0;
    for (char c : connected)
        if (!c) ++isolated;
    return {iteration, edges.size(), isolated};
}

}  // namespace

RemResult rem(const SimilarityView& sim, const RemConfig& config, const RemObserver& observer) {
    config.validate();
    const int n = sim.n();
    for (int i = 0; i < n; ++i)
        if (sim.positive_neighbors(i).empty())
            throw InputError("rem: node '" + sim.labels()[i] +
                             "' has no positive-similarity neighbor");

    const int init_cap =
        std::max(1, static_cast<int>(std::floor(config.init_cap_fraction * n)));
    std::vector<int> active(n);
    for (int i = 0; i < n; ++i)
        active[i] = std::min<int>(init_cap, sim.positive_neighbors(i).size());

    RemResult result;
    auto edges = collect_edges(sim, active, config.intersection);
    result.trace.push_back(trace_row(0, edges, n));
    if (observer) observer(0, active);

    std::vector<double> weights;
    for (int iter = 1; iter <= config.max_iterations; ++iter) {
        bool shrunk = false;
        for (int i = 0; i < n; ++i) {
            const auto& list = sim.positive_neighbors(i);
            const int m = active[i];
            double total = 0.0;
            for (int r = 0; r < m; ++r) total += list[r].sim;
            weights.resize(m);
            for (int r = 0; r < m; ++r) weights[r] = list[r].sim / total;
            const double d = diversity_index(weights, config.alpha);
            const int keep = std::min<int>(m, std::max<long>(1, std::lround(d)));
            if (keep < m) {
                active[i] = keep;
                shrunk = true;
            }
        }
        if (!shrunk) break;
        edges = collect_edges(sim, active, config.intersection);
        result.trace.push_back(trace_row(iter, edges, n));
        if (observer) observer(iter, active);
    }

    result.edges.n_nodes = n;
    result.edges.edges.reserve(edges.size());
    for (const auto& e : edges) result.edges.edges.push_back({e.a, e.b, e.sim});
    return result;
}

void write_edges(const EdgeList& edges, const std::vector<std::string>& labels,
                 const std::filesystem::path& path) {
    auto out = open_output(path);
    out << format_header("edges", 1) << '\n';
    for (const auto& e : edges.edges)
        out << labels[e.source] << '\t' << labels[e.target] << '\t' << format_double(e.weight)
            << '\n';
    if (!out) throw InputError("write failed: " + path.string());
}

EdgeList load_edges(const std::filesystem::path& path, const std::vector<std::string>& labels) {
    std::unordered_map<std::string, int> ids;
    for (std::size_t i = 0; i < labels.size(); ++i) ids.emplace(labels[i], static_cast<int>(i));

    auto in = open_input(path);
    EdgeList out;
    out.n_nodes = static_cast<int>(labels.size());
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.starts_with("#")) {
            consume_format_header(line, "edges", 1);
            continue;
        }
        if (line.empty()) continue;
        auto cells = split_line(line, '\t');
        if (cells.size() != 3)
            throw InputError("edges " + path.string() + " line " + std::to_string(line_no) +
                             ": expected source<TAB>target<TAB>weight");
        auto a = ids.find(cells[0]);
        auto b = ids.find(cells[1]);
        if (a == ids.end() || b == ids.end())
            throw InputError("edges " + path.string() + " line " + std::to_string(line_no) +
                             ": unknown node label");
        double w;
        if (!parse_finite_double(cells[2], w))
            throw InputError("edges " + path.string() + " line " + std::to_string(line_no) +
                             ": weight is not a finite number");
        int s = a->second, t = b->second;
        if (s == t)
            throw InputError("edges " + path.string() + " line " + std::to_string(line_no) +
                             ": self loop");
        if (s > t) std::swap(s, t);
        out.edges.push_back({s, t, w});
    }
    std::sort(out.edges.begin(), out.edges.end(), [](const Edge& x, const Edge& y) {
        return std::tie(x.source, x.target) < std::tie(y.source, y.target);
    });
    for (std::size_t k = 1; k < out.edges.size(); ++k)
        if (out.edges[k].source == out.edges[k - 1].source &&
            out.edges[k].target == out.edges[k - 1].target)
            throw InputError("edges " + path.string() + ": duplicate edge " +
                             labels[out.edges[k].source] + "-" + labels[out.edges[k].target]);
    return out;
}

void write_rem_trace(const std::vector<RemTraceRow>& trace, const std::filesystem::path& path) {
    auto out = open_output(path);
    out << format_header("rem-trace", 1) << '\n';
    out << "iteration,remaining_edges,isolated_nodes\n";
    for (const auto& row : trace)
        out << row.iteration << ',' << row.remaining_edges << ',' << row.isolated_nodes << '\n';
    if (!out) throw InputError("write failed: " + path.string());
}

}  // namespace nodenet
