#include "nodenet/walks.hpp"

#include <algorithm>
#include <map>
#include <thread>

#include "nodenet/errors.hpp"
#include "nodenet/io_util.hpp"

namespace nodenet {

void WalkConfig::validate() const {
    if (length < 2) throw ConfigError("walk config: length must be at least 2");
    if (walks_per_start < 0)
        throw ConfigError("walk config: walks_per_start cannot be negative");
    if (!(breadth_rate > 0.0))
        throw ConfigError("walk config: breadth rate p must be positive");
    if (!(depth_rate > 0.0)) throw ConfigError("walk config: depth rate q must be positive");
    if (workers < 1) throw ConfigError("walk config: workers must be at least 1");
}

std::vector<int> sample_walk(const ContextSets& contexts, int condition, int start,
                             const WalkConfig& config, Rng& rng) {
    config.validate();
    if (!contexts.has_set(condition, start) || contexts.set(condition, start).empty())
        throw InputError("walk start '" + contexts.node_labels()[start] +
                         "' has no context in condition '" +
                         contexts.condition_labels()[condition] + "'");

    const bool uniform = config.breadth_rate == 1.0 && config.depth_rate == 1.0;
    std::vector<int> walk;
    walk.reserve(config.length);
    walk.push_back(start);

    std::vector<double> weights;
    int prev = -1;
    int cur = start;
    while (static_cast<int>(walk.size()) < config.length) {
        if (!contexts.has_set(condition, cur)) break;
        const auto& cands = contexts.set(condition, cur);
        if (cands.empty()) break;

        int next;
        if (prev < 0 || uniform) {
            next = cands[rng.index(cands.size())];
        } else {
            weights.clear();
            double total = 0.0;
            for (int c : cands) {
                double wgt = c == prev                               ? 1.0
                             : contexts.contains(condition, prev, c) ? config.breadth_rate
                                                                     : config.depth_rate;
                weights.push_back(wgt);
                total += wgt;
            }
            next = cands[rng.weighted(weights, total)];
        }
        walk.push_back(next);
        prev = cur;
        cur = next;
    }
    return walk;
}

Corpus generate_corpus(const ContextSets& contexts, const WalkConfig& config) {
    config.validate();

    struct Start {
        int condition;
        int node;
    };
    std::vector<Start> starts;
    for (int w = 0; w < contexts.n_conditions(); ++w)
        for (int i = 0; i < contexts.n_nodes(); ++i)
            if (contexts.has_set(w, i) && !contexts.set(w, i).empty())
                starts.push_back({w, i});

    const int k_walks = config.walks_per_start;
    std::vector<std::vector<std::vector<int>>> blocks(starts.size());
    auto run_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t s = begin; s < end; ++s) {
            auto& out = blocks[s];
            out.reserve(k_walks);
            for (int k = 0; k < k_walks; ++k) {
                Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(starts[s].condition),
                                    static_cast<std::uint64_t>(starts[s].node),
                                    static_cast<std::uint64_t>(k)));
                out.push_back(sample_walk(contexts, starts[s].condition, starts[s].node, config,
                                          rng));
            }
        }
    };

    const int workers =
        std::min(config.workers, std::max(1, static_cast<int>(starts.size())));
    if (workers <= 1) {
        run_range(0, starts.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (starts.size() + workers - 1) / workers;
        for (int t = 0; t < workers; ++t) {
            const std::size_t begin = t * chunk;
            const std::size_t end = std::min(starts.size(), begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(run_range, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    Corpus corpus;
    corpus.sequences.reserve(starts.size() * static_cast<std::size_t>(k_walks));
    corpus.condition_of.reserve(corpus.sequences.capacity());
    for (std::size_t s = 0; s < starts.size(); ++s) {
        for (auto& walk : blocks[s]) {
            if (walk.size() < 2) continue;  // no training pairs in a lone node
            corpus.sequences.push_back(std::move(walk));
            corpus.condition_of.push_back(starts[s].condition);
        }
    }
    return corpus;
}

void write_corpus(const Corpus& corpus, const ContextSets& contexts,
                  const std::filesystem::path& path) {
    auto out = open_output(path);
    out << format_header("corpus", 1) << '\n';
    const auto& labels = contexts.node_labels();
    for (std::size_t s = 0; s < corpus.sequences.size(); ++s) {
        out << contexts.condition_labels()[corpus.condition_of[s]] << '\t';
        const auto& seq = corpus.sequences[s];
        for (std::size_t t = 0; t < seq.size(); ++t) {
            if (t) out << ' ';
            out << labels[seq[t]];
        }
        out << '\n';
    }
    if (!out) throw InputError("write failed: " + path.string());
}

LabeledCorpus load_corpus(const std::filesystem::path& path) {
    auto in = open_input(path);
    std::string line;
    std::vector<std::string> conditions;
    std::vector<std::vector<std::string>> raw;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.starts_with("#")) {
            consume_format_header(line, "corpus", 1);
            continue;
        }
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw InputError("corpus " + path.string() + " line " + std::to_string(line_no) +
                             ": expected '<condition>\\t<node...>'");
        conditions.push_back(line.substr(0, tab));
        auto tokens = split_line(line.substr(tab + 1), ' ');
        if (tokens.size() < 2)
            throw InputError("corpus " + path.string() + " line " + std::to_string(line_no) +
                             ": sequence shorter than two nodes");
        raw.push_back(std::move(tokens));
    }

    LabeledCorpus corpus;
    std::map<std::string, int> ids;
    for (const auto& seq : raw)
        for (const auto& label : seq) ids.emplace(label, 0);
    corpus.vocabulary.reserve(ids.size());
    for (auto& [label, id] : ids) {
        id = static_cast<int>(corpus.vocabulary.size());
        corpus.vocabulary.push_back(label);
    }
    corpus.sequences.reserve(raw.size());
    for (const auto& seq : raw) {
        std::vector<int> s;
        s.reserve(seq.size());
        for (const auto& label : seq) s.push_back(ids.at(label));
        corpus.sequences.push_back(std::move(s));
    }
    corpus.condition_of = std::move(conditions);
    return corpus;
}

}  // namespace nodenet
