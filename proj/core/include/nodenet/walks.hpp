#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "nodenet/contexts.hpp"
#include "nodenet/dataset.hpp"
#include "nodenet/rng.hpp"

namespace nodenet {

struct WalkConfig {
    int length = 10;          // nodes per sequence, counting the start
    int walks_per_start = 10; // K
    double breadth_rate = 1.0;  // p, weight toward shared context
    double depth_rate = 1.0;    // q, weight toward fresh nodes
    std::uint64_t seed = 0;
    int workers = 1;

    void validate() const;
};

struct Corpus {
    std::vector<std::vector<int>> sequences;  // node ids
    std::vector<int> condition_of;            // per sequence

    std::size_t size() const { return sequences.size(); }
};

// One biased walk. The first step is uniform over the start's context set;
// later steps weight a candidate 1 when it is the previous node, breadth_rate
// when the previous node's set also contains it, depth_rate otherwise. Stops
// early on an empty context set. Throws when the start has no context.
std::vector<int> sample_walk(const ContextSets& contexts, int condition, int start,
                             const WalkConfig& config, Rng& rng);

// walks_per_start walks from every node that has a nonempty context set, per
// condition. Output order and content are fixed by the seed alone; the worker
// count never changes the result.
Corpus generate_corpus(const ContextSets& contexts, const WalkConfig& config);

void write_corpus(const Corpus& corpus, const ContextSets& contexts,
                  const std::filesystem::path& path);

// Corpus as read back from disk: sequences over a label vocabulary instead of
// dataset ids.
struct LabeledCorpus {
    std::vector<std::string> vocabulary;       // sorted unique labels
    std::vector<std::vector<int>> sequences;   // indices into vocabulary
    std::vector<std::string> condition_of;

    std::size_t size() const { return sequences.size(); }
};

LabeledCorpus load_corpus(const std::filesystem::path& path);

}  // namespace nodenet
