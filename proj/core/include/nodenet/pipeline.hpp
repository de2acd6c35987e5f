#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nodenet/backbone.hpp"
#include "nodenet/contexts.hpp"
#include "nodenet/skipgram.hpp"
#include "nodenet/synthetic.hpp"
#include "nodenet/walks.hpp"

namespace nodenet {

struct EdgeSelection {
    enum class Mode { gte, rem };
    Mode mode = Mode::gte;
    double tau = 0.8;
    RemConfig rem;

    void validate() const;
    std::string to_string() const;
};

// Accepts "gte:<tau>", "rem:<alpha>" or "rem:<alpha>,<max_iterations>".
EdgeSelection parse_edge_selection(const std::string& text);

// Accepts "softmax" or "neg:<k>"; applies to config.objective/negative_k.
void parse_objective(const std::string& text, TrainConfig& config);
std::string objective_to_string(const TrainConfig& config);

struct PipelineConfig {
    std::string input_path;                    // dataset CSV; empty when synthetic
    std::optional<SyntheticSpec> synthetic;
    ToleranceRule tolerance;
    bool include_self = false;
    WalkConfig walk;
    TrainConfig train;
    EdgeSelection edges;
    std::vector<double> sweep_grid;            // analyze-stage GTE thresholds
    bool contexts_json = true;
    std::string out;
    std::uint64_t seed = 0;
    int workers = 1;

    void validate() const;

    // JSON text, not a path. Unknown keys are rejected.
    static PipelineConfig from_json_text(const std::string& text);
    // Everything except the output directory, so a manifest replays anywhere.
    std::string to_json_text() const;
};

std::vector<double> default_sweep_grid();

// Stages share their on-disk formats: each one reads the previous stage's
// files, so running them separately matches the monolithic run byte for byte.
void stage_generate(const PipelineConfig& config, const std::filesystem::path& out_dir);
void stage_walk(const PipelineConfig& config, const std::filesystem::path& dataset_file,
                const std::filesystem::path& out_dir);
void stage_train(const PipelineConfig& config, const std::filesystem::path& corpus_file,
                 const std::filesystem::path& out_dir);
void stage_edges(const PipelineConfig& config, const std::filesystem::path& embeddings_file,
                 const std::filesystem::path& out_dir);
void stage_analyze(const PipelineConfig& config, const std::filesystem::path& embeddings_file,
                   const std::filesystem::path& edges_file,
                   const std::filesystem::path& communities_file,  // may be empty
                   const std::filesystem::path& out_dir);

// All stages in order plus manifest.json with a checksum per artifact.
void run_pipeline(const PipelineConfig& config);

// The config object embedded in a manifest produced by run_pipeline.
PipelineConfig config_from_manifest(const std::filesystem::path& manifest_file);

}  // namespace nodenet
