// Command-line front end: stage subcommands plus a monolithic `run`.
#include <cstdio>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nodenet/errors.hpp"
#include "nodenet/io_util.hpp"
#include "nodenet/pipeline.hpp"

namespace fs = std::filesystem;
using namespace nodenet;

namespace {

struct CliOptions {
    std::string config_file;
    std::string replay_file;
    std::string input;
    std::string synthetic_file;
    std::string edges_file;
    std::string communities_file;
    std::string out = ".";
    std::optional<double> tolerance_rel, tolerance_abs, p, q;
    std::optional<int> walk_length, walks_per_start, dim, window, epochs, workers;
    std::optional<std::string> objective, edges;
    std::optional<std::uint64_t> seed;
    bool no_contexts_json = false;
};

// Layering: config file first, then every explicitly set flag on top.
PipelineConfig assemble_config(const CliOptions& opt, bool need_source) {
    PipelineConfig config;
    bool have_file = false;
    if (!opt.replay_file.empty()) {
        config = config_from_manifest(opt.replay_file);
        have_file = true;
    } else if (!opt.config_file.empty()) {
        config = PipelineConfig::from_json_text(read_file_bytes(opt.config_file));
        have_file = true;
    }

    if (!opt.input.empty()) {
        config.input_path = opt.input;
        config.synthetic.reset();
    }
    if (!opt.synthetic_file.empty()) {
        config.synthetic = parse_synthetic_spec(read_file_bytes(opt.synthetic_file));
        config.input_path.clear();
    }
    if (opt.tolerance_rel) config.tolerance.relative = *opt.tolerance_rel;
    if (opt.tolerance_abs) config.tolerance.absolute_floor = *opt.tolerance_abs;
    if (opt.walk_length) config.walk.length = *opt.walk_length;
    if (opt.walks_per_start) config.walk.walks_per_start = *opt.walks_per_start;
    if (opt.p) config.walk.breadth_rate = *opt.p;
    if (opt.q) config.walk.depth_rate = *opt.q;
    if (opt.dim) config.train.dim = *opt.dim;
    if (opt.window) config.train.window = *opt.window;
    if (opt.epochs) config.train.epochs = *opt.epochs;
    if (opt.objective) parse_objective(*opt.objective, config.train);
    if (opt.edges) config.edges = parse_edge_selection(*opt.edges);
    if (opt.seed) config.seed = *opt.seed;
    if (opt.workers) config.workers = *opt.workers;
    if (opt.no_contexts_json) config.contexts_json = false;
    if (!opt.out.empty()) config.out = opt.out;

    if (need_source) config.validate();
    return config;
}

void add_common_flags(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--config", opt.config_file, "JSON config file; flags override its values");
    cmd->add_option("--out", opt.out, "output directory");
    cmd->add_option("--seed", opt.seed, "master seed; stages derive their own streams from it");
    cmd->add_option("--workers", opt.workers, "worker threads for walk generation");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Measurement-to-network pipeline: context sets, biased walks, "
                 "skip-gram embedding, and backbone extraction"};
    app.require_subcommand(1);
    CliOptions opt;

    auto* generate = app.add_subcommand("generate", "Build or ingest the dataset CSV");
    generate->add_option("--input", opt.input, "existing dataset CSV to validate and normalize");
    generate->add_option("--synthetic", opt.synthetic_file, "synthetic layout spec (JSON file)");
    add_common_flags(generate, opt);

    auto* walk = app.add_subcommand("walk", "Context sets and the walk corpus from a dataset");
    walk->add_option("--input", opt.input, "dataset CSV")->required();
    walk->add_option("--tolerance-rel", opt.tolerance_rel, "relative tolerance");
    walk->add_option("--tolerance-abs", opt.tolerance_abs, "absolute tolerance floor");
    walk->add_option("--walk-length", opt.walk_length, "nodes per sequence");
    walk->add_option("--walks-per-start", opt.walks_per_start, "sequences per starting node");
    walk->add_option("--p", opt.p, "breadth searching rate");
    walk->add_option("--q", opt.q, "depth searching rate");
    walk->add_flag("--no-contexts-json", opt.no_contexts_json, "skip the context-set dump");
    add_common_flags(walk, opt);

    auto* train_cmd = app.add_subcommand("train", "Skip-gram embedding from a corpus");
    train_cmd->add_option("--input", opt.input, "corpus file")->required();
    train_cmd->add_option("--dim", opt.dim, "embedding dimension");
    train_cmd->add_option("--window", opt.window, "context window");
    train_cmd->add_option("--epochs", opt.epochs, "training epochs");
    train_cmd->add_option("--objective", opt.objective, "softmax or neg:<k>");
    add_common_flags(train_cmd, opt);

    auto* edges_cmd = app.add_subcommand("edges", "Backbone extraction from embeddings");
    edges_cmd->add_option("--input", opt.input, "embeddings CSV")->required();
    edges_cmd->add_option("--edges", opt.edges, "gte:<tau> or rem:<alpha>[,<iterations>]");
    add_common_flags(edges_cmd, opt);

    auto* analyze = app.add_subcommand("analyze", "Projection, stats, and sweep reports");
    analyze->add_option("--input", opt.input, "embeddings CSV")->required();
    analyze->add_option("--edges-file", opt.edges_file, "edge TSV to analyze")->required();
    analyze->add_option("--communities", opt.communities_file, "node,community CSV");
    add_common_flags(analyze, opt);

    auto* run = app.add_subcommand("run", "Full pipeline plus manifest");
    run->add_option("--input", opt.input, "dataset CSV");
    run->add_option("--synthetic", opt.synthetic_file, "synthetic layout spec (JSON file)");
    run->add_option("--replay", opt.replay_file, "manifest.json from a previous run");
    run->add_option("--tolerance-rel", opt.tolerance_rel, "relative tolerance");
    run->add_option("--tolerance-abs", opt.tolerance_abs, "absolute tolerance floor");
    run->add_option("--walk-length", opt.walk_length, "nodes per sequence");
    run->add_option("--walks-per-start", opt.walks_per_start, "sequences per starting node");
    run->add_option("--p", opt.p, "breadth searching rate");
    run->add_option("--q", opt.q, "depth searching rate");
    run->add_option("--dim", opt.dim, "embedding dimension");
    run->add_option("--window", opt.window, "context window");
    run->add_option("--epochs", opt.epochs, "training epochs");
    run->add_option("--objective", opt.objective, "softmax or neg:<k>");
    run->add_option("--edges", opt.edges, "gte:<tau> or rem:<alpha>[,<iterations>]");
    run->add_flag("--no-contexts-json", opt.no_contexts_json, "skip the context-set dump");
    add_common_flags(run, opt);

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) {
            PipelineConfig config = assemble_config(opt, true);
            stage_generate(config, config.out);
        } else if (walk->parsed()) {
            PipelineConfig config = assemble_config(opt, false);
            stage_walk(config, opt.input, config.out);
        } else if (train_cmd->parsed()) {
            PipelineConfig config = assemble_config(opt, false);
            stage_train(config, opt.input, config.out);
        } else if (edges_cmd->parsed()) {
            PipelineConfig config = assemble_config(opt, false);
            stage_edges(config, opt.input, config.out);
        } else if (analyze->parsed()) {
            PipelineConfig config = assemble_config(opt, false);
            stage_analyze(config, opt.input, opt.edges_file, opt.communities_file, config.out);
        } else if (run->parsed()) {
            PipelineConfig config = assemble_config(opt, true);
            if (config.out.empty()) config.out = ".";
            run_pipeline(config);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code_for(e);
    }
    return 0;
}
