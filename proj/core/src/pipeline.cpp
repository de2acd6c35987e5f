#include "nodenet/pipeline.hpp"

#include <charconv>
#include <cstdio>
#include <utility>

#include <nlohmann/json.hpp>

#include "nodenet/analysis.hpp"
#include "nodenet/errors.hpp"
#include "nodenet/io_util.hpp"
#include "nodenet/node_vectors.hpp"

namespace nodenet {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

int parse_int(std::string_view text, const std::string& what) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw ConfigError(what + ": '" + std::string(text) + "' is not an integer");
    return value;
}

double parse_real(std::string_view text, const std::string& what) {
    double value = 0.0;
    if (!parse_finite_double(text, value))
        throw ConfigError(what + ": '" + std::string(text) + "' is not a finite number");
    return value;
}

}  // namespace

void EdgeSelection::validate() const {
    if (mode == Mode::gte) {
        if (!(tau > 0.0 && tau < 1.0))
            throw ConfigError("edge selection: gte threshold must lie in (0, 1)");
    } else {
        rem.validate();
    }
}

std::string EdgeSelection::to_string() const {
    if (mode == Mode::gte) return "gte:" + format_double(tau);
    return "rem:" + format_double(rem.alpha) + "," + std::to_string(rem.max_iterations);
}

EdgeSelection parse_edge_selection(const std::string& text) {
    EdgeSelection sel;
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    if (head == "gte") {
        if (colon == std::string::npos)
            throw ConfigError("edge selection: gte needs a threshold, e.g. gte:0.8");
        sel.mode = EdgeSelection::Mode::gte;
        sel.tau = parse_real(text.substr(colon + 1), "edge selection threshold");
    } else if (head == "rem") {
        sel.mode = EdgeSelection::Mode::rem;
        if (colon != std::string::npos) {
            const auto args = split_line(text.substr(colon + 1), ',');
            if (args.empty() || args.size() > 2)
                throw ConfigError("edge selection: rem takes 'rem:<alpha>[,<iterations>]'");
            sel.rem.alpha = parse_real(args[0], "edge selection alpha");
            if (args.size() == 2)
                sel.rem.max_iterations = parse_int(args[1], "edge selection iterations");
        }
    } else {
        throw ConfigError("edge selection: expected 'gte:<tau>' or 'rem:<alpha>[,<iterations>]', "
                          "got '" + text + "'");
    }
    sel.validate();
    return sel;
}

void parse_objective(const std::string& text, TrainConfig& config) {
    if (text == "softmax") {
        config.objective = Objective::full_softmax;
    } else if (text.starts_with("neg:")) {
        config.objective = Objective::negative_sampling;
        config.negative_k = parse_int(text.substr(4), "objective sample count");
        if (config.negative_k < 1)
            throw ConfigError("objective: negative sample count must be at least 1");
    } else {
        throw ConfigError("objective: expected 'softmax' or 'neg:<k>', got '" + text + "'");
    }
}

std::string objective_to_string(const TrainConfig& config) {
    if (config.objective == Objective::full_softmax) return "softmax";
    return "neg:" + std::to_string(config.negative_k);
}

void PipelineConfig::validate() const {
    if (input_path.empty() == !synthetic.has_value())
        throw ConfigError(
            "pipeline config: provide exactly one of an input dataset or a synthetic spec");
    if (synthetic) synthetic->validate();
    tolerance.validate();
    walk.validate();
    train.validate();
    edges.validate();
    for (double tau : sweep_grid)
        if (!(tau > 0.0 && tau < 1.0))
            throw ConfigError("pipeline config: sweep thresholds must lie in (0, 1)");
    if (workers < 1) throw ConfigError("pipeline config: workers must be at least 1");
}

std::vector<double> default_sweep_grid() {
    std::vector<double> grid;
    for (int i = 1; i <= 19; ++i) grid.push_back(i / 20.0);
    return grid;
}

namespace {

void reject_unknown_keys(const nlohmann::json& j, std::initializer_list<const char*> known,
                         const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* k : known)
            if (key == k) ok = true;
        if (!ok) throw ConfigError("config: unknown key '" + key + "' in " + where);
    }
}

}  // namespace

PipelineConfig PipelineConfig::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");
    reject_unknown_keys(j,
                        {"input", "synthetic", "tolerance", "include_self", "walk", "train",
                         "edges", "sweep_grid", "contexts_json", "out", "seed", "workers"},
                        "the top level");

    PipelineConfig config;
    try {
    config.input_path = j.value("input", std::string());
    if (j.contains("synthetic")) config.synthetic = parse_synthetic_spec(j.at("synthetic").dump());
    if (j.contains("tolerance")) {
        const auto& t = j.at("tolerance");
        reject_unknown_keys(t, {"relative", "absolute_floor"}, "tolerance");
        config.tolerance.relative = t.value("relative", config.tolerance.relative);
        config.tolerance.absolute_floor = t.value("absolute_floor", config.tolerance.absolute_floor);
    }
    config.include_self = j.value("include_self", false);
    if (j.contains("walk")) {
        const auto& w = j.at("walk");
        reject_unknown_keys(w, {"length", "walks_per_start", "p", "q"}, "walk");
        config.walk.length = w.value("length", config.walk.length);
        config.walk.walks_per_start = w.value("walks_per_start", config.walk.walks_per_start);
        config.walk.breadth_rate = w.value("p", config.walk.breadth_rate);
        config.walk.depth_rate = w.value("q", config.walk.depth_rate);
    }
    if (j.contains("train")) {
        const auto& t = j.at("train");
        reject_unknown_keys(t,
                            {"dim", "window", "epochs", "initial_learning_rate",
                             "final_learning_rate", "objective"},
                            "train");
        config.train.dim = t.value("dim", config.train.dim);
        config.train.window = t.value("window", config.train.window);
        config.train.epochs = t.value("epochs", config.train.epochs);
        config.train.initial_learning_rate =
            t.value("initial_learning_rate", config.train.initial_learning_rate);
        config.train.final_learning_rate =
            t.value("final_learning_rate", config.train.final_learning_rate);
        if (t.contains("objective")) parse_objective(t.at("objective"), config.train);
    }
    if (j.contains("edges")) config.edges = parse_edge_selection(j.at("edges"));
    if (j.contains("sweep_grid")) config.sweep_grid = j.at("sweep_grid").get<std::vector<double>>();
    config.contexts_json = j.value("contexts_json", true);
    config.out = j.value("out", std::string());
    config.seed = j.value("seed", std::uint64_t{0});
    config.workers = j.value("workers", 1);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    config.validate();
    return config;
}

std::string PipelineConfig::to_json_text() const {
    ordered_json j;
    if (!input_path.empty()) j["input"] = input_path;
    if (synthetic) j["synthetic"] = ordered_json::parse(synthetic_spec_to_json_text(*synthetic));
    j["tolerance"] = {{"relative", tolerance.relative},
                      {"absolute_floor", tolerance.absolute_floor}};
    j["include_self"] = include_self;
    j["walk"] = {{"length", walk.length},
                 {"walks_per_start", walk.walks_per_start},
                 {"p", walk.breadth_rate},
                 {"q", walk.depth_rate}};
    j["train"] = {{"dim", train.dim},
                  {"window", train.window},
                  {"epochs", train.epochs},
                  {"initial_learning_rate", train.initial_learning_rate},
                  {"final_learning_rate", train.final_learning_rate},
                  {"objective", objective_to_string(train)}};
    j["edges"] = edges.to_string();
    j["sweep_grid"] = sweep_grid.empty() ? default_sweep_grid() : sweep_grid;
    j["contexts_json"] = contexts_json;
    j["seed"] = seed;
    j["workers"] = workers;
    return j.dump(2);
}

namespace {

template <typename Fn>
void run_stage(const char* name, Fn&& fn) {
    try {
        fn();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, exit_code_for(e), e.what());
    }
}

template <typename Fn>
void write_artifact(const fs::path& path, Fn&& fn) {
    fs::path tmp = path;
    tmp += ".partial";
    fn(tmp);
    fs::rename(tmp, path);
}

}  // namespace

void stage_generate(const PipelineConfig& config, const fs::path& out_dir) {
    run_stage("ingest", [&] {
        fs::create_directories(out_dir);
        if (config.synthetic) {
            SyntheticSpec spec = *config.synthetic;
            if (!spec.seed_explicit) spec.seed = derive_seed(config.seed, "synthetic");
            NodalDataset dataset = generate_synthetic(spec);
            write_artifact(out_dir / "dataset.csv",
                           [&](const fs::path& p) { write_dataset(dataset, p); });
            write_artifact(out_dir / "communities.csv",
                           [&](const fs::path& p) { write_communities(spec, p); });
        } else {
            NodalDataset dataset = load_dataset(config.input_path);
            write_artifact(out_dir / "dataset.csv",
                           [&](const fs::path& p) { write_dataset(dataset, p); });
        }
    });
}

void stage_walk(const PipelineConfig& config, const fs::path& dataset_file,
                const fs::path& out_dir) {
    run_stage("walk", [&] {
        fs::create_directories(out_dir);
        NodalDataset dataset = load_dataset(dataset_file);
        ContextSets contexts = build_context_sets(dataset, config.tolerance, config.include_self);
        if (config.contexts_json)
            write_artifact(out_dir / "contexts.json",
                           [&](const fs::path& p) { write_context_sets_json(contexts, p); });
        WalkConfig wc = config.walk;
        wc.seed = derive_seed(config.seed, "walks");
        wc.workers = config.workers;
        Corpus corpus = generate_corpus(contexts, wc);
        if (corpus.sequences.empty())
            std::fprintf(stderr, "warning: corpus is empty (no walkable starts or zero walks per start)\n");
        write_artifact(out_dir / "corpus.txt",
                       [&](const fs::path& p) { write_corpus(corpus, contexts, p); });
    });
}

void stage_train(const PipelineConfig& config, const fs::path& corpus_file,
                 const fs::path& out_dir) {
    run_stage("train", [&] {
        fs::create_directories(out_dir);
        LabeledCorpus corpus = load_corpus(corpus_file);
        TrainConfig tc = config.train;
        tc.seed = derive_seed(config.seed, "train");
        TrainResult result = train(corpus, tc);
        NodeVectors vectors = node_vectors(result.model);
        write_artifact(out_dir / "embeddings.csv",
                       [&](const fs::path& p) { write_embeddings(vectors, p); });
        write_artifact(out_dir / "embeddings.bin",
                       [&](const fs::path& p) { write_embeddings_bin(vectors, p); });
        write_artifact(out_dir / "train_log.csv",
                       [&](const fs::path& p) { write_train_log(result.epochs, p); });
    });
}

void stage_edges(const PipelineConfig& config, const fs::path& embeddings_file,
                 const fs::path& out_dir) {
    run_stage("edges", [&] {
        fs::create_directories(out_dir);
        NodeVectors vectors = load_embeddings(embeddings_file);
        SimilarityView sim = SimilarityView::from_vectors(vectors);
        EdgeList edge_list;
        if (config.edges.mode == EdgeSelection::Mode::gte) {
            edge_list = gte(sim, config.edges.tau);
        } else {
            RemResult result = rem(sim, config.edges.rem);
            edge_list = std::move(result.edges);
            write_artifact(out_dir / "rem_trace.csv",
                           [&](const fs::path& p) { write_rem_trace(result.trace, p); });
        }
        write_artifact(out_dir / "edges.tsv",
                       [&](const fs::path& p) { write_edges(edge_list, vectors.labels, p); });
    });
}

void stage_analyze(const PipelineConfig& config, const fs::path& embeddings_file,
                   const fs::path& edges_file, const fs::path& communities_file,
                   const fs::path& out_dir) {
    run_stage("analyze", [&] {
        fs::create_directories(out_dir);
        NodeVectors vectors = load_embeddings(embeddings_file);
        EdgeList edge_list = load_edges(edges_file, vectors.labels);
        NetworkStats stats = network_stats(edge_list);
        write_artifact(out_dir / "network_stats.csv",
                       [&](const fs::path& p) { write_network_stats(stats, p); });
        write_artifact(out_dir / "degree_histogram.csv",
                       [&](const fs::path& p) { write_degree_histogram(stats, p); });

        SimilarityView sim = SimilarityView::from_vectors(vectors);
        const auto grid = config.sweep_grid.empty() ? default_sweep_grid() : config.sweep_grid;
        const auto sweep = threshold_sweep(sim, grid);
        write_artifact(out_dir / "threshold_sweep.csv",
                       [&](const fs::path& p) { write_threshold_sweep(sweep, p); });

        CommunityAssignment communities;
        std::vector<std::string> per_node_names;
        if (!communities_file.empty()) {
            communities = load_communities(communities_file, vectors.labels);
            per_node_names.reserve(communities.ids.size());
            for (int id : communities.ids) per_node_names.push_back(communities.names[id]);
        }

        Projection2D projection = pca_project(vectors.rows);
        write_artifact(out_dir / "projection.csv", [&](const fs::path& p) {
            write_projection(projection, vectors.labels, per_node_names, p);
        });
        write_artifact(out_dir / "projection.svg", [&](const fs::path& p) {
            write_projection_svg(projection, communities.ids, p);
        });

        if (!communities_file.empty()) {
            SeparationReport separation =
                community_separation(vectors.rows, communities.ids, SeparationMetric::cosine);
            write_artifact(out_dir / "separation.csv", [&](const fs::path& p) {
                write_separation(separation, communities.names, SeparationMetric::cosine, p);
            });
        }
    });
}

void run_pipeline(const PipelineConfig& config) {
    config.validate();
    if (config.out.empty()) throw ConfigError("pipeline: output directory not set");
    const fs::path out_dir = config.out;

    stage_generate(config, out_dir);
    stage_walk(config, out_dir / "dataset.csv", out_dir);
    stage_train(config, out_dir / "corpus.txt", out_dir);
    stage_edges(config, out_dir / "embeddings.csv", out_dir);
    stage_analyze(config, out_dir / "embeddings.csv", out_dir / "edges.tsv",
                  config.synthetic ? out_dir / "communities.csv" : fs::path(), out_dir);

    run_stage("manifest", [&] {
        static const char* artifact_names[] = {
            "dataset.csv",       "communities.csv",    "contexts.json",
            "corpus.txt",        "embeddings.csv",     "embeddings.bin",
            "train_log.csv",     "edges.tsv",          "rem_trace.csv",
            "network_stats.csv", "degree_histogram.csv", "threshold_sweep.csv",
            "projection.csv",    "projection.svg",     "separation.csv"};
        ordered_json artifacts;
        for (const char* name : artifact_names) {
            const fs::path p = out_dir / name;
            if (!fs::exists(p)) continue;
            const std::string bytes = read_file_bytes(p);
            artifacts[name] = {{"bytes", bytes.size()}, {"fnv1a64", fnv1a_hex(bytes)}};
        }
        ordered_json manifest;
        manifest["kind"] = "run-manifest";
        manifest["version"] = 1;
        manifest["config"] = ordered_json::parse(config.to_json_text());
        manifest["artifacts"] = std::move(artifacts);
        write_artifact(out_dir / "manifest.json", [&](const fs::path& p) {
            auto out = open_output(p);
            out << manifest.dump(2) << '\n';
            if (!out) throw InputError("write failed: " + p.string());
        });
    });
}

PipelineConfig config_from_manifest(const fs::path& manifest_file) {
    nlohmann::json manifest;
    try {
        manifest = nlohmann::json::parse(read_file_bytes(manifest_file));
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError("manifest " + manifest_file.string() + ": invalid JSON: " + e.what());
    }
    if (manifest.value("kind", std::string()) != "run-manifest" ||
        manifest.value("version", 0) != 1)
        throw InputError("manifest " + manifest_file.string() +
                         ": not a run-manifest v1 document");
    if (!manifest.contains("config"))
        throw InputError("manifest " + manifest_file.string() + ": missing config");
    return PipelineConfig::from_json_text(manifest.at("config").dump());
}

}  // namespace nodenet
