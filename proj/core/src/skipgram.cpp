#include "nodenet/skipgram.hpp"

#include <algorithm>
#include <cmath>
#include <span>

#include "nodenet/errors.hpp"
#include "nodenet/io_util.hpp"

namespace nodenet {

void TrainConfig::validate() const {
    if (dim < 2) throw ConfigError("train config: dim must be at least 2");
    if (window < 1) throw ConfigError("train config: window must be at least 1");
    if (epochs < 0) throw ConfigError("train config: epochs cannot be negative");
    if (!(initial_learning_rate > 0.0))
        throw ConfigError("train config: initial learning rate must be positive");
    if (final_learning_rate < 0.0 || final_learning_rate > initial_learning_rate)
        throw ConfigError("train config: final learning rate must lie in [0, initial]");
    if (objective == Objective::negative_sampling && negative_k < 1)
        throw ConfigError("train config: negative sample count must be at least 1");
}

EmbeddingModel init_model(std::vector<std::string> labels, int dim, std::uint64_t seed) {
    EmbeddingModel model;
    const auto n = static_cast<Eigen::Index>(labels.size());
    model.labels = std::move(labels);
    model.input_weights.resize(n, dim);
    model.output_weights = RowMat::Zero(n, dim);
    Rng rng(seed);
    const double half = 0.5 / dim;
    for (Eigen::Index i = 0; i < n; ++i)
        for (int j = 0; j < dim; ++j) model.input_weights(i, j) = rng.uniform(-half, half);
    return model;
}

std::vector<TrainingPair> extract_pairs(const std::vector<std::vector<int>>& sequences,
                                        int window) {
    if (window < 1) throw ConfigError("extract_pairs: window must be at least 1");
    std::vector<TrainingPair> pairs;
    for (const auto& seq : sequences) {
        const int len = static_cast<int>(seq.size());
        for (int i = 0; i < len; ++i) {
            const int lo = std::max(0, i - window);
            const int hi = std::min(len - 1, i + window);
            for (int j = lo; j <= hi; ++j)
                if (j != i) pairs.push_back({seq[i], seq[j]});
        }
    }
    return pairs;
}

namespace {

// Scratch buffers reused across steps so the hot loop does not allocate.
struct Workspace {
    Eigen::VectorXd u;       // logits
    Eigen::VectorXd g;       // softmax / output-layer gradient
    Eigen::RowVectorXd h;    // center row
    Eigen::RowVectorXd gh;   // gradient wrt the center row
};

double logits(const EmbeddingModel& model, int center, Workspace& ws) {
    ws.h = model.input_weights.row(center);
    ws.u.noalias() = model.output_weights * ws.h.transpose();
    const double umax = ws.u.maxCoeff();
    if (!std::isfinite(umax))
        throw NumericError("skip-gram logits diverged (non-finite scores); lower the learning rate");
    return umax;
}

double step_full(EmbeddingModel& model, TrainingPair pair, double learning_rate, Workspace& ws) {
    const double umax = logits(model, pair.center, ws);
    ws.g = (ws.u.array() - umax).exp();
    const double z = ws.g.sum();
    const double loss = umax + std::log(z) - ws.u(pair.context);
    ws.g /= z;
    ws.g(pair.context) -= 1.0;
    ws.gh.noalias() = ws.g.transpose() * model.output_weights;
    model.output_weights.noalias() -= learning_rate * ws.g * ws.h;
    model.input_weights.row(pair.center) -= learning_rate * ws.gh;
    return loss;
}

double softplus(double x) {
    return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

double step_sampled(EmbeddingModel& model, TrainingPair pair, double learning_rate,
                    std::span<const int> negatives, Workspace& ws) {
    ws.h = model.input_weights.row(pair.center);
    ws.gh.setZero(model.dim());
    double loss = 0.0;

    auto update = [&](int row, double label) {
        const double u = model.output_weights.row(row).dot(ws.h);
        if (!std::isfinite(u))
            throw NumericError(
                "skip-gram logits diverged (non-finite scores); lower the learning rate");
        const double s = 1.0 / (1.0 + std::exp(-u));
        loss += label > 0.5 ? softplus(-u) : softplus(u);
        const double g = s - label;
        ws.gh += g * model.output_weights.row(row);
        model.output_weights.row(row) -= (learning_rate * g) * ws.h;
    };
    update(pair.context, 1.0);
    for (int neg : negatives)
        if (neg != pair.context) update(neg, 0.0);
    model.input_weights.row(pair.center) -= learning_rate * ws.gh;
    return loss;
}

// Noise distribution for negative sampling: corpus frequency ^ 3/4.
struct NoiseTable {
    std::vector<double> cumulative;
    double total = 0.0;

    static NoiseTable build(const LabeledCorpus& corpus) {
        std::vector<double> counts(corpus.vocabulary.size(), 0.0);
        for (const auto& seq : corpus.sequences)
            for (int id : seq) counts[id] += 1.0;
        NoiseTable table;
        table.cumulative.resize(counts.size());
        for (std::size_t i = 0; i < counts.size(); ++i) {
            table.total += std::pow(counts[i], 0.75);
            table.cumulative[i] = table.total;
        }
        return table;
    }

    int draw(Rng& rng) const {
        const double u = rng.next_double() * total;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        if (it == cumulative.end()) --it;
        return static_cast<int>(it - cumulative.begin());
    }
};

void fisher_yates(std::vector<TrainingPair>& pairs, Rng& rng) {
    for (std::size_t i = pairs.size(); i > 1; --i)
        std::swap(pairs[i - 1], pairs[rng.index(i)]);
}

}  // namespace

Eigen::VectorXd forward_softmax(const EmbeddingModel& model, int center) {
    Workspace ws;
    const double umax = logits(model, center, ws);
    Eigen::VectorXd p = (ws.u.array() - umax).exp();
    p /= p.sum();
    return p;
}

double pair_loss(const EmbeddingModel& model, TrainingPair pair) {
    Workspace ws;
    const double umax = logits(model, pair.center, ws);
    const double lse = umax + std::log((ws.u.array() - umax).exp().sum());
    return lse - ws.u(pair.context);
}

void sgd_step(EmbeddingModel& model, TrainingPair pair, double learning_rate) {
    if (!(learning_rate >= 0.0)) throw ConfigError("sgd_step: learning rate cannot be negative");
    Workspace ws;
    step_full(model, pair, learning_rate, ws);
}

TrainResult train(const LabeledCorpus& corpus, const TrainConfig& config) {
    config.validate();
    if (corpus.sequences.empty()) throw ConfigError("train: corpus is empty");

    TrainResult result;
    result.model =
        init_model(corpus.vocabulary, config.dim, derive_seed(config.seed, "init"));
    auto pairs = extract_pairs(corpus.sequences, config.window);
    if (pairs.empty()) throw ConfigError("train: corpus yields no training pairs");

    Rng shuffle_rng(derive_seed(config.seed, "shuffle"));
    Rng noise_rng(derive_seed(config.seed, "noise"));
    NoiseTable noise;
    if (config.objective == Objective::negative_sampling) noise = NoiseTable::build(corpus);

    const double total = static_cast<double>(pairs.size()) * std::max(config.epochs, 1);
    const double lr0 = config.initial_learning_rate;
    const double lr1 = config.final_learning_rate;

    Workspace ws;
    std::vector<int> negatives(config.negative_k);
    std::size_t step = 0;
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        fisher_yates(pairs, shuffle_rng);
        double sum_loss = 0.0;
        double lr = lr0;
        for (const auto& pair : pairs) {
            lr = lr0 + (lr1 - lr0) * (static_cast<double>(step) / total);
            if (config.objective == Objective::full_softmax) {
                sum_loss += step_full(result.model, pair, lr, ws);
            } else {
                for (int k = 0; k < config.negative_k; ++k) negatives[k] = noise.draw(noise_rng);
                sum_loss += step_sampled(result.model, pair, lr, negatives, ws);
            }
            ++step;
        }
        result.epochs.push_back(
            {epoch + 1, sum_loss / static_cast<double>(pairs.size()), lr});
    }
    return result;
}

NodeVectors node_vectors(const EmbeddingModel& model) {
    return {model.labels, model.input_weights};
}

void write_train_log(const std::vector<EpochLog>& log, const std::filesystem::path& path) {
    auto out = open_output(path);
    out << format_header("train-log", 1) << '\n';
    out << "epoch,mean_loss,learning_rate\n";
    for (const auto& e : log)
        out << e.epoch << ',' << format_double(e.mean_loss) << ','
            << format_double(e.learning_rate) << '\n';
    if (!out) throw InputError("write failed: " + path.string());
}

}  // namespace nodenet
