#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "nodenet/node_vectors.hpp"
#include "nodenet/rng.hpp"
#include "nodenet/walks.hpp"

namespace nodenet {

enum class Objective { full_softmax, negative_sampling };

struct TrainConfig {
    int dim = 128;
    int window = 5;
    int epochs = 5;
    double initial_learning_rate = 0.025;
    double final_learning_rate = 1e-4;
    Objective objective = Objective::full_softmax;
    int negative_k = 5;
    std::uint64_t seed = 0;

    void validate() const;
};

struct EmbeddingModel {
    std::vector<std::string> labels;
    RowMat input_weights;   // row i = vector of node i
    RowMat output_weights;  // row r = output-layer weights for node r

    int n() const { return static_cast<int>(input_weights.rows()); }
    int dim() const { return static_cast<int>(input_weights.cols()); }
};

struct TrainingPair {
    int center;
    int context;
};

// Input rows uniform in [-0.5/dim, +0.5/dim], output rows zero.
EmbeddingModel init_model(std::vector<std::string> labels, int dim, std::uint64_t seed);

// One (center, context) pair per window position, window clipped at sequence
// boundaries and never crossing sequences.
std::vector<TrainingPair> extract_pairs(const std::vector<std::vector<int>>& sequences,
                                        int window);

// P(node r | center) over all nodes, max-subtracted for overflow safety.
Eigen::VectorXd forward_softmax(const EmbeddingModel& model, int center);

// Per-pair negative log-likelihood: -u[context] + log sum_r exp(u[r]).
double pair_loss(const EmbeddingModel& model, TrainingPair pair);

// One full-softmax gradient step on both weight matrices.
void sgd_step(EmbeddingModel& model, TrainingPair pair, double learning_rate);

struct EpochLog {
    int epoch;
    double mean_loss;
    double learning_rate;  // rate at the end of the epoch
};

struct TrainResult {
    EmbeddingModel model;
    std::vector<EpochLog> epochs;
};

TrainResult train(const LabeledCorpus& corpus, const TrainConfig& config);

NodeVectors node_vectors(const EmbeddingModel& model);

void write_train_log(const std::vector<EpochLog>& log, const std::filesystem::path& path);

}  // namespace nodenet
