#include <doctest.h>

#include <nodenet/errors.hpp>
#include <nodenet/rng.hpp>
#include <nodenet/skipgram.hpp>

#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>

using namespace nodenet;

namespace {

std::vector<std::string> labels(int n) {
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) out.push_back("n" + std::to_string(i));
    return out;
}

EmbeddingModel random_model(int n, int dim, std::uint64_t seed) {
    auto model = init_model(labels(n), dim, seed);
    Rng rng(seed + 1);
    for (Eigen::Index i = 0; i < n; ++i)
        for (int k = 0; k < dim; ++k) {
            model.input_weights(i, k) = rng.uniform(-0.8, 0.8);
            model.output_weights(i, k) = rng.uniform(-0.8, 0.8);
        }
    return model;
}

// Two groups of four nodes; sequences never cross groups.
LabeledCorpus two_clique_corpus(std::uint64_t seed) {
    LabeledCorpus corpus;
    corpus.vocabulary = labels(8);
    Rng rng(seed);
    for (int s = 0; s < 80; ++s) {
        const int base = s % 2 == 0 ? 0 : 4;
        std::vector<int> seq;
        for (int t = 0; t < 6; ++t) seq.push_back(base + static_cast<int>(rng.index(4)));
        corpus.sequences.push_back(std::move(seq));
        corpus.condition_of.push_back("T1");
    }
    return corpus;
}

double mean_cosine(const RowMat& m, int i0, int i1, int j0, int j1) {
    double total = 0.0;
    int count = 0;
    for (int i = i0; i < i1; ++i)
        for (int j = j0; j < j1; ++j) {
            if (i == j) continue;
            total += m.row(i).dot(m.row(j)) / (m.row(i).norm() * m.row(j).norm());
            ++count;
        }
    return total / count;
}

}  // namespace

TEST_CASE("train config validation") {
    TrainConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.dim = 1;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = TrainConfig{};
    cfg.final_learning_rate = cfg.initial_learning_rate * 2;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = TrainConfig{};
    cfg.objective = Objective::negative_sampling;
    cfg.negative_k = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = TrainConfig{};
    cfg.epochs = 0;  // allowed: degenerate run returns the initial model
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("initial model is bounded, centered noise over zero output weights") {
    auto model = init_model(labels(10), 8, 21);
    CHECK(model.output_weights.isZero(0.0));
    CHECK(model.input_weights.cwiseAbs().maxCoeff() <= 0.5 / 8);
    CHECK(model.input_weights.cwiseAbs().minCoeff() > 0.0);

    auto again = init_model(labels(10), 8, 21);
    CHECK(model.input_weights == again.input_weights);
    auto other = init_model(labels(10), 8, 22);
    CHECK(model.input_weights != other.input_weights);
}

TEST_CASE("window pairs enumerate clipped neighborhoods per sequence") {
    auto pairs = extract_pairs({{10, 11, 12, 13}}, 2);
    std::vector<std::pair<int, int>> got;
    for (auto p : pairs) got.push_back({p.center, p.context});
    std::vector<std::pair<int, int>> want = {
        {10, 11}, {10, 12},
        {11, 10}, {11, 12}, {11, 13},
        {12, 10}, {12, 11}, {12, 13},
        {13, 11}, {13, 12},
    };
    CHECK(got == want);
}

TEST_CASE("window pairs never cross sequence boundaries") {
    auto pairs = extract_pairs({{0, 1}, {2, 3}}, 5);
    REQUIRE(pairs.size() == 4);
    for (auto p : pairs) CHECK((p.center < 2) == (p.context < 2));
}

TEST_CASE("softmax output is a probability vector matching a long double oracle") {
    auto model = random_model(7, 5, 31);
    for (int center = 0; center < 7; ++center) {
        auto p = forward_softmax(model, center);
        CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(p.minCoeff() > 0.0);
        auto ref = oracles::softmax_rowl(model, center);
        for (int r = 0; r < 7; ++r)
            CHECK(p(r) == doctest::Approx(static_cast<double>(ref[r])).epsilon(1e-13));
    }
}

TEST_CASE("softmax is invariant to a constant shift of all scores") {
    auto model = random_model(6, 4, 32);
    auto p1 = forward_softmax(model, 2);
    // Adding one fixed row to every output row shifts all logits equally.
    Eigen::RowVectorXd delta(4);
    delta << 0.3, -0.7, 1.1, 0.05;
    model.output_weights.rowwise() += delta;
    auto p2 = forward_softmax(model, 2);
    for (int r = 0; r < 6; ++r) CHECK(p1(r) == doctest::Approx(p2(r)).epsilon(1e-12));
}

TEST_CASE("fresh model predicts uniformly and its pair loss is log n") {
    auto model = init_model(labels(9), 4, 5);  // zero output weights
    auto p = forward_softmax(model, 3);
    for (int r = 0; r < 9; ++r) CHECK(p(r) == doctest::Approx(1.0 / 9).epsilon(1e-15));
    CHECK(pair_loss(model, {3, 7}) == doctest::Approx(std::log(9.0)).epsilon(1e-14));
}

TEST_CASE("pair loss equals the negative log softmax probability") {
    auto model = random_model(8, 4, 33);
    for (int center = 0; center < 8; ++center) {
        auto p = forward_softmax(model, center);
        for (int ctx = 0; ctx < 8; ++ctx)
            CHECK(pair_loss(model, {center, ctx}) ==
                  doctest::Approx(-std::log(p(ctx))).epsilon(1e-12));
        auto ref = oracles::pair_lossl(model, center, (center + 3) % 8);
        CHECK(pair_loss(model, {center, (center + 3) % 8}) ==
              doctest::Approx(static_cast<double>(ref)).epsilon(1e-12));
    }
}

TEST_CASE("analytic gradients match central finite differences") {
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
        auto model = random_model(6, 4, 1000 + trial);
        Rng rng(2000 + trial);
        const int center = static_cast<int>(rng.index(6));
        int context = static_cast<int>(rng.index(6));

        auto fd = oracles::fd_gradients(model, center, context);

        // Recover the analytic gradient from one unit-rate step.
        auto stepped = model;
        sgd_step(stepped, {center, context}, 1.0);
        RowMat grad_in = model.input_weights - stepped.input_weights;
        RowMat grad_out = model.output_weights - stepped.output_weights;

        auto check_all = [&](const RowMat& analytic, const RowMat& numeric) {
            for (Eigen::Index i = 0; i < analytic.rows(); ++i)
                for (Eigen::Index k = 0; k < analytic.cols(); ++k) {
                    const double a = analytic(i, k);
                    const double f = numeric(i, k);
                    const double rel =
                        std::abs(a - f) / std::max({1e-8, std::abs(a), std::abs(f)});
                    INFO("trial ", trial, " cell (", i, ",", k, ") analytic ", a, " fd ", f);
                    REQUIRE(rel < 1e-5);
                }
        };
        check_all(grad_in, fd.input);
        check_all(grad_out, fd.output);
    }
}

TEST_CASE("gradient steps reduce the stepped pair's loss") {
    auto model = random_model(6, 4, 77);
    TrainingPair pair{1, 4};
    double loss = pair_loss(model, pair);
    for (int it = 0; it < 25; ++it) {
        sgd_step(model, pair, 0.2);
        const double next = pair_loss(model, pair);
        CHECK(next < loss);
        loss = next;
    }
}

TEST_CASE("a zero learning rate leaves the model untouched") {
    auto model = random_model(5, 3, 78);
    auto copy = model;
    sgd_step(copy, {0, 2}, 0.0);
    CHECK(copy.input_weights == model.input_weights);
    CHECK(copy.output_weights == model.output_weights);
    CHECK_THROWS_AS(sgd_step(copy, {0, 2}, -0.1), ConfigError);
}

TEST_CASE("zero epochs return exactly the initialized model") {
    auto corpus = two_clique_corpus(3);
    TrainConfig cfg;
    cfg.dim = 6;
    cfg.epochs = 0;
    cfg.seed = 40;
    auto result = train(corpus, cfg);
    auto fresh = init_model(corpus.vocabulary, 6, derive_seed(40, "init"));
    CHECK(result.model.input_weights == fresh.input_weights);
    CHECK(result.model.output_weights == fresh.output_weights);
    CHECK(result.epochs.empty());
}

TEST_CASE("training is reproducible by seed and sensitive to it") {
    auto corpus = two_clique_corpus(3);
    TrainConfig cfg;
    cfg.dim = 6;
    cfg.window = 2;
    cfg.epochs = 2;
    cfg.seed = 50;
    auto a = train(corpus, cfg);
    auto b = train(corpus, cfg);
    CHECK(a.model.input_weights == b.model.input_weights);
    CHECK(a.model.output_weights == b.model.output_weights);

    cfg.seed = 51;
    auto c = train(corpus, cfg);
    CHECK(a.model.input_weights != c.model.input_weights);
}

TEST_CASE("softmax training separates two cliques and lowers the mean loss") {
    auto corpus = two_clique_corpus(7);
    TrainConfig cfg;
    cfg.dim = 8;
    cfg.window = 2;
    cfg.epochs = 8;
    cfg.initial_learning_rate = 0.1;
    cfg.final_learning_rate = 0.01;
    cfg.seed = 60;
    auto result = train(corpus, cfg);

    REQUIRE(result.epochs.size() == 8);
    CHECK(result.epochs.back().mean_loss < result.epochs.front().mean_loss);
    for (const auto& e : result.epochs) {
        CHECK(std::isfinite(e.mean_loss));
        CHECK(e.learning_rate <= cfg.initial_learning_rate);
        CHECK(e.learning_rate >= cfg.final_learning_rate);
    }

    const auto& m = result.model.input_weights;
    const double intra =
        (mean_cosine(m, 0, 4, 0, 4) + mean_cosine(m, 4, 8, 4, 8)) / 2.0;
    const double inter = mean_cosine(m, 0, 4, 4, 8);
    CHECK(intra > inter);
}

TEST_CASE("negative sampling also separates the cliques") {
    auto corpus = two_clique_corpus(7);
    TrainConfig cfg;
    cfg.dim = 8;
    cfg.window = 2;
    cfg.epochs = 10;
    cfg.initial_learning_rate = 0.1;
    cfg.final_learning_rate = 0.01;
    cfg.objective = Objective::negative_sampling;
    cfg.negative_k = 3;
    cfg.seed = 61;
    auto result = train(corpus, cfg);
    auto again = train(corpus, cfg);
    CHECK(result.model.input_weights == again.model.input_weights);

    const auto& m = result.model.input_weights;
    CHECK(m.allFinite());
    const double intra =
        (mean_cosine(m, 0, 4, 0, 4) + mean_cosine(m, 4, 8, 4, 8)) / 2.0;
    const double inter = mean_cosine(m, 0, 4, 4, 8);
    CHECK(intra > inter);
}

TEST_CASE("degenerate corpora are config errors") {
    LabeledCorpus empty;
    TrainConfig cfg;
    CHECK_THROWS_AS(train(empty, cfg), ConfigError);

    LabeledCorpus lone;
    lone.vocabulary = labels(2);
    lone.sequences = {{0}};
    lone.condition_of = {"T1"};
    CHECK_THROWS_AS(train(lone, cfg), ConfigError);
}

TEST_CASE("node vectors mirror the input weight rows") {
    auto model = random_model(5, 3, 90);
    auto vecs = node_vectors(model);
    CHECK(vecs.labels == model.labels);
    CHECK(vecs.rows == model.input_weights);
    CHECK(vecs.index_of("n3") == 3);
    CHECK(vecs.index_of("zz") == -1);
}
