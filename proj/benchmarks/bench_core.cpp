// Microbenchmarks for the hot paths: context-set construction, walk
// generation, SGD stepping, similarity construction, and both edge selectors.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <string>
#include <vector>

#include <nodenet/analysis.hpp>
#include <nodenet/backbone.hpp>
#include <nodenet/contexts.hpp>
#include <nodenet/rng.hpp>
#include <nodenet/similarity.hpp>
#include <nodenet/skipgram.hpp>
#include <nodenet/synthetic.hpp>
#include <nodenet/walks.hpp>

namespace {

using namespace nodenet;

NodeVectors random_vectors(int n, int dim, std::uint64_t seed) {
    Rng rng(seed);
    NodeVectors vecs;
    vecs.rows = RowMat(n, dim);
    vecs.labels.reserve(n);
    for (int i = 0; i < n; ++i) {
        vecs.labels.push_back("n" + std::to_string(i));
        for (int k = 0; k < dim; ++k) vecs.rows(i, k) = rng.uniform(-1.0, 1.0);
    }
    return vecs;
}

NodalDataset canonical_dataset(int n) {
    return generate_synthetic(SyntheticSpec::table1(n, 7));
}

void BM_BuildContextSets(benchmark::State& state) {
    NodalDataset data = canonical_dataset(static_cast<int>(state.range(0)));
    ToleranceRule tol{0.1, 1.0};
    for (auto _ : state) {
        ContextSets contexts = build_context_sets(data, tol);
        benchmark::DoNotOptimize(contexts);
    }
}
BENCHMARK(BM_BuildContextSets)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_GenerateCorpus(benchmark::State& state) {
    NodalDataset data = canonical_dataset(500);
    ContextSets contexts = build_context_sets(data, ToleranceRule{0.1, 1.0});
    WalkConfig wc;
    wc.length = 10;
    wc.walks_per_start = static_cast<int>(state.range(0));
    wc.seed = 7;
    for (auto _ : state) {
        Corpus corpus = generate_corpus(contexts, wc);
        benchmark::DoNotOptimize(corpus);
    }
    state.SetItemsProcessed(state.iterations() * 500 * 6 * state.range(0));
}
BENCHMARK(BM_GenerateCorpus)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_SgdStepSoftmax(benchmark::State& state) {
    const int vocab = static_cast<int>(state.range(0));
    std::vector<std::string> labels;
    for (int i = 0; i < vocab; ++i) labels.push_back("n" + std::to_string(i));
    EmbeddingModel model = init_model(labels, 64, 11);
    Rng rng(12);
    for (auto _ : state) {
        int center = static_cast<int>(rng.index(vocab));
        int context = static_cast<int>(rng.index(vocab));
        sgd_step(model, TrainingPair{center, context}, 0.025);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SgdStepSoftmax)->Arg(100)->Arg(500)->Arg(2000);

void BM_SimilarityFromVectors(benchmark::State& state) {
    NodeVectors vecs = random_vectors(static_cast<int>(state.range(0)), 64, 3);
    for (auto _ : state) {
        SimilarityView sim = SimilarityView::from_vectors(vecs);
        benchmark::DoNotOptimize(sim);
    }
}
BENCHMARK(BM_SimilarityFromVectors)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Gte(benchmark::State& state) {
    SimilarityView sim =
        SimilarityView::from_vectors(random_vectors(static_cast<int>(state.range(0)), 64, 3));
    for (auto _ : state) {
        EdgeList edges = gte(sim, 0.5);
        benchmark::DoNotOptimize(edges);
    }
}
BENCHMARK(BM_Gte)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Rem(benchmark::State& state) {
    SimilarityView sim =
        SimilarityView::from_vectors(random_vectors(static_cast<int>(state.range(0)), 64, 3));
    RemConfig rc;
    for (auto _ : state) {
        RemResult res = rem(sim, rc);
        benchmark::DoNotOptimize(res);
    }
}
BENCHMARK(BM_Rem)->Arg(200)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_PcaProject(benchmark::State& state) {
    NodeVectors vecs = random_vectors(static_cast<int>(state.range(0)), 64, 5);
    for (auto _ : state) {
        Projection2D proj = pca_project(vecs.rows);
        benchmark::DoNotOptimize(proj);
    }
}
BENCHMARK(BM_PcaProject)->Arg(500)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
