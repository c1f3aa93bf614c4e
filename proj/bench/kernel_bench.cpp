// Serial vs OpenMP kernels on a synthetic graph and on Cora.

#include "custard/propagation.hpp"

#include <benchmark/benchmark.h>

#include <filesystem>
#include <random>

using namespace custard;

namespace {

// Ring plus random chords: connected, average degree about 2 + 2 * chords.
Graph synthetic(NodeId n, int chords) {
    GraphBuilder b(n);
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<NodeId> pick(0, n - 1);
    for (NodeId v = 0; v < n; ++v) {
        b.add_edge(v, (v + 1) % n);
        for (int c = 0; c < chords; ++c) {
            const NodeId u = pick(rng);
            if (u != v)
                b.add_edge(v, u);
        }
    }
    return b.build();
}

const Graph &graph_for(int which) {
    static const Graph big = synthetic(200000, 4);
    static const Graph cora =
        load_graph(std::filesystem::path(CUSTARD_DATA_DIR "/cora/cora.edges"),
                   std::filesystem::path(CUSTARD_DATA_DIR "/cora/cora.labels"))
            .graph;
    return which == 0 ? big : cora;
}

void BM_spmv(benchmark::State &state) {
    const Graph &g = graph_for(static_cast<int>(state.range(0)));
    const auto backend = static_cast<Backend>(state.range(1));
    const TransitionMatrix t = symmetric_normalize(g);
    std::vector<double> x(g.num_nodes(), 1.0 / g.num_nodes()), y(g.num_nodes());
    for (auto _ : state) {
        kernels::spmv(backend, t, x, y);
        benchmark::DoNotOptimize(y.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * t.nonzeros()));
    state.SetLabel(std::string(state.range(0) == 0 ? "synthetic " : "cora ") +
                   std::string(to_string(backend)));
}

void BM_propagate(benchmark::State &state) {
    const Graph &g = graph_for(static_cast<int>(state.range(0)));
    PropagationConfig cfg;
    cfg.backend = static_cast<Backend>(state.range(1));
    const TransitionMatrix t = symmetric_normalize(g);
    const std::vector<NodeId> seeds{0, 10, 20, 30};
    const std::vector<NodeId> negatives{5, 15, 25};
    for (auto _ : state) {
        auto p = custard::custard(t, seeds, negatives, cfg);
        benchmark::DoNotOptimize(p.p.data());
    }
    state.SetLabel(std::string(state.range(0) == 0 ? "synthetic " : "cora ") +
                   std::string(to_string(cfg.backend)));
}

} // namespace

BENCHMARK(BM_spmv)->ArgsProduct({{0, 1}, {0, 1}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_propagate)->ArgsProduct({{0, 1}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
