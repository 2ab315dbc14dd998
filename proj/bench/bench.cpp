// Times the OpenMP kernels against the serial reference implementations on
// synthetic inputs and checks that both sides agree.

#include "tlcn/build.hpp"
#include "tlcn/metrics.hpp"
#include "tlcn/reference.hpp"
#include "tlcn/synth.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace tlcn;

namespace {

template <typename F> double time_ms(F&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

void set_threads(int n) {
#ifdef _OPENMP
    omp_set_num_threads(n);
#else
    (void)n;
#endif
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

int g_mismatches = 0;

void row(const char* kernel, const std::string& input, double ref_ms, double one_ms,
         double par_ms, bool equal) {
    std::printf("%-14s %-24s %12.1f %12.1f %12.1f %7.2fx  %s\n", kernel, input.c_str(),
                ref_ms, one_ms, par_ms, par_ms > 0 ? one_ms / par_ms : 0.0,
                equal ? "ok" : "MISMATCH");
    if (!equal)
        ++g_mismatches;
}

bool same_graph(const Tlcn& a, const Tlcn& b) {
    if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count())
        return false;
    for (std::size_t i = 0; i < a.nodes.size(); ++i)
        if (a.nodes[i].key.render() != b.nodes[i].key.render() ||
            a.nodes[i].occurrences != b.nodes[i].occurrences)
            return false;
    for (std::size_t i = 0; i < a.edges.size(); ++i)
        if (a.edges[i].src != b.edges[i].src || a.edges[i].dst != b.edges[i].dst ||
            a.edges[i].weight != b.edges[i].weight)
            return false;
    return true;
}

bool near(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)); }

void bench_builder(int threads) {
    ScenarioConfig cfg;
    cfg.duration = 30.0;
    cfg.background_rate = 300.0;
    cfg.host_pool = 120;
    cfg.zipf_exponent = 1.0;
    cfg.seed = 404;
    Trace trace = generate(cfg);

    Tlcn ref_graph, one_graph, par_graph;
    double ref_ms = time_ms([&] {
        ref_graph =
            reference::build_pairwise(trace, 400'000, KeyMode::two_tuple, EdgeFilter::we);
    });
    set_threads(1);
    double one_ms = time_ms([&] {
        one_graph = build_tlcn(trace, 400'000, KeyMode::two_tuple, NodeFilter::all(),
                               EdgeFilter::we);
    });
    set_threads(threads);
    double par_ms = time_ms([&] {
        par_graph = build_tlcn(trace, 400'000, KeyMode::two_tuple, NodeFilter::all(),
                               EdgeFilter::we);
    });
    row("builder", std::to_string(trace.size()) + " records", ref_ms, one_ms, par_ms,
        same_graph(ref_graph, one_graph) && same_graph(ref_graph, par_graph));
}

void bench_clustering(int threads) {
    std::mt19937_64 rng(405);
    UndirectedGraph g = gnm_random_graph(4000, 48'000, rng);

    ClusteringResult ref, one, par;
    double ref_ms = time_ms([&] { ref = reference::clustering_triples(g); });
    set_threads(1);
    double one_ms = time_ms([&] { one = clustering(g); });
    set_threads(threads);
    double par_ms = time_ms([&] { par = clustering(g); });

    bool equal = near(*ref.global, *one.global) && near(*one.global, *par.global);
    for (std::size_t v = 0; equal && v < g.n; ++v)
        equal = near(ref.local[v], one.local[v]) && one.local[v] == par.local[v];
    row("clustering", "G(4000, 48000)", ref_ms, one_ms, par_ms, equal);
}

void bench_paths(int threads) {
    std::mt19937_64 rng(406);
    UndirectedGraph g = gnm_random_graph(1200, 7200, rng);

    PathMetrics ref, one, par;
    double ref_ms = time_ms([&] { ref = reference::spl_floyd_warshall(g); });
    set_threads(1);
    double one_ms = time_ms([&] { one = path_metrics(g); });
    set_threads(threads);
    double par_ms = time_ms([&] { par = path_metrics(g); });

    bool equal = near(*ref.spl, *one.spl) && *one.spl == *par.spl &&
                 *ref.diameter == *one.diameter && *one.diameter == *par.diameter;
    row("shortest paths", "G(1200, 7200)", ref_ms, one_ms, par_ms, equal);
}

void bench_betweenness(int threads) {
    std::mt19937_64 rng(407);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;
    std::uniform_int_distribution<std::uint32_t> node(0, 349);
    for (int i = 0; i < 2800; ++i) {
        auto u = node(rng), v = node(rng);
        if (u != v)
            arcs.emplace_back(u, v);
    }
    DirectedGraph g = DirectedGraph::from_arcs(350, arcs);

    std::vector<double> ref, one, par;
    double ref_ms = time_ms([&] { ref = reference::betweenness_path_enumeration(g); });
    set_threads(1);
    double one_ms = time_ms([&] { one = betweenness(g); });
    set_threads(threads);
    double par_ms = time_ms([&] { par = betweenness(g); });

    bool equal = true;
    for (std::size_t v = 0; equal && v < g.n; ++v)
        equal = std::abs(ref[v] - one[v]) <= 1e-6 * std::max(1.0, ref[v]) && one[v] == par[v];
    row("betweenness", "350 nodes, 2800 arcs", ref_ms, one_ms, par_ms, equal);
}

} // namespace

int main() {
    const int threads = max_threads();
    std::printf("threads available: %d\n\n", threads);
    std::printf("%-14s %-24s %12s %12s %12s %8s\n", "kernel", "input", "reference/ms",
                "serial/ms", "parallel/ms", "speedup");

    bench_builder(threads);
    bench_clustering(threads);
    bench_paths(threads);
    bench_betweenness(threads);

    if (g_mismatches > 0) {
        std::printf("\n%d kernel(s) disagree with the reference\n", g_mismatches);
        return 1;
    }
    std::printf("\nall kernels match the reference\n");
    return 0;
}
