#ifndef TLCN_METRICS_HPP
#define TLCN_METRICS_HPP

#include "tlcn/graph.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tlcn {

struct ClusteringResult {
    std::optional<double> global; // mean of local coefficients; absent on empty graph
    std::vector<double> local;    // 0 whenever degree < 2
};

struct PathMetrics {
    std::optional<double> spl;          // mean finite shortest-path length
    std::optional<std::size_t> diameter; // max finite distance
};

struct PowerlawFit {
    double lambda_exp = 0;
    double r_squared = 0;
};

struct DegreePoint {
    std::size_t k = 0;
    double p = 0;
};

// Maximum degree over n-1, on the undirected projection.
// Throws ValidationError when n < 2.
double mdr(const UndirectedGraph& g);

// Local c(i) = 2 * links(N(i)) / (k_i (k_i - 1)), 0 for k_i < 2; global is
// the mean over all nodes.
ClusteringResult clustering(const UndirectedGraph& g);

// phi(k) = 2 E_{>k} / (N_{>k} (N_{>k} - 1)) for every k with N_{>k} >= 2,
// in increasing k order.
std::vector<std::pair<std::size_t, double>> rich_club(const UndirectedGraph& g);

// P(k) over all nodes, k = 0 included; probabilities sum to 1.
// Throws ValidationError on an empty graph.
std::vector<DegreePoint> degree_distribution(const UndirectedGraph& g);

// Least squares of log P(k) on log k over points with k >= k_min, P(k) > 0.
// Absent with fewer than three qualifying points.
std::optional<PowerlawFit> fit_powerlaw(std::span<const DegreePoint> dist,
                                        std::size_t k_min = 1);

// Pearson correlation of endpoint degrees over undirected edges; absent when
// fewer than two edges or the endpoint-degree variance vanishes.
std::optional<double> assortativity(const UndirectedGraph& g);

// BFS from every node; mean and max over ordered pairs at finite distance.
// Both absent when no connected pair exists.
PathMetrics path_metrics(const UndirectedGraph& g);

// Normalized degree-share entropy: with I_i = k_i / sum_j k_j,
// (-sum_i I_i ln I_i) / ln n. 1 on degree-uniform graphs. Absent when the
// graph has no edges or fewer than two nodes.
std::optional<double> structure_entropy(const UndirectedGraph& g);

// Brandes betweenness on the directed graph, unweighted, unnormalized.
std::vector<double> betweenness(const DirectedGraph& g);

// Uniform random graph with n nodes and exactly m distinct edges.
UndirectedGraph gnm_random_graph(std::size_t n, std::size_t m, std::mt19937_64& rng);

// sigma = (C/C_r) / (SPL/SPL_r) against G(n, m) references with the same
// node and edge count, averaged over `realizations` samples. Samples with
// zero clustering or no finite path are redrawn a bounded number of times;
// absent when retries run out. Throws ValidationError when realizations = 0
// or the input graph has no finite shortest path.
std::optional<double> small_world_coefficient(const UndirectedGraph& g,
                                              unsigned realizations,
                                              std::uint64_t seed);

struct MetricsOptions {
    bool with_betweenness = true;
    unsigned small_world_realizations = 0; // 0 skips the small-world estimate
    std::uint64_t seed = 0;
    std::size_t powerlaw_kmin = 1;
};

struct MetricsReport {
    std::size_t node_count = 0;
    std::size_t edge_count = 0;            // directed arcs
    std::size_t edge_count_undirected = 0; // projection edges
    std::optional<double> mean_degree;     // 2m/n on the projection
    std::optional<double> mdr;
    std::optional<double> clustering_global;
    std::vector<double> clustering_local;
    std::vector<std::pair<std::size_t, double>> rich_club;
    std::vector<DegreePoint> degree_dist;
    std::optional<PowerlawFit> powerlaw;
    std::optional<double> assortativity;
    std::optional<double> spl;
    std::optional<std::size_t> diameter;
    std::optional<double> entropy;
    std::vector<double> betweenness; // empty when skipped
    std::optional<double> small_world;
};

MetricsReport compute_metrics(const Tlcn& net, const MetricsOptions& options = {});

// Scalar field lookup used by characteristic series and the CSV row.
// Supported names: node_count, edge_count, edge_count_undirected,
// mean_degree, mdr, clustering, assortativity, spl, diameter, entropy,
// lambda_exp, r_squared.
bool is_scalar_metric(const std::string& name);
std::optional<double> scalar_metric(const MetricsReport& report, const std::string& name);
std::span<const char* const> scalar_metric_names();

std::string metrics_csv_header();
std::string metrics_csv_row(const MetricsReport& report);
void write_metrics_text(const MetricsReport& report, std::ostream& out);
void write_curve_csv(std::span<const std::pair<std::size_t, double>> curve,
                     const char* key_name, const char* value_name, std::ostream& out);

struct SweepRow {
    Ticks delta_w = 0;
    MetricsReport report;
};

// One report per window over the same filtered trace. Betweenness and the
// small-world estimate are skipped regardless of options; everything else
// follows them.
std::vector<SweepRow> sweep_delta_w(const Trace& trace, std::span<const Ticks> windows,
                                    KeyMode mode, const NodeFilter& node_filter,
                                    EdgeFilter edge_filter,
                                    const MetricsOptions& options = {});

// Pearson correlation; absent on degenerate variance.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

} // namespace tlcn

#endif
