#ifndef TLCN_REFERENCE_HPP
#define TLCN_REFERENCE_HPP

#include "tlcn/graph.hpp"
#include "tlcn/metrics.hpp"
#include "tlcn/trace.hpp"

#include <optional>
#include <vector>

// Slow, serial reference implementations. They define correctness for the
// optimized kernels: the builder by the literal quadratic pair rule, the
// metrics by direct enumeration (triangle triples, Floyd-Warshall distances,
// explicit shortest-path listing, endpoint-degree lists). Linked by the test
// and benchmark targets only.
namespace tlcn::reference {

// Checks every ordered record pair (i, j), i < j, against the window rule.
Tlcn build_pairwise(const Trace& trace, Ticks delta_w, KeyMode mode,
                    EdgeFilter edge_filter);

// Scans all unordered node pairs for an arc in either direction.
UndirectedGraph projection_pairscan(const Tlcn& net);

// Counts neighbor pairs that are themselves adjacent, per node.
ClusteringResult clustering_triples(const UndirectedGraph& g);

PathMetrics spl_floyd_warshall(const UndirectedGraph& g);

// Enumerates every shortest path explicitly and credits interior nodes.
std::vector<double> betweenness_path_enumeration(const DirectedGraph& g);

// Pearson correlation over explicit endpoint-degree lists, both orientations
// per edge.
std::optional<double> assortativity_endpoint_lists(const UndirectedGraph& g);

// Induced-subgraph edge count per degree threshold.
std::vector<std::pair<std::size_t, double>> rich_club_bruteforce(const UndirectedGraph& g);

std::vector<DegreePoint> degree_distribution_bruteforce(const UndirectedGraph& g);

} // namespace tlcn::reference

#endif
