#ifndef TLCN_GRAPH_HPP
#define TLCN_GRAPH_HPP

#include "tlcn/filter.hpp"
#include "tlcn/trace.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tlcn {

// Identity of a graph node. two_tuple/five_tuple keys are derived from flow
// records; opaque keys carry a preformatted key string (graphs re-read from
// edge CSV files).
struct FlowKey {
    enum class Kind : std::uint8_t { two_tuple, five_tuple, opaque };

    Kind kind = Kind::two_tuple;
    std::string si;
    std::string di;
    std::uint16_t sp = 0;
    std::uint16_t dp = 0;
    std::uint8_t proto = 0;

    static FlowKey from_record(const FlowRecord& rec, KeyMode mode);
    static FlowKey opaque(std::string raw);

    // si-di for 2-tuple, si-di-sp-dp-p for 5-tuple, the raw string for opaque.
    std::string render() const;

    bool operator==(const FlowKey&) const = default;
};

struct FlowKeyHash {
    std::size_t operator()(const FlowKey& k) const;
};

// Compares by rendered key, with the raw fields as tiebreak. Node order in a
// finished graph follows this.
bool key_less(const FlowKey& a, const FlowKey& b);

struct TlcnNode {
    FlowKey key;
    std::uint64_t occurrences = 0;
    Label label = Label::none;
};

struct TlcnEdge {
    std::uint32_t src = 0;
    std::uint32_t dst = 0;
    std::uint64_t weight = 1;
};

struct TlcnMeta {
    Ticks delta_w = 0;
    KeyMode mode = KeyMode::two_tuple;
    NodeFilter node_filter;
    EdgeFilter edge_filter = EdgeFilter::we;
    Ticks t_start = 0;
    Ticks t_end = 0;
};

// Directed flow-interaction graph. Nodes are sorted by rendered key and
// edges by (src, dst); a finished graph is immutable and safe to share.
struct Tlcn {
    std::vector<TlcnNode> nodes;
    std::vector<TlcnEdge> edges;
    TlcnMeta meta;

    std::size_t node_count() const { return nodes.size(); }
    std::size_t edge_count() const { return edges.size(); }

    std::vector<std::uint64_t> out_degrees() const;
};

// Simple undirected graph in CSR form; neighbor lists are sorted.
struct UndirectedGraph {
    std::size_t n = 0;
    std::size_t m = 0; // undirected edge count
    std::vector<std::uint32_t> adj;
    std::vector<std::size_t> offsets; // n + 1

    static UndirectedGraph from_edges(
        std::size_t n, std::span<const std::pair<std::uint32_t, std::uint32_t>> edges);

    std::span<const std::uint32_t> neighbors(std::uint32_t v) const {
        return {adj.data() + offsets[v], adj.data() + offsets[v + 1]};
    }
    std::size_t degree(std::uint32_t v) const { return offsets[v + 1] - offsets[v]; }
    std::vector<std::size_t> degrees() const;
    bool has_edge(std::uint32_t u, std::uint32_t v) const;
};

// Directed graph (deduplicated arcs, no self-loops) in CSR form.
struct DirectedGraph {
    std::size_t n = 0;
    std::size_t arcs = 0;
    std::vector<std::uint32_t> out_adj;
    std::vector<std::size_t> out_offsets;

    static DirectedGraph from_arcs(
        std::size_t n, std::span<const std::pair<std::uint32_t, std::uint32_t>> arcs);

    std::span<const std::uint32_t> successors(std::uint32_t v) const {
        return {out_adj.data() + out_offsets[v], out_adj.data() + out_offsets[v + 1]};
    }
};

// Merges u->v and v->u into one undirected edge {u,v}; weights are dropped.
UndirectedGraph undirected_projection(const Tlcn& net);

DirectedGraph directed_view(const Tlcn& net);

} // namespace tlcn

#endif
