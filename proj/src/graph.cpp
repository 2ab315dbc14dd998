#include "tlcn/graph.hpp"

#include <algorithm>
#include <tuple>

namespace tlcn {

FlowKey FlowKey::from_record(const FlowRecord& rec, KeyMode mode) {
    FlowKey k;
    k.si = rec.src_ip;
    k.di = rec.dst_ip;
    if (mode == KeyMode::five_tuple) {
        k.kind = Kind::five_tuple;
        k.sp = rec.src_port;
        k.dp = rec.dst_port;
        k.proto = rec.proto;
    }
    return k;
}

FlowKey FlowKey::opaque(std::string raw) {
    FlowKey k;
    k.kind = Kind::opaque;
    k.si = std::move(raw);
    return k;
}

std::string FlowKey::render() const {
    switch (kind) {
    case Kind::opaque:
        return si;
    case Kind::two_tuple:
        return si + "-" + di;
    case Kind::five_tuple:
        return si + "-" + di + "-" + std::to_string(sp) + "-" + std::to_string(dp) +
               "-" + std::to_string(proto);
    }
    return {};
}

std::size_t FlowKeyHash::operator()(const FlowKey& k) const {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](const void* data, std::size_t len) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            h ^= p[i];
            h *= 1099511628211ULL;
        }
    };
    auto sep = [&mix]() {
        unsigned char z = 0xff;
        mix(&z, 1);
    };
    unsigned char kind = static_cast<unsigned char>(k.kind);
    mix(&kind, 1);
    mix(k.si.data(), k.si.size());
    sep();
    mix(k.di.data(), k.di.size());
    sep();
    mix(&k.sp, sizeof(k.sp));
    mix(&k.dp, sizeof(k.dp));
    mix(&k.proto, sizeof(k.proto));
    return static_cast<std::size_t>(h);
}

bool key_less(const FlowKey& a, const FlowKey& b) {
    std::string ra = a.render(), rb = b.render();
    if (ra != rb) return ra < rb;
    return std::tie(a.kind, a.si, a.di, a.sp, a.dp, a.proto) <
           std::tie(b.kind, b.si, b.di, b.sp, b.dp, b.proto);
}

std::vector<std::uint64_t> Tlcn::out_degrees() const {
    std::vector<std::uint64_t> deg(nodes.size(), 0);
    for (const TlcnEdge& e : edges)
        ++deg[e.src];
    return deg;
}

namespace {

// Builds sorted, deduplicated CSR adjacency from (possibly repeated) pairs.
std::pair<std::vector<std::uint32_t>, std::vector<std::size_t>>
make_csr(std::size_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs) {
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

    std::vector<std::size_t> offsets(n + 1, 0);
    for (const auto& [u, v] : pairs)
        ++offsets[u + 1];
    for (std::size_t i = 0; i < n; ++i)
        offsets[i + 1] += offsets[i];
    std::vector<std::uint32_t> adj(pairs.size());
    std::size_t idx = 0;
    for (const auto& [u, v] : pairs)
        adj[idx++] = v;
    return {std::move(adj), std::move(offsets)};
}

} // namespace

UndirectedGraph UndirectedGraph::from_edges(
    std::size_t n, std::span<const std::pair<std::uint32_t, std::uint32_t>> edges) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> dirs;
    dirs.reserve(edges.size() * 2);
    for (const auto& [u, v] : edges) {
        if (u == v) continue;
        dirs.emplace_back(u, v);
        dirs.emplace_back(v, u);
    }
    UndirectedGraph g;
    g.n = n;
    auto [adj, offsets] = make_csr(n, dirs);
    g.adj = std::move(adj);
    g.offsets = std::move(offsets);
    g.m = g.adj.size() / 2;
    return g;
}

std::vector<std::size_t> UndirectedGraph::degrees() const {
    std::vector<std::size_t> d(n);
    for (std::size_t v = 0; v < n; ++v)
        d[v] = degree(static_cast<std::uint32_t>(v));
    return d;
}

bool UndirectedGraph::has_edge(std::uint32_t u, std::uint32_t v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

DirectedGraph DirectedGraph::from_arcs(
    std::size_t n, std::span<const std::pair<std::uint32_t, std::uint32_t>> arcs) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> list;
    list.reserve(arcs.size());
    for (const auto& [u, v] : arcs)
        if (u != v) list.emplace_back(u, v);
    DirectedGraph g;
    g.n = n;
    auto [adj, offsets] = make_csr(n, list);
    g.out_adj = std::move(adj);
    g.out_offsets = std::move(offsets);
    g.arcs = g.out_adj.size();
    return g;
}

UndirectedGraph undirected_projection(const Tlcn& net) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    pairs.reserve(net.edges.size());
    for (const TlcnEdge& e : net.edges)
        pairs.emplace_back(e.src, e.dst);
    return UndirectedGraph::from_edges(net.node_count(), pairs);
}

DirectedGraph directed_view(const Tlcn& net) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;
    arcs.reserve(net.edges.size());
    for (const TlcnEdge& e : net.edges)
        arcs.emplace_back(e.src, e.dst);
    return DirectedGraph::from_arcs(net.node_count(), arcs);
}

} // namespace tlcn
