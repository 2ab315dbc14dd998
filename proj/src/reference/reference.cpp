#include "tlcn/reference.hpp"
#include "tlcn/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace tlcn::reference {

Tlcn build_pairwise(const Trace& trace, Ticks delta_w, KeyMode mode,
                    EdgeFilter edge_filter) {
    if (delta_w < 1)
        throw ValidationError("delta_w must be at least one microsecond");

    const std::size_t n = trace.size();
    std::vector<std::string> renders(n);
    std::vector<FlowKey> keys(n);
    for (std::size_t i = 0; i < n; ++i) {
        keys[i] = FlowKey::from_record(trace.records[i], mode);
        renders[i] = keys[i].render();
    }

    // Node table in sorted key order, occurrence counts and labels folded in.
    std::map<std::string, std::uint32_t> ids;
    for (std::size_t i = 0; i < n; ++i)
        ids.emplace(renders[i], 0);
    Tlcn net;
    net.meta.delta_w = delta_w;
    net.meta.mode = mode;
    net.meta.edge_filter = edge_filter;
    if (n > 0) {
        net.meta.t_start = trace.records.front().ts;
        net.meta.t_end = trace.records.back().ts;
    }
    for (auto& [render, id] : ids) {
        id = static_cast<std::uint32_t>(net.nodes.size());
        net.nodes.push_back(TlcnNode{FlowKey{}, 0, Label::none});
    }
    for (std::size_t i = 0; i < n; ++i) {
        TlcnNode& node = net.nodes[ids[renders[i]]];
        node.key = keys[i];
        ++node.occurrences;
        if (trace.records[i].label == Label::attack)
            node.label = Label::attack;
        else if (trace.records[i].label == Label::normal && node.label == Label::none)
            node.label = Label::normal;
    }

    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> weights;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (trace.records[j].ts - trace.records[i].ts > delta_w)
                continue;
            if (renders[i] == renders[j])
                continue;
            ++weights[{ids[renders[i]], ids[renders[j]]}];
        }
    for (const auto& [pair, w] : weights)
        net.edges.push_back(TlcnEdge{pair.first, pair.second,
                                     edge_filter == EdgeFilter::we ? w : 1});
    return net;
}

UndirectedGraph projection_pairscan(const Tlcn& net) {
    const std::size_t n = net.node_count();
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    auto has_arc = [&net](std::uint32_t a, std::uint32_t b) {
        for (const TlcnEdge& e : net.edges)
            if (e.src == a && e.dst == b) return true;
        return false;
    };
    for (std::uint32_t u = 0; u < n; ++u)
        for (std::uint32_t v = u + 1; v < n; ++v)
            if (has_arc(u, v) || has_arc(v, u))
                pairs.emplace_back(u, v);
    return UndirectedGraph::from_edges(n, pairs);
}

ClusteringResult clustering_triples(const UndirectedGraph& g) {
    ClusteringResult res;
    res.local.assign(g.n, 0.0);
    if (g.n == 0)
        return res;
    for (std::uint32_t v = 0; v < g.n; ++v) {
        auto nb = g.neighbors(v);
        if (nb.size() < 2) continue;
        std::uint64_t links = 0;
        for (std::size_t a = 0; a < nb.size(); ++a)
            for (std::size_t b = a + 1; b < nb.size(); ++b)
                if (g.has_edge(nb[a], nb[b]))
                    ++links;
        res.local[v] = 2.0 * double(links) / (double(nb.size()) * double(nb.size() - 1));
    }
    double sum = std::accumulate(res.local.begin(), res.local.end(), 0.0);
    res.global = sum / double(g.n);
    return res;
}

PathMetrics spl_floyd_warshall(const UndirectedGraph& g) {
    PathMetrics pm;
    const std::size_t n = g.n;
    if (n < 2)
        return pm;
    constexpr std::int64_t kInf = std::numeric_limits<std::int32_t>::max();
    std::vector<std::vector<std::int64_t>> d(n, std::vector<std::int64_t>(n, kInf));
    for (std::size_t v = 0; v < n; ++v) {
        d[v][v] = 0;
        for (std::uint32_t u : g.neighbors(static_cast<std::uint32_t>(v)))
            d[v][u] = 1;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    std::uint64_t total = 0, pairs = 0, diam = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && d[i][j] < kInf) {
                total += std::uint64_t(d[i][j]);
                ++pairs;
                diam = std::max(diam, std::uint64_t(d[i][j]));
            }
    if (pairs > 0) {
        pm.spl = double(total) / double(pairs);
        pm.diameter = static_cast<std::size_t>(diam);
    }
    return pm;
}

namespace {

// Lists all shortest s->t paths by walking the BFS distance layering.
void enumerate_paths(const DirectedGraph& g, const std::vector<std::int32_t>& dist,
                     std::uint32_t v, std::uint32_t t, std::vector<std::uint32_t>& path,
                     std::vector<std::vector<std::uint32_t>>& out) {
    path.push_back(v);
    if (v == t) {
        out.push_back(path);
    } else {
        for (std::uint32_t u : g.successors(v))
            if (dist[u] == dist[v] + 1 && dist[t] >= dist[u])
                enumerate_paths(g, dist, u, t, path, out);
    }
    path.pop_back();
}

} // namespace

std::vector<double> betweenness_path_enumeration(const DirectedGraph& g) {
    const std::size_t n = g.n;
    std::vector<double> bc(n, 0.0);
    for (std::uint32_t s = 0; s < n; ++s) {
        std::vector<std::int32_t> dist(n, -1);
        dist[s] = 0;
        std::vector<std::uint32_t> queue{s};
        std::size_t head = 0;
        while (head < queue.size()) {
            std::uint32_t v = queue[head++];
            for (std::uint32_t u : g.successors(v))
                if (dist[u] < 0) {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
        }
        for (std::uint32_t t = 0; t < n; ++t) {
            if (t == s || dist[t] <= 0)
                continue;
            std::vector<std::vector<std::uint32_t>> paths;
            std::vector<std::uint32_t> path;
            enumerate_paths(g, dist, s, t, path, paths);
            if (paths.empty())
                continue;
            std::vector<std::uint64_t> through(n, 0);
            for (const auto& p : paths)
                for (std::size_t i = 1; i + 1 < p.size(); ++i)
                    ++through[p[i]];
            for (std::size_t v = 0; v < n; ++v)
                if (through[v] > 0)
                    bc[v] += double(through[v]) / double(paths.size());
        }
    }
    return bc;
}

std::optional<double> assortativity_endpoint_lists(const UndirectedGraph& g) {
    if (g.m < 2)
        return std::nullopt;
    auto deg = g.degrees();
    std::vector<double> x, y;
    for (std::uint32_t v = 0; v < g.n; ++v)
        for (std::uint32_t u : g.neighbors(v))
            if (u > v) {
                x.push_back(double(deg[v]));
                y.push_back(double(deg[u]));
                x.push_back(double(deg[u]));
                y.push_back(double(deg[v]));
            }
    return pearson(x, y);
}

std::vector<std::pair<std::size_t, double>> rich_club_bruteforce(const UndirectedGraph& g) {
    std::vector<std::pair<std::size_t, double>> out;
    if (g.n == 0)
        return out;
    auto deg = g.degrees();
    const std::size_t kmax = *std::max_element(deg.begin(), deg.end());
    for (std::size_t k = 0; k <= kmax; ++k) {
        std::uint64_t nodes_above = 0;
        for (std::size_t d : deg)
            if (d > k) ++nodes_above;
        if (nodes_above < 2)
            continue;
        std::uint64_t edges_above = 0;
        for (std::uint32_t v = 0; v < g.n; ++v)
            for (std::uint32_t u : g.neighbors(v))
                if (u > v && deg[v] > k && deg[u] > k)
                    ++edges_above;
        out.emplace_back(k, 2.0 * double(edges_above) /
                                (double(nodes_above) * double(nodes_above - 1)));
    }
    return out;
}

std::vector<DegreePoint> degree_distribution_bruteforce(const UndirectedGraph& g) {
    std::map<std::size_t, std::uint64_t> hist;
    for (std::uint32_t v = 0; v < g.n; ++v)
        ++hist[g.degree(v)];
    std::vector<DegreePoint> out;
    for (const auto& [k, c] : hist)
        out.push_back({k, double(c) / double(g.n)});
    return out;
}

} // namespace tlcn::reference
