#ifndef TLCN_TESTS_ENUMERATE_HPP
#define TLCN_TESTS_ENUMERATE_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <unordered_set>
#include <vector>

// Isomorph-free enumeration of simple undirected graphs on up to 8 vertices.
// Graphs are bitmasks over vertex pairs; one canonical representative per
// isomorphism class is produced by breadth-first edge augmentation, with a
// canonical form computed as the minimum relabeling among permutations that
// respect iterated degree-refinement colors.
namespace tlcn::testsupport {

inline int pair_bit(int n, int u, int v) {
    if (u > v) std::swap(u, v);
    int idx = 0;
    for (int a = 0; a < u; ++a)
        idx += n - a - 1;
    return idx + (v - u - 1);
}

inline std::vector<std::pair<int, int>> mask_edges(std::uint32_t mask, int n) {
    std::vector<std::pair<int, int>> edges;
    int bit = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v, ++bit)
            if (mask & (1u << bit))
                edges.emplace_back(u, v);
    return edges;
}

// Color refinement: start from degrees, repeatedly rank (color, sorted
// neighbor colors) signatures until stable. Ranks are isomorphism-invariant.
inline std::vector<int> refine_colors(std::uint32_t mask, int n) {
    auto edges = mask_edges(mask, n);
    std::vector<std::vector<int>> adj(n);
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<int> color(n);
    for (int v = 0; v < n; ++v)
        color[v] = static_cast<int>(adj[v].size());
    for (int round = 0; round < n; ++round) {
        std::map<std::vector<int>, int> rank;
        std::vector<std::vector<int>> sig(n);
        for (int v = 0; v < n; ++v) {
            sig[v].push_back(color[v]);
            std::vector<int> nb;
            for (int u : adj[v])
                nb.push_back(color[u]);
            std::sort(nb.begin(), nb.end());
            sig[v].insert(sig[v].end(), nb.begin(), nb.end());
            rank.emplace(sig[v], 0);
        }
        int next = 0;
        for (auto& [s, r] : rank)
            r = next++;
        std::vector<int> fresh(n);
        for (int v = 0; v < n; ++v)
            fresh[v] = rank[sig[v]];
        if (fresh == color)
            break;
        color = std::move(fresh);
    }
    return color;
}

inline std::uint32_t canonical_form(std::uint32_t mask, int n) {
    auto color = refine_colors(mask, n);
    // Vertices grouped by color; permutations shuffle within a group only.
    std::vector<int> order(n);
    for (int v = 0; v < n; ++v)
        order[v] = v;
    std::sort(order.begin(), order.end(), [&color](int a, int b) {
        return color[a] != color[b] ? color[a] < color[b] : a < b;
    });
    std::vector<std::pair<int, int>> cells; // [begin, end) runs of equal color
    for (int i = 0; i < n;) {
        int j = i;
        while (j < n && color[order[j]] == color[order[i]])
            ++j;
        cells.emplace_back(i, j);
        i = j;
    }
    auto edges = mask_edges(mask, n);
    std::array<int, 8> pos{};
    std::uint32_t best = 0xffffffffu;
    while (true) {
        for (int i = 0; i < n; ++i)
            pos[order[i]] = i;
        std::uint32_t m2 = 0;
        for (auto [u, v] : edges)
            m2 |= 1u << pair_bit(n, pos[u], pos[v]);
        best = std::min(best, m2);

        // odometer over per-cell permutations
        int cell = static_cast<int>(cells.size()) - 1;
        while (cell >= 0) {
            auto [b, e] = cells[cell];
            if (std::next_permutation(order.begin() + b, order.begin() + e))
                break;
            --cell;
        }
        if (cell < 0)
            break;
    }
    return best;
}

// All isomorphism classes on exactly n vertices, as canonical masks.
inline std::vector<std::uint32_t> enumerate_graph_classes(int n) {
    const int bits = n * (n - 1) / 2;
    std::unordered_set<std::uint32_t> current{canonical_form(0, n)};
    std::vector<std::uint32_t> all(current.begin(), current.end());
    for (int m = 0; m < bits; ++m) {
        std::unordered_set<std::uint32_t> next;
        for (std::uint32_t rep : current)
            for (int b = 0; b < bits; ++b)
                if (!(rep & (1u << b)))
                    next.insert(canonical_form(rep | (1u << b), n));
        all.insert(all.end(), next.begin(), next.end());
        current = std::move(next);
    }
    return all;
}

} // namespace tlcn::testsupport

#endif
