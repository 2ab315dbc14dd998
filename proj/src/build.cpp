#include "tlcn/build.hpp"
#include "tlcn/error.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tlcn {

namespace {

bool is_sorted_by_ts(const Trace& trace) {
    return std::is_sorted(trace.records.begin(), trace.records.end(),
                          [](const FlowRecord& a, const FlowRecord& b) { return a.ts < b.ts; });
}

bool record_passes(const FlowRecord& r, const NodeFilter& f) {
    switch (f.kind) {
    case NodeFilter::Kind::all:
        return true;
    case NodeFilter::Kind::protocol:
        return r.proto == f.proto_value;
    case NodeFilter::Kind::port:
        return std::binary_search(f.ports.begin(), f.ports.end(), r.src_port) ||
               std::binary_search(f.ports.begin(), f.ports.end(), r.dst_port);
    case NodeFilter::Kind::flow_type:
        // Stateful handshake detection is an extension point; the predicate
        // currently admits TCP records.
        return !f.tcp_handshake_only || r.proto == kProtoTcp;
    case NodeFilter::Kind::min_frequency:
        return true; // handled by the frequency pass below
    }
    return true;
}

} // namespace

Trace apply_node_filter(const Trace& trace, const NodeFilter& filter, KeyMode mode) {
    Trace out;
    out.epoch = trace.epoch;
    if (filter.kind == NodeFilter::Kind::min_frequency) {
        std::unordered_map<FlowKey, std::uint64_t, FlowKeyHash> counts;
        counts.reserve(trace.size());
        for (const FlowRecord& r : trace.records)
            ++counts[FlowKey::from_record(r, mode)];
        for (const FlowRecord& r : trace.records)
            if (counts[FlowKey::from_record(r, mode)] >= filter.min_count)
                out.records.push_back(r);
        return out;
    }
    for (const FlowRecord& r : trace.records)
        if (record_passes(r, filter))
            out.records.push_back(r);
    return out;
}

Tlcn build_tlcn(const Trace& trace, Ticks delta_w, KeyMode mode,
                const NodeFilter& node_filter, EdgeFilter edge_filter) {
    if (delta_w < 1)
        throw ValidationError("delta_w must be at least one microsecond");
    if (!is_sorted_by_ts(trace))
        throw ValidationError("build_tlcn requires a time-sorted trace");

    Tlcn net;
    net.meta.delta_w = delta_w;
    net.meta.mode = mode;
    net.meta.node_filter = node_filter;
    net.meta.edge_filter = edge_filter;
    if (!trace.empty()) {
        net.meta.t_start = trace.records.front().ts;
        net.meta.t_end = trace.records.back().ts;
    }

    Trace filtered = apply_node_filter(trace, node_filter, mode);
    const std::size_t n = filtered.size();

    // Assign node ids by first occurrence, count occurrences, fold labels.
    std::unordered_map<FlowKey, std::uint32_t, FlowKeyHash> ids;
    ids.reserve(n);
    std::vector<std::uint32_t> rec_node(n);
    std::vector<Ticks> ts(n);
    for (std::size_t i = 0; i < n; ++i) {
        const FlowRecord& r = filtered.records[i];
        ts[i] = r.ts;
        FlowKey key = FlowKey::from_record(r, mode);
        auto [it, inserted] = ids.emplace(std::move(key), static_cast<std::uint32_t>(net.nodes.size()));
        if (inserted)
            net.nodes.push_back(TlcnNode{it->first, 0, Label::none});
        TlcnNode& node = net.nodes[it->second];
        ++node.occurrences;
        if (r.label == Label::attack)
            node.label = Label::attack;
        else if (r.label == Label::normal && node.label == Label::none)
            node.label = Label::normal;
        rec_node[i] = it->second;
    }

    // Pair expansion over the sliding window. Each thread scans a contiguous
    // block of source indices with its own advancing window end, emits packed
    // (src, dst) keys, and aggregates them by sorting; the sorted runs are
    // then merged with summed counts, which keeps the result independent of
    // the thread count.
    using Run = std::vector<std::pair<std::uint64_t, std::uint64_t>>;
    int nthreads = 1;
#ifdef _OPENMP
    nthreads = omp_get_max_threads();
#endif
    std::vector<Run> runs(nthreads);

#ifdef _OPENMP
#pragma omp parallel num_threads(nthreads)
#endif
    {
        int tid = 0;
#ifdef _OPENMP
        tid = omp_get_thread_num();
#endif
        std::vector<std::uint64_t> local;
        std::size_t window_end = 0;
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
        for (std::ptrdiff_t si = 0; si < static_cast<std::ptrdiff_t>(n); ++si) {
            const std::size_t i = static_cast<std::size_t>(si);
            const Ticks limit = ts[i] + delta_w;
            if (window_end < i + 1)
                window_end = i + 1;
            while (window_end < n && ts[window_end] <= limit)
                ++window_end;
            const std::uint32_t src = rec_node[i];
            for (std::size_t j = i + 1; j < window_end; ++j) {
                const std::uint32_t dst = rec_node[j];
                if (dst == src) continue;
                local.push_back((std::uint64_t(src) << 32) | dst);
            }
        }
        std::sort(local.begin(), local.end());
        Run& run = runs[tid];
        for (std::size_t i = 0; i < local.size();) {
            std::size_t j = i;
            while (j < local.size() && local[j] == local[i])
                ++j;
            run.emplace_back(local[i], j - i);
            i = j;
        }
    }

    Run merged = std::move(runs[0]);
    for (int t = 1; t < nthreads; ++t) {
        const Run& other = runs[t];
        if (other.empty())
            continue;
        Run combined;
        combined.reserve(merged.size() + other.size());
        std::size_t a = 0, b = 0;
        while (a < merged.size() || b < other.size()) {
            if (b == other.size() || (a < merged.size() && merged[a].first < other[b].first))
                combined.push_back(merged[a++]);
            else if (a == merged.size() || other[b].first < merged[a].first)
                combined.push_back(other[b++]);
            else {
                combined.emplace_back(merged[a].first, merged[a].second + other[b].second);
                ++a;
                ++b;
            }
        }
        merged = std::move(combined);
    }

    // Canonical order: nodes sorted by rendered key, edges by (src, dst).
    std::vector<std::uint32_t> perm(net.nodes.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&net](std::uint32_t a, std::uint32_t b) {
        return key_less(net.nodes[a].key, net.nodes[b].key);
    });
    std::vector<std::uint32_t> new_id(net.nodes.size());
    for (std::uint32_t rank = 0; rank < perm.size(); ++rank)
        new_id[perm[rank]] = rank;
    std::vector<TlcnNode> sorted_nodes;
    sorted_nodes.reserve(net.nodes.size());
    for (std::uint32_t old : perm)
        sorted_nodes.push_back(std::move(net.nodes[old]));
    net.nodes = std::move(sorted_nodes);

    net.edges.reserve(merged.size());
    for (const auto& [key, w] : merged) {
        TlcnEdge e;
        e.src = new_id[static_cast<std::uint32_t>(key >> 32)];
        e.dst = new_id[static_cast<std::uint32_t>(key & 0xffffffffu)];
        e.weight = edge_filter == EdgeFilter::we ? w : 1;
        net.edges.push_back(e);
    }
    std::sort(net.edges.begin(), net.edges.end(), [](const TlcnEdge& a, const TlcnEdge& b) {
        return a.src != b.src ? a.src < b.src : a.dst < b.dst;
    });
    return net;
}

std::vector<Trace> sample_intervals(const Trace& trace, Ticks interval) {
    if (interval < 1)
        throw ValidationError("sampling interval must be at least one microsecond");
    if (trace.empty())
        return {};
    const Ticks t0 = trace.records.front().ts;
    const Ticks span = trace.records.back().ts - t0;
    const std::size_t count = static_cast<std::size_t>(span / interval) + 1;
    std::vector<Trace> out(count);
    for (Trace& t : out)
        t.epoch = trace.epoch;
    for (const FlowRecord& r : trace.records)
        out[static_cast<std::size_t>((r.ts - t0) / interval)].records.push_back(r);
    return out;
}

} // namespace tlcn
