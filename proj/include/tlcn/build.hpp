#ifndef TLCN_BUILD_HPP
#define TLCN_BUILD_HPP

#include "tlcn/filter.hpp"
#include "tlcn/graph.hpp"
#include "tlcn/trace.hpp"

#include <vector>

namespace tlcn {

// Keeps the subsequence of records admitted by the filter. min_frequency
// counts occurrences of a record's flow key under `mode` over the whole
// trace. May return an empty trace.
Trace apply_node_filter(const Trace& trace, const NodeFilter& filter,
                        KeyMode mode = KeyMode::two_tuple);

// Builds the flow-interaction graph: after node filtering, every ordered
// record pair (i, j) with i earlier in sorted order, distinct keys and
// ts_j within [ts_i, ts_i + delta_w] contributes the edge key_i -> key_j.
// WE weights count such pairs; UWE stores presence. Self-loops are never
// emitted; isolated nodes are retained. The pair expansion runs as a
// two-pointer sliding window, parallelized over source records with a
// deterministic merge.
// Throws ValidationError when delta_w < 1 tick or the trace is unsorted.
Tlcn build_tlcn(const Trace& trace, Ticks delta_w, KeyMode mode,
                const NodeFilter& node_filter, EdgeFilter edge_filter);

// Splits [min ts, max ts] into consecutive half-open windows of the given
// length, relative to min ts. Empty windows yield empty traces so indices
// stay aligned with wall time. An empty trace yields an empty sequence.
// Throws ValidationError when interval < 1 tick.
std::vector<Trace> sample_intervals(const Trace& trace, Ticks interval);

} // namespace tlcn

#endif
