#ifndef TLCN_EXPORT_HPP
#define TLCN_EXPORT_HPP

#include "tlcn/graph.hpp"

#include <iosfwd>

namespace tlcn {

enum class ExportFormat : std::uint8_t { dot, graphml, edge_csv };

struct ExportOptions {
    ExportFormat format = ExportFormat::edge_csv;
    bool include_labels = true;
    bool include_out_degree = true;
};

// Nodes and edges are emitted in lexicographic key order in every format.
void export_dot(const Tlcn& net, const ExportOptions& options, std::ostream& out);
void export_graphml(const Tlcn& net, const ExportOptions& options, std::ostream& out);

// Edge rows `src_key,dst_key,weight` plus a companion node table
// `node_key,occurrences,out_degree,label`.
void export_edge_csv(const Tlcn& net, const ExportOptions& options, std::ostream& edges,
                     std::ostream& nodes);

// Rebuilds a graph from edge CSV (keys stay opaque strings). The node table
// stream is optional; without it nodes are inferred from edge endpoints with
// occurrence count 1.
Tlcn import_edge_csv(std::istream& edges, std::istream* nodes = nullptr);

const char* to_string(ExportFormat format);

} // namespace tlcn

#endif
