#include "tlcn/export.hpp"
#include "tlcn/error.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>

namespace tlcn {

namespace {

std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

const char* label_text(Label l) {
    switch (l) {
    case Label::normal: return "normal";
    case Label::attack: return "attack";
    case Label::none: return "";
    }
    return "";
}

} // namespace

void export_dot(const Tlcn& net, const ExportOptions& options, std::ostream& out) {
    out << "digraph tlcn {\n";
    auto deg = net.out_degrees();
    for (std::size_t v = 0; v < net.nodes.size(); ++v) {
        out << "  " << dot_quote(net.nodes[v].key.render());
        std::string attrs;
        if (options.include_out_degree)
            attrs += "out_degree=" + std::to_string(deg[v]);
        if (options.include_labels && net.nodes[v].label != Label::none) {
            if (!attrs.empty()) attrs += ", ";
            attrs += std::string("label=\"") + label_text(net.nodes[v].label) + "\"";
        }
        if (!attrs.empty())
            out << " [" << attrs << "]";
        out << ";\n";
    }
    for (const TlcnEdge& e : net.edges)
        out << "  " << dot_quote(net.nodes[e.src].key.render()) << " -> "
            << dot_quote(net.nodes[e.dst].key.render()) << " [weight=" << e.weight << "];\n";
    out << "}\n";
}

void export_graphml(const Tlcn& net, const ExportOptions& options, std::ostream& out) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
    if (options.include_out_degree)
        out << "  <key id=\"d0\" for=\"node\" attr.name=\"out_degree\" attr.type=\"long\"/>\n";
    if (options.include_labels)
        out << "  <key id=\"d1\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n";
    out << "  <key id=\"d2\" for=\"edge\" attr.name=\"weight\" attr.type=\"long\"/>\n";
    out << "  <graph id=\"tlcn\" edgedefault=\"directed\">\n";
    auto deg = net.out_degrees();
    for (std::size_t v = 0; v < net.nodes.size(); ++v) {
        out << "    <node id=" << '"' << xml_escape(net.nodes[v].key.render()) << '"' << ">";
        if (options.include_out_degree)
            out << "<data key=\"d0\">" << deg[v] << "</data>";
        if (options.include_labels && net.nodes[v].label != Label::none)
            out << "<data key=\"d1\">" << label_text(net.nodes[v].label) << "</data>";
        out << "</node>\n";
    }
    for (const TlcnEdge& e : net.edges) {
        out << "    <edge source=\"" << xml_escape(net.nodes[e.src].key.render())
            << "\" target=\"" << xml_escape(net.nodes[e.dst].key.render()) << "\">"
            << "<data key=\"d2\">" << e.weight << "</data></edge>\n";
    }
    out << "  </graph>\n</graphml>\n";
}

void export_edge_csv(const Tlcn& net, const ExportOptions& options, std::ostream& edges,
                     std::ostream& nodes) {
    edges << "src_key,dst_key,weight\n";
    for (const TlcnEdge& e : net.edges)
        edges << net.nodes[e.src].key.render() << ',' << net.nodes[e.dst].key.render() << ','
              << e.weight << '\n';
    auto deg = net.out_degrees();
    nodes << "node_key,occurrences,out_degree,label\n";
    for (std::size_t v = 0; v < net.nodes.size(); ++v) {
        nodes << net.nodes[v].key.render() << ',' << net.nodes[v].occurrences << ',' << deg[v]
              << ',';
        if (options.include_labels)
            nodes << label_text(net.nodes[v].label);
        nodes << '\n';
    }
}

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::uint64_t parse_u64(const std::string& s, std::size_t line_no, const char* what) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw ParseError("edge csv line " + std::to_string(line_no) + ": invalid " + what +
                         " '" + s + "'");
    return v;
}

} // namespace

Tlcn import_edge_csv(std::istream& edges, std::istream* nodes) {
    std::string line;
    if (!std::getline(edges, line))
        throw ParseError("empty edge csv");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "src_key,dst_key,weight")
        throw ParseError("unrecognized edge csv header '" + line + "'");

    struct NodeInfo {
        std::uint64_t occurrences = 1;
        Label label = Label::none;
    };
    std::map<std::string, NodeInfo> node_map;
    std::vector<std::pair<std::pair<std::string, std::string>, std::uint64_t>> edge_rows;

    std::size_t line_no = 1;
    while (std::getline(edges, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto f = split(line);
        if (f.size() != 3)
            throw ParseError("edge csv line " + std::to_string(line_no) +
                             ": expected 3 fields");
        if (f[0].empty() || f[1].empty())
            throw ParseError("edge csv line " + std::to_string(line_no) + ": empty key");
        std::uint64_t w = parse_u64(f[2], line_no, "weight");
        if (w == 0)
            throw ValidationError("edge csv line " + std::to_string(line_no) +
                                  ": weight must be positive");
        node_map.try_emplace(f[0]);
        node_map.try_emplace(f[1]);
        edge_rows.push_back({{f[0], f[1]}, w});
    }

    if (nodes != nullptr) {
        if (!std::getline(*nodes, line))
            throw ParseError("empty node csv");
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line != "node_key,occurrences,out_degree,label")
            throw ParseError("unrecognized node csv header '" + line + "'");
        std::size_t nline = 1;
        while (std::getline(*nodes, line)) {
            ++nline;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            auto f = split(line);
            if (f.size() != 4)
                throw ParseError("node csv line " + std::to_string(nline) +
                                 ": expected 4 fields");
            NodeInfo info;
            info.occurrences = parse_u64(f[1], nline, "occurrences");
            if (f[3] == "normal") info.label = Label::normal;
            else if (f[3] == "attack") info.label = Label::attack;
            else if (!f[3].empty())
                throw ParseError("node csv line " + std::to_string(nline) +
                                 ": unknown label '" + f[3] + "'");
            node_map[f[0]] = info;
        }
    }

    Tlcn net;
    net.nodes.reserve(node_map.size());
    std::map<std::string, std::uint32_t> ids;
    for (const auto& [key, info] : node_map) {
        ids.emplace(key, static_cast<std::uint32_t>(net.nodes.size()));
        net.nodes.push_back(TlcnNode{FlowKey::opaque(key), info.occurrences, info.label});
    }
    net.edges.reserve(edge_rows.size());
    for (const auto& [keys, w] : edge_rows) {
        TlcnEdge e;
        e.src = ids.at(keys.first);
        e.dst = ids.at(keys.second);
        if (e.src == e.dst)
            throw ValidationError("edge csv contains a self-loop at key '" + keys.first + "'");
        e.weight = w;
        net.edges.push_back(e);
    }
    std::sort(net.edges.begin(), net.edges.end(), [](const TlcnEdge& a, const TlcnEdge& b) {
        return a.src != b.src ? a.src < b.src : a.dst < b.dst;
    });
    for (std::size_t i = 1; i < net.edges.size(); ++i)
        if (net.edges[i].src == net.edges[i - 1].src && net.edges[i].dst == net.edges[i - 1].dst)
            throw ValidationError("edge csv contains a duplicate edge");
    return net;
}

const char* to_string(ExportFormat format) {
    switch (format) {
    case ExportFormat::dot: return "dot";
    case ExportFormat::graphml: return "graphml";
    case ExportFormat::edge_csv: return "edge_csv";
    }
    return "?";
}

} // namespace tlcn
