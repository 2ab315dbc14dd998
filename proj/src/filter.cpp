#include "tlcn/filter.hpp"
#include "tlcn/error.hpp"

#include <algorithm>
#include <sstream>

namespace tlcn {

NodeFilter NodeFilter::min_frequency(std::uint64_t threshold) {
    if (threshold == 0)
        throw ValidationError("min_frequency threshold must be positive");
    NodeFilter f;
    f.kind = Kind::min_frequency;
    f.min_count = threshold;
    return f;
}

NodeFilter NodeFilter::protocol(std::uint8_t p) {
    NodeFilter f;
    f.kind = Kind::protocol;
    f.proto_value = p;
    return f;
}

NodeFilter NodeFilter::port(std::vector<std::uint16_t> ports) {
    if (ports.empty())
        throw ValidationError("port filter requires a non-empty port set");
    NodeFilter f;
    f.kind = Kind::port;
    f.ports = std::move(ports);
    std::sort(f.ports.begin(), f.ports.end());
    f.ports.erase(std::unique(f.ports.begin(), f.ports.end()), f.ports.end());
    return f;
}

NodeFilter NodeFilter::flow_type(bool tcp_handshake_only) {
    NodeFilter f;
    f.kind = Kind::flow_type;
    f.tcp_handshake_only = tcp_handshake_only;
    return f;
}

std::string NodeFilter::describe() const {
    switch (kind) {
    case Kind::all:
        return "all";
    case Kind::min_frequency:
        return "min_frequency(" + std::to_string(min_count) + ")";
    case Kind::protocol:
        return "protocol(" + std::to_string(proto_value) + ")";
    case Kind::port: {
        std::ostringstream os;
        os << "port(";
        for (std::size_t i = 0; i < ports.size(); ++i)
            os << (i ? "," : "") << ports[i];
        os << ")";
        return os.str();
    }
    case Kind::flow_type:
        return tcp_handshake_only ? "flow_type(tcp)" : "flow_type(any)";
    }
    return "?";
}

const char* to_string(KeyMode mode) {
    return mode == KeyMode::two_tuple ? "2tuple" : "5tuple";
}

const char* to_string(EdgeFilter filter) {
    return filter == EdgeFilter::uwe ? "uwe" : "we";
}

} // namespace tlcn
