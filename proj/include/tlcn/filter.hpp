#ifndef TLCN_FILTER_HPP
#define TLCN_FILTER_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace tlcn {

// Node identity granularity: full 5-tuple, or source/destination IP only
// (the usual choice once traffic is already restricted to one application).
enum class KeyMode : std::uint8_t { two_tuple, five_tuple };

// UWE records edge presence only; WE counts repeated pair co-occurrences.
enum class EdgeFilter : std::uint8_t { uwe, we };

// Node admission rule applied to flow records before graph construction.
struct NodeFilter {
    enum class Kind : std::uint8_t { all, min_frequency, protocol, port, flow_type };

    Kind kind = Kind::all;
    std::uint64_t min_count = 1;           // min_frequency
    std::uint8_t proto_value = 0;          // protocol
    std::vector<std::uint16_t> ports;      // port: source OR destination match
    bool tcp_handshake_only = true;        // flow_type predicate hook

    static NodeFilter all() { return {}; }
    static NodeFilter min_frequency(std::uint64_t threshold);
    static NodeFilter protocol(std::uint8_t p);
    static NodeFilter port(std::vector<std::uint16_t> ports);
    static NodeFilter flow_type(bool tcp_handshake_only = true);

    // One-line description for manifests and graph metadata.
    std::string describe() const;
};

const char* to_string(KeyMode mode);
const char* to_string(EdgeFilter filter);

} // namespace tlcn

#endif
