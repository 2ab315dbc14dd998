#ifndef TLCN_TRACE_HPP
#define TLCN_TRACE_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tlcn {

// Timestamps are stored as integer microsecond ticks so that window
// lengths down to 1e-5 s are exact.
using Ticks = std::int64_t;
constexpr Ticks kTicksPerSecond = 1'000'000;

constexpr std::uint8_t kProtoIcmp = 1;
constexpr std::uint8_t kProtoTcp = 6;
constexpr std::uint8_t kProtoUdp = 17;

enum class Label : std::uint8_t { none, normal, attack };

// One timestamped flow observation: 5-tuple plus optional ground truth.
// IP addresses are kept as opaque strings; equality is textual.
struct FlowRecord {
    Ticks ts = 0;
    std::string src_ip;
    std::string dst_ip;
    std::uint16_t src_port = 0;
    std::uint16_t dst_port = 0;
    std::uint8_t proto = 0;
    Label label = Label::none;

    bool operator==(const FlowRecord&) const = default;
};

// Time-ordered flow records. Records with equal timestamps keep their
// input order; that order decides edge direction for simultaneous flows.
struct Trace {
    std::vector<FlowRecord> records;
    Ticks epoch = 0; // absolute start time, informational only

    bool empty() const { return records.empty(); }
    std::size_t size() const { return records.size(); }
};

struct TraceStats {
    std::size_t size_n = 0;
    double fraction_r = 1.0;
    std::optional<double> pps; // absent when the trace spans zero time
};

// Exact decimal-seconds conversion. parse_seconds accepts `digits[.digits]`
// with at most six fractional digits and rejects everything else.
Ticks parse_seconds(std::string_view text);
std::string format_seconds(Ticks t);

// Reads the canonical CSV trace format:
//   ts,src_ip,dst_ip,src_port,dst_port,proto[,label]
// Returns records stably sorted by ts. Throws ParseError for malformed
// lines (with line number) and ValidationError for out-of-range fields.
// A missing header is an error; a header with no rows is a valid empty trace.
Trace parse_trace(std::istream& in);
Trace parse_trace_file(const std::string& path);

// Inverse of parse_trace; emits the label column iff any record carries one.
void serialize_trace(const Trace& trace, std::ostream& out);
std::string serialize_trace(const Trace& trace);

// size, fraction of parent trace, and packets per second over [min ts, max ts].
// parent_size, when given, is the record count of the trace this one was cut
// from. Throws ValidationError on an empty trace.
TraceStats trace_stats(const Trace& trace, std::optional<std::size_t> parent_size = {});

} // namespace tlcn

#endif
