#include "tlcn/trace.hpp"
#include "tlcn/error.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace tlcn {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

} // namespace

Ticks parse_seconds(std::string_view text) {
    std::string_view whole = text;
    std::string_view frac;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        whole = text.substr(0, dot);
        frac = text.substr(dot + 1);
        if (frac.empty())
            throw ParseError("missing digits after decimal point in '" + std::string(text) + "'");
        if (frac.size() > 6)
            throw ParseError("more than six fractional digits in '" + std::string(text) + "'");
        if (!all_digits(frac))
            throw ParseError("invalid fractional part in '" + std::string(text) + "'");
    }
    if (!all_digits(whole))
        throw ParseError("invalid decimal seconds '" + std::string(text) + "'");

    std::int64_t secs = 0;
    auto [p, ec] = std::from_chars(whole.data(), whole.data() + whole.size(), secs);
    if (ec != std::errc() || p != whole.data() + whole.size() ||
        secs > std::numeric_limits<std::int64_t>::max() / kTicksPerSecond - 1)
        throw ParseError("seconds value out of range: '" + std::string(text) + "'");

    std::int64_t micros = 0;
    for (std::size_t i = 0; i < 6; ++i)
        micros = micros * 10 + (i < frac.size() ? frac[i] - '0' : 0);
    return secs * kTicksPerSecond + micros;
}

std::string format_seconds(Ticks t) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld.%06lld",
                  static_cast<long long>(t / kTicksPerSecond),
                  static_cast<long long>(t % kTicksPerSecond));
    return buf;
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

int parse_int_field(std::string_view s, int max_value, const char* what, std::size_t line_no) {
    if (!all_digits(s))
        throw ParseError("line " + std::to_string(line_no) + ": invalid " + what +
                         " '" + std::string(s) + "'");
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || v > max_value)
        throw ValidationError("line " + std::to_string(line_no) + ": " + what +
                              " out of range: '" + std::string(s) + "'");
    return v;
}

constexpr std::string_view kHeaderBase = "ts,src_ip,dst_ip,src_port,dst_port,proto";
constexpr std::string_view kHeaderLabeled = "ts,src_ip,dst_ip,src_port,dst_port,proto,label";

void strip_cr(std::string& s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
}

} // namespace

Trace parse_trace(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw ParseError("empty input: expected trace header");
    strip_cr(line);

    bool has_label;
    if (line == kHeaderBase)
        has_label = false;
    else if (line == kHeaderLabeled)
        has_label = true;
    else
        throw ParseError("line 1: unrecognized trace header '" + line + "'");

    const std::size_t ncols = has_label ? 7 : 6;
    Trace trace;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        auto fields = split_fields(line);
        if (fields.size() != ncols)
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(ncols) + " fields, got " +
                             std::to_string(fields.size()));

        FlowRecord rec;
        try {
            rec.ts = parse_seconds(fields[0]);
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
        rec.src_ip = std::string(fields[1]);
        rec.dst_ip = std::string(fields[2]);
        if (rec.src_ip.empty() || rec.dst_ip.empty())
            throw ParseError("line " + std::to_string(line_no) + ": empty address field");
        rec.src_port = static_cast<std::uint16_t>(
            parse_int_field(fields[3], 65535, "src_port", line_no));
        rec.dst_port = static_cast<std::uint16_t>(
            parse_int_field(fields[4], 65535, "dst_port", line_no));
        rec.proto = static_cast<std::uint8_t>(
            parse_int_field(fields[5], 255, "proto", line_no));
        if (has_label) {
            std::string_view l = fields[6];
            if (l == "normal")
                rec.label = Label::normal;
            else if (l == "attack")
                rec.label = Label::attack;
            else if (l.empty())
                rec.label = Label::none;
            else
                throw ParseError("line " + std::to_string(line_no) +
                                 ": unknown label '" + std::string(l) + "'");
        }
        if (rec.proto == kProtoIcmp) {
            rec.src_port = 0;
            rec.dst_port = 0;
        }
        trace.records.push_back(std::move(rec));
    }

    std::stable_sort(trace.records.begin(), trace.records.end(),
                     [](const FlowRecord& a, const FlowRecord& b) { return a.ts < b.ts; });
    return trace;
}

Trace parse_trace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open trace file '" + path + "'");
    return parse_trace(in);
}

void serialize_trace(const Trace& trace, std::ostream& out) {
    bool has_label = std::any_of(trace.records.begin(), trace.records.end(),
                                 [](const FlowRecord& r) { return r.label != Label::none; });
    out << (has_label ? kHeaderLabeled : kHeaderBase) << '\n';
    for (const FlowRecord& r : trace.records) {
        out << format_seconds(r.ts) << ',' << r.src_ip << ',' << r.dst_ip << ','
            << r.src_port << ',' << r.dst_port << ',' << int(r.proto);
        if (has_label) {
            out << ',';
            if (r.label == Label::normal)
                out << "normal";
            else if (r.label == Label::attack)
                out << "attack";
        }
        out << '\n';
    }
}

std::string serialize_trace(const Trace& trace) {
    std::ostringstream os;
    serialize_trace(trace, os);
    return os.str();
}

TraceStats trace_stats(const Trace& trace, std::optional<std::size_t> parent_size) {
    if (trace.empty())
        throw ValidationError("trace_stats: empty trace");
    TraceStats st;
    st.size_n = trace.size();
    if (parent_size && *parent_size > 0)
        st.fraction_r = double(st.size_n) / double(*parent_size);
    Ticks span = trace.records.back().ts - trace.records.front().ts;
    if (span > 0)
        st.pps = double(st.size_n) / (double(span) / kTicksPerSecond);
    return st;
}

} // namespace tlcn
