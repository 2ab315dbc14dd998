#include "tlcn/synth.hpp"
#include "tlcn/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace tlcn {

namespace {

// Fixed background protocol mix: mostly TCP, some UDP, a little ICMP.
constexpr double kTcpShare = 0.92;
constexpr double kUdpShare = 0.07;
constexpr std::uint16_t kServicePorts[] = {80, 443, 25, 53, 22, 123};

Ticks to_ticks(double seconds) {
    return static_cast<Ticks>(std::llround(seconds * kTicksPerSecond));
}

std::string background_host(std::size_t i) {
    return "10." + std::to_string((i >> 16) & 255) + "." + std::to_string((i >> 8) & 255) +
           "." + std::to_string(i & 255);
}

class ZipfSampler {
public:
    ZipfSampler(std::size_t n, double exponent) : cdf_(n) {
        double acc = 0;
        for (std::size_t i = 0; i < n; ++i) {
            acc += std::pow(double(i + 1), -exponent);
            cdf_[i] = acc;
        }
        for (double& c : cdf_)
            c /= acc;
    }
    std::size_t draw(std::mt19937_64& rng) const {
        double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        return std::size_t(std::lower_bound(cdf_.begin(), cdf_.end(), u) - cdf_.begin());
    }

private:
    std::vector<double> cdf_;
};

void check(bool ok, const char* field, const char* why) {
    if (!ok)
        throw ValidationError(std::string("scenario field '") + field + "': " + why);
}

} // namespace

void validate(const ScenarioConfig& c) {
    check(c.duration > 0, "duration", "must be positive");
    check(c.background_rate >= 0, "background_rate", "must be non-negative");
    check(c.host_pool >= 2, "host_pool", "must be at least 2");
    check(c.zipf_exponent >= 0, "zipf_exponent", "must be non-negative");
    for (const AttackSpec& a : c.attacks) {
        check(a.rate > 0, "rate", "must be positive");
        check(a.start >= 0, "start", "must be non-negative");
        check(a.duration > 0, "duration", "must be positive");
        check(a.start + a.duration <= c.duration, "start",
              "attack interval exceeds the trace duration");
        check(a.target_count >= 1, "target_count", "must be at least 1");
        if (a.pattern == AttackPattern::sm_probe) {
            check(a.repeat_per_target >= 1, "repeat_per_target", "must be at least 1");
            double span = double(a.target_count * a.repeat_per_target - 1) / a.rate;
            check(span <= a.duration, "rate", "probe sequence does not fit in the attack duration");
        }
        if (a.pattern == AttackPattern::mm_probe) {
            check(a.attacker_count >= 1, "attacker_count", "must be at least 1");
            double span = a.target_count >= 1 ? double(a.target_count - 1) / a.rate : 0;
            check(span <= a.duration, "rate", "probe sequence does not fit in the attack duration");
        }
    }
}

Trace generate(const ScenarioConfig& config) {
    validate(config);
    std::mt19937_64 rng(config.seed);
    Trace trace;

    if (config.background_rate > 0) {
        ZipfSampler hosts(config.host_pool, config.zipf_exponent);
        std::exponential_distribution<double> gap(config.background_rate);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::uniform_int_distribution<std::uint16_t> ephemeral(1024, 65535);
        std::uniform_int_distribution<std::size_t> service(0, std::size(kServicePorts) - 1);
        double t = gap(rng);
        while (t < config.duration) {
            std::size_t src = hosts.draw(rng);
            std::size_t dst = hosts.draw(rng);
            while (dst == src)
                dst = hosts.draw(rng);
            FlowRecord r;
            r.ts = to_ticks(t);
            r.src_ip = background_host(src);
            r.dst_ip = background_host(dst);
            double mix = unit(rng);
            if (mix < kTcpShare)
                r.proto = kProtoTcp;
            else if (mix < kTcpShare + kUdpShare)
                r.proto = kProtoUdp;
            else
                r.proto = kProtoIcmp;
            if (r.proto != kProtoIcmp) {
                r.src_port = ephemeral(rng);
                r.dst_port = kServicePorts[service(rng)];
            }
            r.label = Label::normal;
            trace.records.push_back(std::move(r));
            t += gap(rng);
        }
    }

    for (std::size_t ai = 0; ai < config.attacks.size(); ++ai) {
        const AttackSpec& a = config.attacks[ai];
        const std::string tag = std::to_string(ai);
        switch (a.pattern) {
        case AttackPattern::ss_dos: {
            std::exponential_distribution<double> gap(a.rate);
            FlowRecord proto;
            proto.src_ip = "203.0.113." + tag;
            proto.dst_ip = "198.51.100." + tag;
            proto.src_port = 40000;
            proto.dst_port = 22;
            proto.proto = kProtoTcp;
            proto.label = Label::attack;
            double t = a.start + gap(rng);
            while (t < a.start + a.duration) {
                FlowRecord r = proto;
                r.ts = to_ticks(t);
                trace.records.push_back(std::move(r));
                t += gap(rng);
            }
            break;
        }
        case AttackPattern::sm_probe: {
            double t = a.start;
            for (std::size_t tgt = 0; tgt < a.target_count; ++tgt) {
                for (std::size_t rep = 0; rep < a.repeat_per_target; ++rep) {
                    FlowRecord r;
                    r.ts = to_ticks(t);
                    r.src_ip = "203.0.113." + tag;
                    r.dst_ip = "198.51." + tag + "." + std::to_string(tgt);
                    r.src_port = 41000;
                    r.dst_port = 80;
                    r.proto = kProtoTcp;
                    r.label = Label::attack;
                    trace.records.push_back(std::move(r));
                    t += 1.0 / a.rate;
                }
            }
            break;
        }
        case AttackPattern::mm_probe: {
            for (std::size_t atk = 0; atk < a.attacker_count; ++atk) {
                for (std::size_t tgt = 0; tgt < a.target_count; ++tgt) {
                    FlowRecord r;
                    r.ts = to_ticks(a.start + double(tgt) / a.rate);
                    r.src_ip = "203.0." + tag + "." + std::to_string(atk);
                    r.dst_ip = "198." + tag + "." + std::to_string(atk) + "." +
                               std::to_string(tgt);
                    r.proto = kProtoIcmp;
                    r.label = Label::attack;
                    trace.records.push_back(std::move(r));
                }
            }
            break;
        }
        }
    }

    std::stable_sort(trace.records.begin(), trace.records.end(),
                     [](const FlowRecord& x, const FlowRecord& y) { return x.ts < y.ts; });
    return trace;
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_num(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size())
            throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ParseError("scenario field '" + key + "': invalid number '" + v + "'");
    }
}

std::uint64_t parse_uint(const std::string& v, const std::string& key) {
    double d = parse_num(v, key);
    if (d < 0 || d != std::floor(d))
        throw ParseError("scenario field '" + key + "': expected a non-negative integer");
    return static_cast<std::uint64_t>(d);
}

} // namespace

ScenarioConfig load_scenario(std::istream& in) {
    ScenarioConfig config;
    AttackSpec* current = nullptr;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#')
            continue;
        if (t == "[attack]") {
            config.attacks.emplace_back();
            current = &config.attacks.back();
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ParseError("scenario line " + std::to_string(line_no) +
                             ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (current == nullptr) {
            if (key == "duration") config.duration = parse_num(value, key);
            else if (key == "background_rate") config.background_rate = parse_num(value, key);
            else if (key == "host_pool") config.host_pool = parse_uint(value, key);
            else if (key == "zipf_exponent") config.zipf_exponent = parse_num(value, key);
            else if (key == "seed") config.seed = parse_uint(value, key);
            else
                throw ParseError("scenario line " + std::to_string(line_no) +
                                 ": unknown field '" + key + "'");
        } else {
            if (key == "pattern") {
                if (value == "ss_dos") current->pattern = AttackPattern::ss_dos;
                else if (value == "sm_probe") current->pattern = AttackPattern::sm_probe;
                else if (value == "mm_probe") current->pattern = AttackPattern::mm_probe;
                else
                    throw ParseError("scenario line " + std::to_string(line_no) +
                                     ": unknown pattern '" + value + "'");
            } else if (key == "start") current->start = parse_num(value, key);
            else if (key == "duration") current->duration = parse_num(value, key);
            else if (key == "rate") current->rate = parse_num(value, key);
            else if (key == "attacker_count") current->attacker_count = parse_uint(value, key);
            else if (key == "repeat_per_target") current->repeat_per_target = parse_uint(value, key);
            else if (key == "target_count") current->target_count = parse_uint(value, key);
            else
                throw ParseError("scenario line " + std::to_string(line_no) +
                                 ": unknown attack field '" + key + "'");
        }
    }
    validate(config);
    return config;
}

ScenarioConfig load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open scenario file '" + path + "'");
    return load_scenario(in);
}

const char* to_string(AttackPattern pattern) {
    switch (pattern) {
    case AttackPattern::ss_dos: return "ss_dos";
    case AttackPattern::sm_probe: return "sm_probe";
    case AttackPattern::mm_probe: return "mm_probe";
    }
    return "?";
}

} // namespace tlcn
