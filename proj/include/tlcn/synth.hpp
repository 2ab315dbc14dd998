#ifndef TLCN_SYNTH_HPP
#define TLCN_SYNTH_HPP

#include "tlcn/trace.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace tlcn {

enum class AttackPattern : std::uint8_t { ss_dos, sm_probe, mm_probe };

// ss_dos: one (attacker, victim) pair emitting at Poisson `rate` for
//         `duration` seconds.
// sm_probe: one attacker sweeping `target_count` hosts; each target's flow is
//         sent `repeat_per_target` times consecutively, records spaced 1/rate.
// mm_probe: `attacker_count` attackers, each probing its own `target_count`
//         hosts exactly once, records spaced 1/rate per attacker.
struct AttackSpec {
    AttackPattern pattern = AttackPattern::ss_dos;
    double start = 0;
    double duration = 0;
    double rate = 0;
    std::size_t attacker_count = 1;
    std::size_t repeat_per_target = 5;
    std::size_t target_count = 1;
};

struct ScenarioConfig {
    double duration = 0;          // seconds
    double background_rate = 0;   // flows/second, Poisson
    std::size_t host_pool = 2;    // Zipf-weighted background hosts
    double zipf_exponent = 1.0;
    std::uint64_t seed = 0;
    std::vector<AttackSpec> attacks;
};

// Throws ValidationError naming the offending field.
void validate(const ScenarioConfig& config);

// Labeled synthetic trace: Poisson background over Zipf-popular hosts plus
// the configured attacks, merged and time-sorted. Background records are
// labeled normal, attack records attack. Deterministic for a given seed.
Trace generate(const ScenarioConfig& config);

// Flat key = value scenario file; each [attack] section starts one AttackSpec.
ScenarioConfig load_scenario(std::istream& in);
ScenarioConfig load_scenario_file(const std::string& path);

const char* to_string(AttackPattern pattern);

} // namespace tlcn

#endif
