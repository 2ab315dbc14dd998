#ifndef TLCN_MANIFEST_HPP
#define TLCN_MANIFEST_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace tlcn {

constexpr const char* kToolVersion = "0.1.0";

// Reproducibility sidecar written next to every output artifact.
struct RunManifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::string input_digest;
    std::string tool_version = kToolVersion;

    void add(const std::string& key, const std::string& value) {
        parameters.emplace_back(key, value);
    }
};

std::uint64_t fnv1a64(const void* data, std::size_t len);

// fnv1a64:<hex> over the file bytes; throws ValidationError if unreadable.
std::string digest_file(const std::string& path);

void write_manifest(const RunManifest& manifest, std::ostream& out);

} // namespace tlcn

#endif
