#include "tlcn/manifest.hpp"
#include "tlcn/error.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace tlcn {

std::uint64_t fnv1a64(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 1469598103934665603ULL;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

std::string digest_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError("cannot open input file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string bytes = buf.str();
    char hex[32];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes.data(), bytes.size())));
    return std::string("fnv1a64:") + hex;
}

void write_manifest(const RunManifest& manifest, std::ostream& out) {
    out << "command = " << manifest.command << '\n';
    out << "tool_version = " << manifest.tool_version << '\n';
    if (!manifest.input_digest.empty())
        out << "input_digest = " << manifest.input_digest << '\n';
    for (const auto& [k, v] : manifest.parameters)
        out << "param." << k << " = " << v << '\n';
}

} // namespace tlcn
