#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pwhs {

inline constexpr const char* kVersion = "0.1.0";

// Provenance block attached to every output artifact. The artifact-embedded
// form excludes wall time so identical inputs give byte-identical outputs;
// timing is reported on stderr instead.
struct RunManifest {
    std::string command;
    std::vector<std::string> argv;
    std::string input_digest;  // fnv1a-64 of the input spec file, "-" if none
    std::string version = kVersion;
    double wall_time_ms = 0;

    std::string to_json(bool include_wall_time) const;
    std::string csv_comment() const;  // "# manifest: {...}" line
};

std::uint64_t fnv1a64(const std::string& bytes);
std::string digest_file(const std::string& path);

}  // namespace pwhs
