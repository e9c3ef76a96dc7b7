#include "pwhs/manifest.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

#include "pwhs/errors.hpp"

namespace pwhs {

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string digest_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw domain_error("cannot open input for digest: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::ostringstream os;
    os << "fnv1a64:" << std::hex << std::setfill('0') << std::setw(16)
       << fnv1a64(ss.str());
    return os.str();
}

std::string RunManifest::to_json(bool include_wall_time) const {
    nlohmann::json j{{"command", command},
                     {"argv", argv},
                     {"input_digest", input_digest},
                     {"version", version}};
    if (include_wall_time) j["wall_time_ms"] = wall_time_ms;
    return j.dump();
}

std::string RunManifest::csv_comment() const {
    return "# manifest: " + to_json(false);
}

}  // namespace pwhs
