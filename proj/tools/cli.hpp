#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace helix::cli {

enum ExitCode : int {
    kSuccess = 0,
    kValidationFailure = 1,
    kUsageError = 2,
    kIoError = 3,
};

/// Provenance attached to every output. The copy embedded in a report omits
/// the timestamp so that reports stay byte-reproducible; the sidecar file
/// carries it.
struct RunManifest {
    std::string command;
    std::vector<std::string> inputs;
    std::string config_hash;  // FNV-1a 64 of the effective configuration, hex
    std::string tool_version;
    std::string timestamp;    // ISO 8601 UTC
    std::optional<std::uint64_t> seed;

    nlohmann::json to_json(bool with_timestamp) const;
};

std::string fnv1a_hex(std::string_view bytes);

/// Entry point shared by the binary and the tests. `args` excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace helix::cli
