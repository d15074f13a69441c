#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace loopkit {

inline constexpr const char* kToolVersion = "0.1.0";

// Reproducibility record written next to every output file. Re-running the
// recorded command must reproduce the outputs byte for byte, so nothing
// time- or host-dependent belongs in here.
struct RunManifest {
    std::string command;
    nlohmann::json params = nlohmann::json::object();
    std::uint64_t seed = 0;
    std::vector<std::string> input_paths;
    std::vector<std::string> output_paths;
    std::string tool_version = kToolVersion;
};

// Writes <output>.manifest.json for the given primary output path.
void write_manifest(const std::filesystem::path& primary_output,
                    const RunManifest& manifest);

RunManifest read_manifest(const std::filesystem::path& manifest_path);

std::filesystem::path manifest_path_for(const std::filesystem::path& primary_output);

} // namespace loopkit
