#include "loopkit/manifest.hpp"
#include "loopkit/errors.hpp"

#include <fstream>

namespace loopkit {

std::filesystem::path manifest_path_for(const std::filesystem::path& primary_output) {
    std::filesystem::path p = primary_output;
    p += ".manifest.json";
    return p;
}

void write_manifest(const std::filesystem::path& primary_output,
                    const RunManifest& manifest) {
    nlohmann::json doc{
        {"command", manifest.command},
        {"params", manifest.params},
        {"seed", manifest.seed},
        {"input_paths", manifest.input_paths},
        {"output_paths", manifest.output_paths},
        {"tool_version", manifest.tool_version},
    };
    const std::filesystem::path path = manifest_path_for(primary_output);
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << doc.dump(2) << "\n";
    if (!out) throw IoError("short write: " + path.string());
}

RunManifest read_manifest(const std::filesystem::path& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw IoError("cannot open: " + manifest_path.string());
    nlohmann::json doc;
    try {
        in >> doc;
        RunManifest m;
        m.command = doc.at("command").get<std::string>();
        m.params = doc.at("params");
        m.seed = doc.at("seed").get<std::uint64_t>();
        m.input_paths = doc.at("input_paths").get<std::vector<std::string>>();
        m.output_paths = doc.at("output_paths").get<std::vector<std::string>>();
        m.tool_version = doc.at("tool_version").get<std::string>();
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("bad manifest " + manifest_path.string() + ": " + e.what());
    }
}

} // namespace loopkit
