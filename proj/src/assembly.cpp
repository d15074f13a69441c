#include "loopkit/assembly.hpp"
#include "loopkit/errors.hpp"
#include "loopkit/ring.hpp"
#include "loopkit/rng.hpp"

#include <nlohmann/json.hpp>

#include <cstring>
#include <fstream>

namespace loopkit {

std::string shot_name(Shot s) { return s == Shot::A ? "A" : "B"; }

Shot shot_from_name(const std::string& name) {
    if (name == "A") return Shot::A;
    if (name == "B") return Shot::B;
    throw ValidationError("unknown speaker/shot \"" + name + "\" (expected \"A\" or \"B\")");
}

TensorF32 extract_segment(const LoopTemplate& tmpl, std::int64_t start,
                          std::size_t length) {
    if (length < 1) throw ParamError("segment length must be >= 1");
    if (tmpl.frames.ndim() != 2) throw ShapeError("template frames must be [F, D]");

    const std::size_t frames = tmpl.frame_count();
    const std::size_t dim = tmpl.latent_dim();
    std::vector<float> out(length * dim);
    for (std::size_t i = 0; i < length; ++i) {
        const std::size_t src =
            LatentRing::wrap_index(start + static_cast<std::int64_t>(i), frames);
        std::memcpy(out.data() + i * dim, tmpl.frames.data() + src * dim,
                    dim * sizeof(float));
    }
    return TensorF32({length, dim}, std::move(out));
}

EditDecisionList compile_timeline(const std::vector<DialogueTurn>& turns,
                                  const TemplateLengths& lengths,
                                  std::uint64_t seed) {
    if (turns.empty()) throw ParamError("script has no turns");
    if (lengths.a < 1 || lengths.b < 1)
        throw ParamError("template lengths must be >= 1");

    SeededRng rng(seed);
    EditDecisionList edl;
    edl.entries.reserve(turns.size());
    for (const DialogueTurn& turn : turns) {
        if (turn.duration_frames < 1)
            throw ValidationError("turn \"" + turn.line_id + "\" has zero duration");
        EdlEntry entry;
        entry.shot = turn.speaker;
        entry.loop_start = static_cast<std::size_t>(rng.next_below(lengths.of(turn.speaker)));
        entry.length = turn.duration_frames;
        entry.line_id = turn.line_id;
        edl.entries.push_back(std::move(entry));
    }
    return edl;
}

RenderedSequence render_edl(const EditDecisionList& edl, const LoopTemplate& template_a,
                            const LoopTemplate& template_b) {
    if (template_a.latent_dim() != template_b.latent_dim())
        throw ValidationError("templates A and B have different latent dims");

    const std::size_t dim = template_a.latent_dim();
    std::size_t total = 0;
    for (const EdlEntry& e : edl.entries) {
        const LoopTemplate& tmpl = e.shot == Shot::A ? template_a : template_b;
        if (e.loop_start >= tmpl.frame_count())
            throw ValidationError("loop_start " + std::to_string(e.loop_start) +
                                  " out of range for shot " + shot_name(e.shot));
        if (e.length < 1) throw ValidationError("EDL entry with zero length");
        total += e.length;
    }

    RenderedSequence out;
    out.shot_track.reserve(total);
    std::vector<float> data;
    data.reserve(total * dim);
    for (const EdlEntry& e : edl.entries) {
        const LoopTemplate& tmpl = e.shot == Shot::A ? template_a : template_b;
        TensorF32 seg = extract_segment(tmpl, static_cast<std::int64_t>(e.loop_start),
                                        e.length);
        data.insert(data.end(), seg.data(), seg.data() + seg.size());
        out.shot_track.insert(out.shot_track.end(), e.length, e.shot);
    }
    if (total == 0) {
        out.frames = TensorF32();
        return out;
    }
    out.frames = TensorF32({total, dim}, std::move(data));
    return out;
}

std::vector<DialogueTurn> read_script(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("bad script JSON " + path.string() + ": " + e.what());
    }

    std::vector<DialogueTurn> turns;
    try {
        for (const auto& jt : doc.at("turns")) {
            DialogueTurn turn;
            turn.speaker = shot_from_name(jt.at("speaker").get<std::string>());
            const auto frames = jt.at("duration_frames").get<std::int64_t>();
            if (frames < 1) throw ValidationError("duration_frames must be >= 1");
            turn.duration_frames = static_cast<std::size_t>(frames);
            turn.line_id = jt.value("line_id", "");
            turns.push_back(std::move(turn));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("bad script schema in " + path.string() + ": " + e.what());
    }
    return turns;
}

void write_edl(const std::filesystem::path& path, const EditDecisionList& edl) {
    nlohmann::json entries = nlohmann::json::array();
    for (const EdlEntry& e : edl.entries) {
        entries.push_back({{"shot", shot_name(e.shot)},
                           {"loop_start", e.loop_start},
                           {"length", e.length},
                           {"line_id", e.line_id}});
    }
    nlohmann::json doc{{"entries", entries}};
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << doc.dump(2) << "\n";
    if (!out) throw IoError("short write: " + path.string());
}

EditDecisionList read_edl(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("bad EDL JSON " + path.string() + ": " + e.what());
    }

    EditDecisionList edl;
    try {
        for (const auto& je : doc.at("entries")) {
            EdlEntry e;
            e.shot = shot_from_name(je.at("shot").get<std::string>());
            e.loop_start = je.at("loop_start").get<std::size_t>();
            e.length = je.at("length").get<std::size_t>();
            e.line_id = je.value("line_id", "");
            edl.entries.push_back(std::move(e));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("bad EDL schema in " + path.string() + ": " + e.what());
    }
    return edl;
}

void write_shot_track(const std::filesystem::path& path, const std::vector<Shot>& track) {
    nlohmann::json labels = nlohmann::json::array();
    for (Shot s : track) labels.push_back(shot_name(s));
    nlohmann::json doc{{"track", labels}};
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << doc.dump(2) << "\n";
    if (!out) throw IoError("short write: " + path.string());
}

} // namespace loopkit
