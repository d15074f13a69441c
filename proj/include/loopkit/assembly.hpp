#pragma once

#include "loopkit/scheduler.hpp"
#include "loopkit/tensor.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace loopkit {

enum class Shot { A, B };

std::string shot_name(Shot s);
Shot shot_from_name(const std::string& name);

struct DialogueTurn {
    Shot speaker = Shot::A;
    std::size_t duration_frames = 0;
    std::string line_id;
};

struct EdlEntry {
    Shot shot = Shot::A;
    std::size_t loop_start = 0;
    std::size_t length = 0;
    std::string line_id;
};

struct EditDecisionList {
    std::vector<EdlEntry> entries;
};

// Frame counts of the two loop templates a script cuts between.
struct TemplateLengths {
    std::size_t a = 0;
    std::size_t b = 0;

    std::size_t of(Shot s) const { return s == Shot::A ? a : b; }
};

// Rendered timeline plus one shot label per output frame.
struct RenderedSequence {
    TensorF32 frames;          // [total, D]
    std::vector<Shot> shot_track;
};

// Frames template[(start + i) mod F] for i in [0, length); start may be any
// integer and the template may be lapped any number of times.
TensorF32 extract_segment(const LoopTemplate& tmpl, std::int64_t start,
                          std::size_t length);

// One EDL entry per turn, in order. Each loop_start is drawn uniformly in
// [0, F_shot) from the seeded stream, one draw per turn.
EditDecisionList compile_timeline(const std::vector<DialogueTurn>& turns,
                                  const TemplateLengths& lengths,
                                  std::uint64_t seed);

RenderedSequence render_edl(const EditDecisionList& edl, const LoopTemplate& template_a,
                            const LoopTemplate& template_b);

// --- JSON carriers ----------------------------------------------------------
// script:     {"turns":[{"speaker":"A","duration_frames":N,"line_id":"..."}]}
// edl:        {"entries":[{"shot":"A","loop_start":N,"length":N,"line_id":"..."}]}
// shot track: {"track":["A","A","B",...]}

std::vector<DialogueTurn> read_script(const std::filesystem::path& path);
void write_edl(const std::filesystem::path& path, const EditDecisionList& edl);
EditDecisionList read_edl(const std::filesystem::path& path);
void write_shot_track(const std::filesystem::path& path, const std::vector<Shot>& track);

} // namespace loopkit
