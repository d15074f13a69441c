#pragma once

#include "loopkit/tensor.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace loopkit {

// Per-panel descriptions for a dual-shot prompt. Panel tags are reserved for
// the template itself.
struct PromptSpec {
    std::string left_description;
    std::string right_description;
};

// Human layout annotations for one generated sample. Eye contact is defined
// only for over-the-shoulder shots, so eye_* implies the matching ots_*.
struct AnnotationRecord {
    std::string sample_id;
    bool ots_left = false;
    bool ots_right = false;
    bool rule180 = false;
    bool eye_left = false;
    bool eye_right = false;

    void validate() const;
};

struct LayoutRecord {
    std::string sample_id;
    enum class Side { left, right };
    Side shot1_main_side = Side::left;
    Side shot2_main_side = Side::right;
};

// The dual-shot convention keeps shot 1's main subject on the left and shot
// 2's on the right; that layout is what preserves screen positions across
// the cut.
bool rule180_from_layout(const LayoutRecord& rec);

struct ScoreSummary {
    double ots = 0.0;
    double rule180 = 0.0;
    double eye = 0.0;
};

std::string format_prompt(const PromptSpec& spec);

// 1 if both panels qualify, 0.5 if exactly one, else 0.
double score_ots(const AnnotationRecord& rec);
double score_180(const AnnotationRecord& rec);
double score_eye(const AnnotationRecord& rec);

// Arithmetic means over per-record scores.
ScoreSummary aggregate_scores(const std::vector<AnnotationRecord>& records);

// Fixed-order score table (method, OTS, 180-degree rule, eye contact), two
// decimals per cell.
std::string format_score_table(const std::string& method, const ScoreSummary& s);

std::vector<AnnotationRecord> read_annotations(const std::filesystem::path& path);

// --- y-t slice diagnostic ----------------------------------------------------

struct SliceImage {
    std::size_t height = 0;   // rows: y
    std::size_t width = 0;    // columns: t
    std::vector<std::uint8_t> pixels; // row-major
};

// Raw slice of a [F, H, W] video at column x: out[y][t] = video[t][y][x].
TensorF32 yt_slice_raw(const TensorF32& video, std::size_t x);

// Same slice, min-max normalized over the slice to 8-bit grayscale. A flat
// slice maps to zeros.
SliceImage yt_slice(const TensorF32& video, std::size_t x);

// Binary PGM (P5), maxval 255.
void write_pgm(const std::filesystem::path& path, const SliceImage& image);

// --- seam diagnostics ---------------------------------------------------------

struct SeamRatio {
    double value = 0.0;
    bool zero_denominator = false; // all interior differences vanished
};

// ||frame_0 - frame_{F-1}|| over the median interior adjacent-frame
// difference norm. Near 1 for seamless loops.
SeamRatio seam_ratio(const TensorF32& loop);

// Adjacent-frame differences of a [F, D] sequence; circular appends the
// wrap-around difference frame_0 - frame_{F-1}.
TensorF32 frame_velocity(const TensorF32& seq, bool circular);

} // namespace loopkit
