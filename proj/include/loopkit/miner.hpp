#pragma once

#include "loopkit/tensor.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace loopkit {

enum class ShoulderSide { left, right, none };

std::string shoulder_side_name(ShoulderSide s);
ShoulderSide shoulder_side_from_name(const std::string& name);

// One contiguous shot with its dominant face identity and, once manually
// annotated, the side the foreground shoulder sits on.
struct ShotRecord {
    std::string shot_id;
    std::int64_t start_frame = 0;
    std::int64_t end_frame = 0;
    std::string identity;
    std::optional<ShoulderSide> shoulder_side;

    void validate() const;
};

// Triple of consecutive shot indices forming an A-B-A perspective loop.
using AbaTriple = std::array<std::size_t, 3>;

// The reverse-shot pair mined from a loop: first is the B shot, second the
// returning A shot.
struct AbaPair {
    ShotRecord first;
    ShotRecord second;
    std::size_t loop_index = 0;
};

// Frame index i is a cut iff ||frame_i - frame_{i-1}|| / sqrt(D) exceeds the
// threshold. Returned ascending.
std::vector<std::size_t> detect_cuts(const TensorF32& frames, double threshold);

// All consecutive triples (i, i+1, i+2) whose outer shots share an identity
// that differs from the middle one. Overlapping triples are all reported.
std::vector<AbaTriple> find_aba_loops(const std::vector<ShotRecord>& shots);

std::vector<AbaPair> extract_pairs(const std::vector<ShotRecord>& shots,
                                   const std::vector<AbaTriple>& loops);

// Outcome of shot ordering: either the pair arranged as (right-shouldered,
// left-shouldered) or a rejection reason. Missing annotations are a
// ValidationError, not a rejection.
struct OrderOutcome {
    bool accepted = false;
    ShotRecord shot1;   // shoulder on the right
    ShotRecord shot2;   // shoulder on the left
    std::string reason; // set when rejected
};

OrderOutcome order_shots(const AbaPair& pair);

std::vector<ShotRecord> read_shots(const std::filesystem::path& path);

} // namespace loopkit
