#pragma once

#include <cstdint>
#include <vector>

namespace loopkit {

// Sampler configuration. window is the number of latents a denoiser call can
// handle; overlap and offset control the circular tiling.
struct SchedulerParams {
    int window = 0;
    int n_overlap = 4;
    int n_offset = 9;
    bool deterministic_update = true;

    void validate() const;
};

// Partition of a ring of F frame-latents into equal overlapping windows.
// starts holds the first ring index of each segment in fusion order;
// consecutive segments (circularly, last wrapping onto first) share exactly
// n_overlap positions.
struct SegmentPlan {
    std::size_t frame_count = 0;   // F
    std::size_t window = 0;        // latents per segment
    std::size_t n_overlap = 0;
    std::vector<std::int64_t> starts;

    std::size_t segment_count() const { return starts.size(); }
    std::size_t stride() const { return window - n_overlap; }

    void validate() const;
};

// Builds the canonical plan with starts [0, stride, 2*stride, ...].
// If params.window >= F the plan is a single full-ring segment. Otherwise F
// must be a multiple of stride = window - n_overlap; a PlanningError carrying
// the two nearest tileable F values is thrown when it is not.
SegmentPlan plan_segments(std::size_t frame_count, const SchedulerParams& params);

// Rotates every start by step_index * n_offset positions (mod F). Window and
// overlap are untouched; list order is preserved. A single full-ring segment
// is returned unchanged: there is no grouping to vary, and rotating it would
// only perturb the window framing.
SegmentPlan shift_plan(const SegmentPlan& plan, int step_index, int n_offset);

// Blend ramp for the incoming segment across an overlap region: position i
// (0-based along the incoming segment's reading direction) gets weight
// (i+1)/(n_overlap+1); the value already written keeps the complement.
std::vector<double> fusion_weights(int n_overlap);

// Blend coefficient of window position j when the segment is written back:
// the ramp over the head overlap, its complement over the tail overlap, and
// 1 in between. At every doubly-covered ring position the two coefficients
// pair up to exactly 1.
double fusion_weight_at(const SegmentPlan& plan, std::size_t j);

} // namespace loopkit
