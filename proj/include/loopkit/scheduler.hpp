#pragma once

#include "loopkit/denoiser.hpp"
#include "loopkit/ring.hpp"
#include "loopkit/schedule.hpp"
#include "loopkit/segment_plan.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

namespace loopkit {

// A finished seamless loop plus the knobs that produced it.
struct LoopTemplate {
    TensorF32 frames;        // [F, D]
    std::uint64_t seed = 0;
    SchedulerParams params;
    int steps = 0;
    std::string schedule_id;

    std::size_t frame_count() const { return frames.dim(0); }
    std::size_t latent_dim() const { return frames.dim(1); }
};

// One reverse-diffusion step over the whole ring.
//
// Each segment of the plan is cut out of the ring (wrapping), handed to the
// denoiser, and converted to the t-1 latent with the deterministic update
//   x0_hat = (x_t - sqrt(1 - ab[t]) * eps) / sqrt(ab[t])
//   x_{t-1} = sqrt(ab[t-1]) * x0_hat + sqrt(1 - ab[t-1]) * eps
// (ab[-1] := 1). Updated segments are written back with progressive fusion:
// wherever circularly-consecutive segments overlap, the successor's value is
// ramped in with fusion_weights and the predecessor keeps the complement.
// Segments may be evaluated on up to n_threads workers; the write-back is a
// fixed-order reduction, so the result does not depend on n_threads.
LatentRing denoise_step(const LatentRing& ring, int t, const NoiseSchedule& sched,
                        const Denoiser& denoiser, const SegmentPlan& plan,
                        std::span<const float> reference, int n_threads = 1);

// Runs the full reverse process from a caller-supplied noise ring. The plan
// given here is the step-0 arrangement; step k uses shift_plan(plan, k,
// n_offset).
LatentRing loop_denoise(LatentRing ring, const NoiseSchedule& sched,
                        const Denoiser& denoiser, const SegmentPlan& plan,
                        int n_offset, std::span<const float> reference,
                        int n_threads = 1);

// Draws x_T from the seeded standard normal (frame-major order) and runs
// loop_denoise over the canonical plan. Fully deterministic given
// (seed, params, schedule, denoiser).
LoopTemplate generate_loop(std::size_t frame_count, std::size_t latent_dim,
                           const NoiseSchedule& sched, const Denoiser& denoiser,
                           const SchedulerParams& params,
                           std::span<const float> reference, std::uint64_t seed,
                           int n_threads = 1);

// Forward-then-backward play of a clip: frames 0..L-1 followed by L-2..1.
// The result loops by construction but reverses velocity at the turn points.
TensorF32 reverse_playback_baseline(const TensorF32& clip);

// LoopTemplate container: the frames as LTNS at `ltns_path` plus a JSON
// sidecar (seed, W, n_overlap, n_offset, T, schedule_id) with the same stem
// and a .json extension.
void save_template(const std::filesystem::path& ltns_path, const LoopTemplate& tmpl);
LoopTemplate load_template(const std::filesystem::path& ltns_path);

} // namespace loopkit
