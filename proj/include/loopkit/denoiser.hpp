#pragma once

#include "loopkit/tensor.hpp"

#include <cstdint>
#include <span>

namespace loopkit {

// Where a window sits while being denoised. ring_start is the ring index of
// the window's first frame; position-free denoisers ignore it.
struct StepContext {
    int t = 0;
    std::int64_t ring_start = 0;
    std::size_t ring_frames = 0;
};

// A segment-level eps predictor. Implementations must be deterministic given
// identical inputs and safely callable from multiple threads at once.
class Denoiser {
public:
    virtual ~Denoiser() = default;

    // window is [frames, D]; the result must have identical dims. reference
    // is a conditioning latent of length D, passed through untouched by the
    // scheduler.
    virtual TensorF32 predict_eps(const TensorF32& window, const StepContext& ctx,
                                  std::span<const float> reference) const = 0;
};

} // namespace loopkit
