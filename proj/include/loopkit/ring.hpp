#pragma once

#include "loopkit/errors.hpp"
#include "loopkit/tensor.hpp"

#include <cstdint>
#include <span>

namespace loopkit {

// F frame-latents of width D arranged on a circle. Frame index arithmetic is
// modular, so any integer (negative included) addresses a frame.
class LatentRing {
public:
    LatentRing(std::size_t frame_count, std::size_t latent_dim)
        : frames_({frame_count, latent_dim}) {}

    explicit LatentRing(TensorF32 frames) : frames_(std::move(frames)) {
        if (frames_.ndim() != 2)
            throw ShapeError("latent ring expects a [F, D] tensor");
    }

    std::size_t frame_count() const { return frames_.dim(0); }
    std::size_t latent_dim() const { return frames_.dim(1); }

    static std::size_t wrap_index(std::int64_t i, std::size_t frame_count) {
        auto f = static_cast<std::int64_t>(frame_count);
        std::int64_t m = ((i % f) + f) % f;
        return static_cast<std::size_t>(m);
    }

    std::span<const float> frame(std::int64_t i) const {
        std::size_t row = wrap_index(i, frame_count());
        return {frames_.data() + row * latent_dim(), latent_dim()};
    }

    std::span<float> frame(std::int64_t i) {
        std::size_t row = wrap_index(i, frame_count());
        return {frames_.data() + row * latent_dim(), latent_dim()};
    }

    const TensorF32& tensor() const { return frames_; }
    TensorF32 take_tensor() && { return std::move(frames_); }

private:
    TensorF32 frames_;
};

} // namespace loopkit
