#pragma once

#include "loopkit/denoiser.hpp"
#include "loopkit/ring.hpp"
#include "loopkit/schedule.hpp"

#include <cstdint>
#include <memory>

namespace loopkit {

// Recipe for an exactly periodic test signal: every channel is a seeded
// mixture of the first `harmonics` Fourier modes on the ring.
struct SyntheticLoopSpec {
    std::size_t frame_count = 0;
    std::size_t latent_dim = 0;
    int harmonics = 1;
    double amplitude = 1.0;
    std::uint64_t seed = 0;
};

LatentRing make_synthetic_loop(const SyntheticLoopSpec& spec);

// Ground-truth eps predictor: inverts the forward process against a known
// target ring, using the window's ring placement from StepContext. Only
// meaningful inside scheduler tests; real denoisers never see the target.
std::unique_ptr<Denoiser> oracle_denoiser(LatentRing target, NoiseSchedule sched);

// Position-free test denoiser: eps_hat is the window minus its temporal
// moving average (reflective at window edges), scaled by sqrt(1 - ab[t]).
// Ignores ring placement, so it satisfies the rotation-equivariance premise.
std::unique_ptr<Denoiser> smoothing_denoiser(int kernel_radius, NoiseSchedule sched);

} // namespace loopkit
