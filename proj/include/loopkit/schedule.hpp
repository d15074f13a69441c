#pragma once

#include "loopkit/tensor.hpp"

#include <string>
#include <vector>

namespace loopkit {

// Variance-preserving forward-process schedule: beta[t] in (0,1) nondecreasing,
// alpha_bar[t] the running product of (1 - beta[s]) for s <= t.
struct NoiseSchedule {
    std::vector<double> beta;
    std::vector<double> alpha_bar;
    std::string id;

    int steps() const { return static_cast<int>(beta.size()); }

    // alpha_bar one step earlier; defined as 1 at t == 0 so the final update
    // lands on the clean estimate.
    double alpha_bar_prev(int t) const { return t > 0 ? alpha_bar[t - 1] : 1.0; }
};

// beta[t] linearly interpolated from beta_start to beta_end inclusive.
// Requires T >= 1 and 0 < beta_start <= beta_end < 1.
NoiseSchedule linear_schedule(int steps, double beta_start, double beta_end);

// q(x_t | x_0): sqrt(alpha_bar[t]) * x0 + sqrt(1 - alpha_bar[t]) * eps.
TensorF32 add_noise(const TensorF32& x0, int t, const NoiseSchedule& sched,
                    const TensorF32& eps);

} // namespace loopkit
