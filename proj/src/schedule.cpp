#include "loopkit/schedule.hpp"
#include "loopkit/errors.hpp"

#include <cmath>
#include <sstream>

namespace loopkit {

NoiseSchedule linear_schedule(int steps, double beta_start, double beta_end) {
    if (steps < 1) throw ParamError("schedule needs at least one step");
    if (!(beta_start > 0.0) || !(beta_start <= beta_end) || !(beta_end < 1.0))
        throw ParamError("schedule requires 0 < beta_start <= beta_end < 1");

    NoiseSchedule s;
    s.beta.resize(static_cast<std::size_t>(steps));
    s.alpha_bar.resize(static_cast<std::size_t>(steps));
    double running = 1.0;
    for (int t = 0; t < steps; ++t) {
        double frac = steps > 1 ? static_cast<double>(t) / (steps - 1) : 0.0;
        s.beta[t] = beta_start + (beta_end - beta_start) * frac;
        running *= 1.0 - s.beta[t];
        s.alpha_bar[t] = running;
    }

    std::ostringstream id;
    id << "linear:T=" << steps << ":b0=" << beta_start << ":b1=" << beta_end;
    s.id = id.str();
    return s;
}

TensorF32 add_noise(const TensorF32& x0, int t, const NoiseSchedule& sched,
                    const TensorF32& eps) {
    if (!x0.same_dims(eps)) throw ShapeError("add_noise: x0 and eps dims differ");
    if (t < 0 || t >= sched.steps())
        throw ParamError("add_noise: timestep out of schedule range");

    const double a = std::sqrt(sched.alpha_bar[t]);
    const double b = std::sqrt(1.0 - sched.alpha_bar[t]);
    std::vector<float> out(x0.size());
    for (std::size_t i = 0; i < x0.size(); ++i) {
        out[i] = static_cast<float>(a * static_cast<double>(x0[i]) +
                                    b * static_cast<double>(eps[i]));
    }
    return TensorF32(x0.dims(), std::move(out));
}

} // namespace loopkit
