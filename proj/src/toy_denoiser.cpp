#include "loopkit/toy_denoiser.hpp"
#include "loopkit/errors.hpp"
#include "loopkit/rng.hpp"

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

namespace loopkit {

LatentRing make_synthetic_loop(const SyntheticLoopSpec& spec) {
    if (spec.frame_count < 1 || spec.latent_dim < 1)
        throw ParamError("synthetic loop needs frame_count >= 1 and latent_dim >= 1");
    if (spec.harmonics < 1) throw ParamError("synthetic loop needs harmonics >= 1");
    if (!std::isfinite(spec.amplitude) || spec.amplitude < 0.0)
        throw ParamError("synthetic loop amplitude must be finite and >= 0");

    const std::size_t frames = spec.frame_count;
    const std::size_t dim = spec.latent_dim;

    // One (cos, sin) coefficient pair per channel and harmonic, drawn in a
    // fixed channel-major order. The 1/k falloff keeps the mixture smooth.
    SeededRng rng(spec.seed);
    std::vector<double> coef_cos(dim * spec.harmonics);
    std::vector<double> coef_sin(dim * spec.harmonics);
    for (std::size_t d = 0; d < dim; ++d) {
        for (int k = 1; k <= spec.harmonics; ++k) {
            const double scale = spec.amplitude / static_cast<double>(k);
            coef_cos[d * spec.harmonics + (k - 1)] = rng.next_normal() * scale;
            coef_sin[d * spec.harmonics + (k - 1)] = rng.next_normal() * scale;
        }
    }

    std::vector<float> data(frames * dim);
    const double base = 2.0 * std::numbers::pi / static_cast<double>(frames);
    for (std::size_t f = 0; f < frames; ++f) {
        for (std::size_t d = 0; d < dim; ++d) {
            double v = 0.0;
            for (int k = 1; k <= spec.harmonics; ++k) {
                const double phase = base * static_cast<double>(k) * static_cast<double>(f);
                v += coef_cos[d * spec.harmonics + (k - 1)] * std::cos(phase) +
                     coef_sin[d * spec.harmonics + (k - 1)] * std::sin(phase);
            }
            data[f * dim + d] = static_cast<float>(v);
        }
    }
    return LatentRing(TensorF32({frames, dim}, std::move(data)));
}

namespace {

class OracleDenoiser final : public Denoiser {
public:
    OracleDenoiser(LatentRing target, NoiseSchedule sched)
        : target_(std::move(target)), sched_(std::move(sched)) {}

    TensorF32 predict_eps(const TensorF32& window, const StepContext& ctx,
                          std::span<const float> /*reference*/) const override {
        if (ctx.t < 0 || ctx.t >= sched_.steps())
            throw ParamError("oracle denoiser: timestep out of schedule range");
        if (window.ndim() != 2 || window.dim(1) != target_.latent_dim())
            throw ParamError("oracle denoiser: window dim does not match target");

        const double a = std::sqrt(sched_.alpha_bar[ctx.t]);
        const double b = std::sqrt(1.0 - sched_.alpha_bar[ctx.t]);
        const std::size_t dim = target_.latent_dim();
        std::vector<float> eps(window.size());
        for (std::size_t j = 0; j < window.dim(0); ++j) {
            auto x0 = target_.frame(ctx.ring_start + static_cast<std::int64_t>(j));
            for (std::size_t d = 0; d < dim; ++d) {
                const double x = static_cast<double>(window[j * dim + d]);
                eps[j * dim + d] =
                    static_cast<float>((x - a * static_cast<double>(x0[d])) / b);
            }
        }
        return TensorF32(window.dims(), std::move(eps));
    }

private:
    LatentRing target_;
    NoiseSchedule sched_;
};

// Folds an out-of-range index back into [0, n) by mirror reflection.
std::size_t reflect_index(std::int64_t i, std::size_t n) {
    if (n == 1) return 0;
    const std::int64_t period = 2 * static_cast<std::int64_t>(n) - 2;
    std::int64_t m = ((i % period) + period) % period;
    if (m >= static_cast<std::int64_t>(n)) m = period - m;
    return static_cast<std::size_t>(m);
}

class SmoothingDenoiser final : public Denoiser {
public:
    SmoothingDenoiser(int kernel_radius, NoiseSchedule sched)
        : radius_(kernel_radius), sched_(std::move(sched)) {
        if (kernel_radius < 0) throw ParamError("kernel radius must be >= 0");
    }

    TensorF32 predict_eps(const TensorF32& window, const StepContext& ctx,
                          std::span<const float> /*reference*/) const override {
        if (ctx.t < 0 || ctx.t >= sched_.steps())
            throw ParamError("smoothing denoiser: timestep out of schedule range");
        if (window.ndim() != 2)
            throw ParamError("smoothing denoiser: window must be [frames, D]");

        const std::size_t frames = window.dim(0);
        const std::size_t dim = window.dim(1);
        const double scale = std::sqrt(1.0 - sched_.alpha_bar[ctx.t]);
        const double inv_count = 1.0 / static_cast<double>(2 * radius_ + 1);

        std::vector<float> eps(window.size());
        for (std::size_t j = 0; j < frames; ++j) {
            for (std::size_t d = 0; d < dim; ++d) {
                double avg = 0.0;
                for (int o = -radius_; o <= radius_; ++o) {
                    const std::size_t src =
                        reflect_index(static_cast<std::int64_t>(j) + o, frames);
                    avg += static_cast<double>(window[src * dim + d]);
                }
                avg *= inv_count;
                eps[j * dim + d] = static_cast<float>(
                    (static_cast<double>(window[j * dim + d]) - avg) * scale);
            }
        }
        return TensorF32(window.dims(), std::move(eps));
    }

private:
    int radius_;
    NoiseSchedule sched_;
};

} // namespace

std::unique_ptr<Denoiser> oracle_denoiser(LatentRing target, NoiseSchedule sched) {
    return std::make_unique<OracleDenoiser>(std::move(target), std::move(sched));
}

std::unique_ptr<Denoiser> smoothing_denoiser(int kernel_radius, NoiseSchedule sched) {
    return std::make_unique<SmoothingDenoiser>(kernel_radius, std::move(sched));
}

} // namespace loopkit
