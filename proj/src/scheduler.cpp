#include "loopkit/scheduler.hpp"
#include "loopkit/errors.hpp"
#include "loopkit/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>
#include <vector>

namespace loopkit {

namespace {

TensorF32 extract_window(const LatentRing& ring, std::int64_t start, std::size_t window) {
    const std::size_t dim = ring.latent_dim();
    std::vector<float> data(window * dim);
    for (std::size_t j = 0; j < window; ++j) {
        auto row = ring.frame(start + static_cast<std::int64_t>(j));
        std::memcpy(data.data() + j * dim, row.data(), dim * sizeof(float));
    }
    return TensorF32({window, dim}, std::move(data));
}

// Deterministic update to the t-1 latent. Coefficients and the per-element
// arithmetic run in double; storage stays float32.
std::vector<float> update_window(const TensorF32& window, const TensorF32& eps,
                                 int t, const NoiseSchedule& sched) {
    const double a_t = std::sqrt(sched.alpha_bar[t]);
    const double b_t = std::sqrt(1.0 - sched.alpha_bar[t]);
    const double ab_prev = sched.alpha_bar_prev(t);
    const double a_p = std::sqrt(ab_prev);
    const double b_p = std::sqrt(1.0 - ab_prev);

    std::vector<float> out(window.size());
    for (std::size_t i = 0; i < window.size(); ++i) {
        const double x = static_cast<double>(window[i]);
        const double e = static_cast<double>(eps[i]);
        const double x0_hat = (x - b_t * e) / a_t;
        out[i] = static_cast<float>(a_p * x0_hat + b_p * e);
    }
    return out;
}

} // namespace

LatentRing denoise_step(const LatentRing& ring, int t, const NoiseSchedule& sched,
                        const Denoiser& denoiser, const SegmentPlan& plan,
                        std::span<const float> reference, int n_threads) {
    plan.validate();
    if (plan.frame_count != ring.frame_count())
        throw ParamError("denoise_step: plan frame count does not match ring");
    if (t < 0 || t >= sched.steps())
        throw ParamError("denoise_step: timestep out of schedule range");
    if (reference.size() != ring.latent_dim())
        throw ShapeError("denoise_step: reference length must equal latent dim");

    const std::size_t count = plan.segment_count();
    const std::size_t window = plan.window;
    const std::size_t dim = ring.latent_dim();
    const std::size_t frames = plan.frame_count;

    std::vector<std::vector<float>> seg_out(count);
    auto run_segment = [&](std::size_t k) {
        TensorF32 win = extract_window(ring, plan.starts[k], window);
        StepContext ctx{t, plan.starts[k], frames};
        TensorF32 eps = denoiser.predict_eps(win, ctx, reference);
        if (!eps.same_dims(win))
            throw ContractError("denoiser returned a window of the wrong shape");
        seg_out[k] = update_window(win, eps, t, sched);
    };

    const int workers = std::clamp<int>(n_threads, 1, static_cast<int>(count));
    if (workers <= 1) {
        for (std::size_t k = 0; k < count; ++k) run_segment(k);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t k = next.fetch_add(1);
                    if (k >= count) return;
                    try {
                        run_segment(k);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        return;
                    }
                }
            });
        }
        for (auto& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
    }

    // Fixed-order fused write-back. Every position receives either one full
    // write or two complementary ones, accumulated in double.
    std::vector<double> acc(frames * dim, 0.0);
    for (std::size_t k = 0; k < count; ++k) {
        for (std::size_t j = 0; j < window; ++j) {
            const std::size_t p =
                LatentRing::wrap_index(plan.starts[k] + static_cast<std::int64_t>(j), frames);
            const double w = fusion_weight_at(plan, j);
            const float* src = seg_out[k].data() + j * dim;
            double* dst = acc.data() + p * dim;
            for (std::size_t d = 0; d < dim; ++d) {
                dst[d] += w * static_cast<double>(src[d]);
            }
        }
    }

    std::vector<float> out(frames * dim);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<float>(acc[i]);
    return LatentRing(TensorF32({frames, dim}, std::move(out)));
}

LatentRing loop_denoise(LatentRing ring, const NoiseSchedule& sched,
                        const Denoiser& denoiser, const SegmentPlan& plan,
                        int n_offset, std::span<const float> reference,
                        int n_threads) {
    const int steps = sched.steps();
    for (int t = steps - 1; t >= 0; --t) {
        const int step_index = (steps - 1) - t;
        SegmentPlan shifted = shift_plan(plan, step_index, n_offset);
        ring = denoise_step(ring, t, sched, denoiser, shifted, reference, n_threads);
    }
    return ring;
}

LoopTemplate generate_loop(std::size_t frame_count, std::size_t latent_dim,
                           const NoiseSchedule& sched, const Denoiser& denoiser,
                           const SchedulerParams& params,
                           std::span<const float> reference, std::uint64_t seed,
                           int n_threads) {
    SegmentPlan plan = plan_segments(frame_count, params);
    if (reference.size() != latent_dim)
        throw ShapeError("generate_loop: reference length must equal latent dim");

    SeededRng rng(seed);
    std::vector<float> noise(frame_count * latent_dim);
    for (float& v : noise) v = static_cast<float>(rng.next_normal());
    LatentRing ring(TensorF32({frame_count, latent_dim}, std::move(noise)));

    ring = loop_denoise(std::move(ring), sched, denoiser, plan, params.n_offset,
                        reference, n_threads);

    LoopTemplate tmpl;
    tmpl.frames = std::move(ring).take_tensor();
    tmpl.frames.require_finite("generated loop");
    tmpl.seed = seed;
    tmpl.params = params;
    tmpl.steps = sched.steps();
    tmpl.schedule_id = sched.id;
    return tmpl;
}

TensorF32 reverse_playback_baseline(const TensorF32& clip) {
    if (clip.ndim() != 2) throw ShapeError("baseline expects a [L, D] clip");
    const std::size_t length = clip.dim(0);
    const std::size_t dim = clip.dim(1);
    if (length < 2) throw ParamError("baseline needs at least 2 frames");

    std::vector<float> out((2 * length - 2) * dim);
    std::memcpy(out.data(), clip.data(), length * dim * sizeof(float));
    std::size_t row = length;
    for (std::size_t i = length - 2; i >= 1; --i, ++row) {
        std::memcpy(out.data() + row * dim, clip.data() + i * dim, dim * sizeof(float));
    }
    return TensorF32({2 * length - 2, dim}, std::move(out));
}

void save_template(const std::filesystem::path& ltns_path, const LoopTemplate& tmpl) {
    write_ltns(ltns_path, tmpl.frames);

    nlohmann::json sidecar{
        {"seed", tmpl.seed},
        {"W", tmpl.params.window},
        {"n_overlap", tmpl.params.n_overlap},
        {"n_offset", tmpl.params.n_offset},
        {"T", tmpl.steps},
        {"schedule_id", tmpl.schedule_id},
    };
    std::filesystem::path sidecar_path = ltns_path;
    sidecar_path.replace_extension(".json");
    std::ofstream out(sidecar_path, std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + sidecar_path.string());
    out << sidecar.dump(2) << "\n";
    if (!out) throw IoError("short write: " + sidecar_path.string());
}

LoopTemplate load_template(const std::filesystem::path& ltns_path) {
    LoopTemplate tmpl;
    tmpl.frames = read_ltns(ltns_path);
    if (tmpl.frames.ndim() != 2) throw IoError("template tensor must be [F, D]");

    std::filesystem::path sidecar_path = ltns_path;
    sidecar_path.replace_extension(".json");
    std::ifstream in(sidecar_path);
    if (!in) throw IoError("cannot open: " + sidecar_path.string());
    nlohmann::json sidecar;
    try {
        in >> sidecar;
        tmpl.seed = sidecar.at("seed").get<std::uint64_t>();
        tmpl.params.window = sidecar.at("W").get<int>();
        tmpl.params.n_overlap = sidecar.at("n_overlap").get<int>();
        tmpl.params.n_offset = sidecar.at("n_offset").get<int>();
        tmpl.steps = sidecar.at("T").get<int>();
        tmpl.schedule_id = sidecar.at("schedule_id").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw IoError("bad template sidecar " + sidecar_path.string() + ": " + e.what());
    }
    return tmpl;
}

} // namespace loopkit
