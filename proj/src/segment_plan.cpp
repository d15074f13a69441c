#include "loopkit/segment_plan.hpp"
#include "loopkit/errors.hpp"

#include <sstream>

namespace loopkit {

void SchedulerParams::validate() const {
    if (window < 1) throw ParamError("window must be >= 1");
    if (n_overlap < 0 || n_overlap >= window)
        throw ParamError("n_overlap must satisfy 0 <= n_overlap < window");
    if (n_offset < 1) throw ParamError("n_offset must be >= 1");
    if (!deterministic_update)
        throw ParamError("only the deterministic sampler update is provided");
}

void SegmentPlan::validate() const {
    if (frame_count < 1) throw ParamError("plan: frame_count must be >= 1");
    if (window < 1 || window > frame_count)
        throw ParamError("plan: window must be in [1, frame_count]");
    if (starts.empty()) throw ParamError("plan: no segments");

    auto f = static_cast<std::int64_t>(frame_count);
    for (std::int64_t s : starts) {
        if (s < 0 || s >= f) throw ParamError("plan: start out of [0, F)");
    }

    if (starts.size() == 1) {
        if (window != frame_count || n_overlap != 0)
            throw ParamError("plan: a single segment must span the whole ring");
        return;
    }

    if (n_overlap >= window) throw ParamError("plan: n_overlap must be < window");
    auto step = static_cast<std::int64_t>(stride());
    if (static_cast<std::size_t>(step) * starts.size() != frame_count)
        throw ParamError("plan: segments do not tile the ring");
    for (std::size_t k = 0; k + 1 < starts.size(); ++k) {
        std::int64_t gap = ((starts[k + 1] - starts[k]) % f + f) % f;
        if (gap != step) throw ParamError("plan: uneven segment spacing");
    }
}

SegmentPlan plan_segments(std::size_t frame_count, const SchedulerParams& params) {
    if (frame_count < 1) throw ParamError("frame_count must be >= 1");
    params.validate();

    SegmentPlan plan;
    plan.frame_count = frame_count;

    if (static_cast<std::size_t>(params.window) >= frame_count) {
        plan.window = frame_count;
        plan.n_overlap = 0;
        plan.starts = {0};
        return plan;
    }

    std::size_t stride = static_cast<std::size_t>(params.window - params.n_overlap);
    if (static_cast<std::size_t>(params.n_overlap) > stride) {
        // More than pairwise coverage would make the overlap bookkeeping
        // ill-defined; require overlap <= stride, i.e. window >= 2*overlap.
        throw ParamError("n_overlap exceeds stride; window must be >= 2*n_overlap");
    }
    if (frame_count % stride != 0) {
        std::size_t lower = (frame_count / stride) * stride;
        std::size_t upper = lower + stride;
        std::ostringstream msg;
        msg << "frame count " << frame_count << " is not tileable by stride "
            << stride << " (window " << params.window << ", overlap "
            << params.n_overlap << "); nearest tileable frame counts are "
            << lower << " and " << upper;
        throw PlanningError(msg.str(), static_cast<int>(lower), static_cast<int>(upper));
    }

    plan.window = static_cast<std::size_t>(params.window);
    plan.n_overlap = static_cast<std::size_t>(params.n_overlap);
    std::size_t count = frame_count / stride;
    plan.starts.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        plan.starts.push_back(static_cast<std::int64_t>(k * stride));
    }
    return plan;
}

SegmentPlan shift_plan(const SegmentPlan& plan, int step_index, int n_offset) {
    if (step_index < 0) throw ParamError("step_index must be >= 0");
    // A single full-ring segment has no grouping to vary; rotating it would
    // only move the window framing seen by the denoiser.
    if (plan.segment_count() == 1 && plan.window == plan.frame_count) return plan;
    SegmentPlan shifted = plan;
    auto f = static_cast<std::int64_t>(plan.frame_count);
    std::int64_t delta =
        (static_cast<std::int64_t>(step_index) * static_cast<std::int64_t>(n_offset)) % f;
    for (std::int64_t& s : shifted.starts) {
        s = ((s + delta) % f + f) % f;
    }
    return shifted;
}

std::vector<double> fusion_weights(int n_overlap) {
    if (n_overlap < 0) throw ParamError("n_overlap must be >= 0");
    std::vector<double> w(static_cast<std::size_t>(n_overlap));
    for (int i = 0; i < n_overlap; ++i) {
        w[i] = static_cast<double>(i + 1) / static_cast<double>(n_overlap + 1);
    }
    return w;
}

double fusion_weight_at(const SegmentPlan& plan, std::size_t j) {
    if (plan.segment_count() == 1 || plan.n_overlap == 0) return 1.0;
    const double denom = static_cast<double>(plan.n_overlap + 1);
    if (j < plan.n_overlap) {
        // head of this segment: it is the incoming side of that overlap
        return static_cast<double>(j + 1) / denom;
    }
    if (j >= plan.stride()) {
        // tail: the successor segment is incoming there, keep the complement
        return 1.0 - static_cast<double>(j - plan.stride() + 1) / denom;
    }
    return 1.0;
}

} // namespace loopkit
