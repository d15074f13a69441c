#include "loopkit/miner.hpp"
#include "loopkit/errors.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>

namespace loopkit {

std::string shoulder_side_name(ShoulderSide s) {
    switch (s) {
    case ShoulderSide::left: return "left";
    case ShoulderSide::right: return "right";
    case ShoulderSide::none: return "none";
    }
    throw ParamError("bad shoulder side enum");
}

ShoulderSide shoulder_side_from_name(const std::string& name) {
    if (name == "left") return ShoulderSide::left;
    if (name == "right") return ShoulderSide::right;
    if (name == "none") return ShoulderSide::none;
    throw ValidationError("unknown shoulder side \"" + name + "\"");
}

void ShotRecord::validate() const {
    if (start_frame >= end_frame)
        throw ValidationError("shot " + shot_id + ": start_frame must be < end_frame");
    if (identity.empty())
        throw ValidationError("shot " + shot_id + ": identity must be nonempty");
}

std::vector<std::size_t> detect_cuts(const TensorF32& frames, double threshold) {
    if (frames.ndim() != 2) throw ShapeError("detect_cuts expects [N, D] frames");
    const std::size_t n = frames.dim(0);
    const std::size_t dim = frames.dim(1);
    if (n < 2) throw ParamError("detect_cuts needs at least 2 frames");
    if (!(threshold > 0.0)) throw ParamError("threshold must be > 0");

    const double norm = std::sqrt(static_cast<double>(dim));
    std::vector<std::size_t> cuts;
    for (std::size_t i = 1; i < n; ++i) {
        double sum = 0.0;
        const float* prev = frames.data() + (i - 1) * dim;
        const float* cur = frames.data() + i * dim;
        for (std::size_t d = 0; d < dim; ++d) {
            const double diff = static_cast<double>(cur[d]) - static_cast<double>(prev[d]);
            sum += diff * diff;
        }
        if (std::sqrt(sum) / norm > threshold) cuts.push_back(i);
    }
    return cuts;
}

std::vector<AbaTriple> find_aba_loops(const std::vector<ShotRecord>& shots) {
    std::vector<AbaTriple> loops;
    if (shots.size() < 3) return loops;
    for (std::size_t i = 0; i + 2 < shots.size(); ++i) {
        const std::string& a = shots[i].identity;
        const std::string& b = shots[i + 1].identity;
        const std::string& c = shots[i + 2].identity;
        if (a == c && a != b) loops.push_back({i, i + 1, i + 2});
    }
    return loops;
}

std::vector<AbaPair> extract_pairs(const std::vector<ShotRecord>& shots,
                                   const std::vector<AbaTriple>& loops) {
    std::vector<AbaPair> pairs;
    pairs.reserve(loops.size());
    for (const AbaTriple& loop : loops) {
        if (loop[2] >= shots.size())
            throw ParamError("loop triple indexes past the shot list");
        AbaPair pair;
        pair.first = shots[loop[1]];
        pair.second = shots[loop[2]];
        pair.loop_index = loop[0];
        pairs.push_back(std::move(pair));
    }
    return pairs;
}

OrderOutcome order_shots(const AbaPair& pair) {
    if (!pair.first.shoulder_side.has_value())
        throw ValidationError("shot " + pair.first.shot_id + " has no shoulder annotation");
    if (!pair.second.shoulder_side.has_value())
        throw ValidationError("shot " + pair.second.shot_id + " has no shoulder annotation");

    const ShoulderSide s1 = *pair.first.shoulder_side;
    const ShoulderSide s2 = *pair.second.shoulder_side;

    OrderOutcome outcome;
    if (s1 == ShoulderSide::none || s2 == ShoulderSide::none) {
        outcome.reason = "not an over-the-shoulder pair";
        return outcome;
    }
    if (s1 == s2) {
        outcome.reason = "same-side shoulders";
        return outcome;
    }
    outcome.accepted = true;
    if (s1 == ShoulderSide::right) {
        outcome.shot1 = pair.first;
        outcome.shot2 = pair.second;
    } else {
        outcome.shot1 = pair.second;
        outcome.shot2 = pair.first;
    }
    return outcome;
}

std::vector<ShotRecord> read_shots(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("bad shots JSON " + path.string() + ": " + e.what());
    }

    std::vector<ShotRecord> shots;
    try {
        for (const auto& js : doc) {
            ShotRecord rec;
            rec.shot_id = js.at("shot_id").get<std::string>();
            rec.start_frame = js.at("start_frame").get<std::int64_t>();
            rec.end_frame = js.at("end_frame").get<std::int64_t>();
            rec.identity = js.at("identity").get<std::string>();
            if (js.contains("shoulder_side") && !js.at("shoulder_side").is_null()) {
                rec.shoulder_side =
                    shoulder_side_from_name(js.at("shoulder_side").get<std::string>());
            }
            rec.validate();
            shots.push_back(std::move(rec));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("bad shot schema in " + path.string() + ": " + e.what());
    }
    return shots;
}

} // namespace loopkit
