#include "loopkit/metrics.hpp"
#include "loopkit/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace loopkit {

void AnnotationRecord::validate() const {
    if (eye_left && !ots_left)
        throw ValidationError("sample " + sample_id +
                              ": eye_left set without ots_left");
    if (eye_right && !ots_right)
        throw ValidationError("sample " + sample_id +
                              ": eye_right set without ots_right");
}

namespace {

void require_tag_free(const std::string& text, const char* which) {
    if (text.empty())
        throw ValidationError(std::string(which) + " description must be nonempty");
    if (text.find("[LEFT]") != std::string::npos ||
        text.find("[RIGHT]") != std::string::npos)
        throw ValidationError(std::string(which) +
                              " description must not contain panel tags");
}

double half_score(bool left, bool right) {
    return (left ? 0.5 : 0.0) + (right ? 0.5 : 0.0);
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double row_distance(const float* a, const float* b, std::size_t dim) {
    double sum = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
        const double diff = static_cast<double>(a[d]) - static_cast<double>(b[d]);
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

} // namespace

std::string format_prompt(const PromptSpec& spec) {
    require_tag_free(spec.left_description, "left");
    require_tag_free(spec.right_description, "right");
    return "A two-panel image split in the center; [LEFT] " + spec.left_description +
           " [RIGHT] " + spec.right_description;
}

double score_ots(const AnnotationRecord& rec) {
    return half_score(rec.ots_left, rec.ots_right);
}

double score_180(const AnnotationRecord& rec) {
    return rec.rule180 ? 1.0 : 0.0;
}

bool rule180_from_layout(const LayoutRecord& rec) {
    return rec.shot1_main_side == LayoutRecord::Side::left &&
           rec.shot2_main_side == LayoutRecord::Side::right;
}

double score_eye(const AnnotationRecord& rec) {
    rec.validate();
    return half_score(rec.eye_left, rec.eye_right);
}

ScoreSummary aggregate_scores(const std::vector<AnnotationRecord>& records) {
    if (records.empty()) throw ParamError("no annotation records to aggregate");
    ScoreSummary sum;
    for (const AnnotationRecord& rec : records) {
        sum.ots += score_ots(rec);
        sum.rule180 += score_180(rec);
        sum.eye += score_eye(rec);
    }
    const double n = static_cast<double>(records.size());
    sum.ots /= n;
    sum.rule180 /= n;
    sum.eye /= n;
    return sum;
}

std::string format_score_table(const std::string& method, const ScoreSummary& s) {
    std::ostringstream out;
    // the degree sign is two bytes, so its column gets one extra pad byte
    out << std::left << std::setw(20) << "method" << std::setw(6) << "OTS"
        << std::setw(7) << "180\xC2\xB0" << "Eye\n";
    out << std::left << std::setw(20) << method << std::fixed << std::setprecision(2)
        << std::setw(6) << s.ots << std::setw(6) << s.rule180 << s.eye << "\n";
    return out.str();
}

std::vector<AnnotationRecord> read_annotations(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("bad annotations JSON " + path.string() + ": " + e.what());
    }

    std::vector<AnnotationRecord> records;
    try {
        for (const auto& jr : doc) {
            AnnotationRecord rec;
            rec.sample_id = jr.at("sample_id").get<std::string>();
            rec.ots_left = jr.at("ots_left").get<bool>();
            rec.ots_right = jr.at("ots_right").get<bool>();
            rec.rule180 = jr.at("rule180").get<bool>();
            rec.eye_left = jr.at("eye_left").get<bool>();
            rec.eye_right = jr.at("eye_right").get<bool>();
            rec.validate();
            records.push_back(std::move(rec));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("bad annotation schema in " + path.string() + ": " + e.what());
    }
    return records;
}

TensorF32 yt_slice_raw(const TensorF32& video, std::size_t x) {
    if (video.ndim() != 3) throw ShapeError("yt_slice expects [F, H, W] video");
    const std::size_t frames = video.dim(0);
    const std::size_t height = video.dim(1);
    const std::size_t width = video.dim(2);
    if (x >= width) throw ParamError("slice column out of range");

    std::vector<float> out(height * frames);
    for (std::size_t y = 0; y < height; ++y) {
        for (std::size_t t = 0; t < frames; ++t) {
            out[y * frames + t] = video[(t * height + y) * width + x];
        }
    }
    return TensorF32({height, frames}, std::move(out));
}

SliceImage yt_slice(const TensorF32& video, std::size_t x) {
    TensorF32 raw = yt_slice_raw(video, x);

    float lo = raw[0];
    float hi = raw[0];
    for (std::size_t i = 0; i < raw.size(); ++i) {
        lo = std::min(lo, raw[i]);
        hi = std::max(hi, raw[i]);
    }

    SliceImage image;
    image.height = raw.dim(0);
    image.width = raw.dim(1);
    image.pixels.resize(raw.size(), 0);
    if (hi > lo) {
        const double scale = 255.0 / (static_cast<double>(hi) - static_cast<double>(lo));
        for (std::size_t i = 0; i < raw.size(); ++i) {
            const double v = (static_cast<double>(raw[i]) - static_cast<double>(lo)) * scale;
            image.pixels[i] = static_cast<std::uint8_t>(std::lround(v));
        }
    }
    return image;
}

void write_pgm(const std::filesystem::path& path, const SliceImage& image) {
    if (image.pixels.size() != image.height * image.width)
        throw ShapeError("PGM: pixel count does not match dimensions");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << "P5\n" << image.width << " " << image.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(image.pixels.data()),
              static_cast<std::streamsize>(image.pixels.size()));
    if (!out) throw IoError("short write: " + path.string());
}

SeamRatio seam_ratio(const TensorF32& loop) {
    if (loop.ndim() != 2) throw ShapeError("seam_ratio expects a [F, D] loop");
    const std::size_t frames = loop.dim(0);
    const std::size_t dim = loop.dim(1);
    if (frames < 3) throw ParamError("seam_ratio needs at least 3 frames");

    const double seam =
        row_distance(loop.data(), loop.data() + (frames - 1) * dim, dim);
    std::vector<double> interior;
    interior.reserve(frames - 1);
    for (std::size_t i = 1; i < frames; ++i) {
        interior.push_back(
            row_distance(loop.data() + i * dim, loop.data() + (i - 1) * dim, dim));
    }

    SeamRatio r;
    const double med = median(std::move(interior));
    if (med == 0.0) {
        r.zero_denominator = true;
        r.value = std::numeric_limits<double>::infinity();
        return r;
    }
    r.value = seam / med;
    return r;
}

TensorF32 frame_velocity(const TensorF32& seq, bool circular) {
    if (seq.ndim() != 2) throw ShapeError("frame_velocity expects [F, D]");
    const std::size_t frames = seq.dim(0);
    const std::size_t dim = seq.dim(1);
    if (frames < 2) throw ParamError("frame_velocity needs at least 2 frames");

    const std::size_t count = circular ? frames : frames - 1;
    std::vector<float> out(count * dim);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t next = (i + 1) % frames;
        for (std::size_t d = 0; d < dim; ++d) {
            out[i * dim + d] = seq[next * dim + d] - seq[i * dim + d];
        }
    }
    return TensorF32({count, dim}, std::move(out));
}

} // namespace loopkit
