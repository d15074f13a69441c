#include "loopkit/assembly.hpp"
#include "loopkit/errors.hpp"
#include "loopkit/manifest.hpp"
#include "loopkit/metrics.hpp"
#include "loopkit/miner.hpp"
#include "loopkit/rng.hpp"
#include "loopkit/scheduler.hpp"
#include "loopkit/toy_denoiser.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

namespace {

using nlohmann::json;

int default_threads() {
    if (const char* env = std::getenv("LOOPKIT_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

void write_json_file(const std::filesystem::path& path, const json& doc) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw loopkit::IoError("cannot open for writing: " + path.string());
    out << doc.dump(2) << "\n";
    if (!out) throw loopkit::IoError("short write: " + path.string());
}

struct GenLoopArgs {
    std::size_t frames = 0;
    std::size_t dim = 0;
    int window = 0;
    int overlap = 4;
    int offset = 9;
    int steps = 0;
    std::uint64_t seed = 0;
    std::string denoiser = "oracle";
    std::string target_path;
    int radius = 1;
    double beta_start = 1e-4;
    double beta_end = 0.02;
    int threads = default_threads();
    std::string out_path;
};

void run_gen_loop(const GenLoopArgs& a) {
    using namespace loopkit;

    NoiseSchedule sched = linear_schedule(a.steps, a.beta_start, a.beta_end);
    SchedulerParams params;
    params.window = a.window;
    params.n_overlap = a.overlap;
    params.n_offset = a.offset;

    RunManifest manifest;
    manifest.command = "gen-loop";
    manifest.seed = a.seed;
    manifest.params = {
        {"frames", a.frames},   {"dim", a.dim},
        {"window", a.window},   {"overlap", a.overlap},
        {"offset", a.offset},   {"steps", a.steps},
        {"denoiser", a.denoiser}, {"beta_start", a.beta_start},
        {"beta_end", a.beta_end},
    };

    std::unique_ptr<Denoiser> denoiser;
    std::vector<float> reference(a.dim, 0.0f);
    if (a.denoiser == "oracle") {
        LatentRing target = [&] {
            if (!a.target_path.empty()) {
                manifest.input_paths.push_back(a.target_path);
                manifest.params["target"] = a.target_path;
                TensorF32 t = read_ltns(a.target_path);
                if (t.ndim() != 2 || t.dim(0) != a.frames || t.dim(1) != a.dim)
                    throw ValidationError("target tensor must be [" +
                                          std::to_string(a.frames) + ", " +
                                          std::to_string(a.dim) + "]");
                return LatentRing(std::move(t));
            }
            manifest.params["target"] = "synthetic(harmonics=3,amplitude=1)";
            SyntheticLoopSpec spec{a.frames, a.dim, 3, 1.0, a.seed};
            return make_synthetic_loop(spec);
        }();
        // conditioning latent: a deterministic pick of one target frame
        SeededRng ref_rng(a.seed ^ 0x9E3779B97F4A7C15ull);
        const auto ref_index =
            static_cast<std::int64_t>(ref_rng.next_below(target.frame_count()));
        auto frame = target.frame(ref_index);
        reference.assign(frame.begin(), frame.end());
        manifest.params["reference_frame"] = ref_index;
        denoiser = oracle_denoiser(std::move(target), sched);
    } else if (a.denoiser == "smooth") {
        manifest.params["radius"] = a.radius;
        manifest.params["reference_frame"] = "zeros";
        denoiser = smoothing_denoiser(a.radius, sched);
    } else {
        throw ParamError("unknown denoiser \"" + a.denoiser +
                         "\" (expected oracle or smooth)");
    }

    LoopTemplate tmpl = generate_loop(a.frames, a.dim, sched, *denoiser, params,
                                      reference, a.seed, a.threads);
    save_template(a.out_path, tmpl);

    std::filesystem::path sidecar = a.out_path;
    sidecar.replace_extension(".json");
    manifest.output_paths = {a.out_path, sidecar.string()};
    write_manifest(a.out_path, manifest);
    std::cout << "wrote " << a.out_path << "\n";
}

struct AssembleArgs {
    std::string script_path;
    std::string template_a;
    std::string template_b;
    std::uint64_t seed = 0;
    std::string out_path;
};

void run_assemble(const AssembleArgs& a) {
    using namespace loopkit;

    std::vector<DialogueTurn> turns = read_script(a.script_path);

    LoopTemplate tmpl_a;
    tmpl_a.frames = read_ltns(a.template_a);
    LoopTemplate tmpl_b;
    tmpl_b.frames = read_ltns(a.template_b);
    if (tmpl_a.frames.ndim() != 2 || tmpl_b.frames.ndim() != 2)
        throw ValidationError("templates must be [F, D] tensors");

    TemplateLengths lengths{tmpl_a.frame_count(), tmpl_b.frame_count()};
    EditDecisionList edl = compile_timeline(turns, lengths, a.seed);
    RenderedSequence rendered = render_edl(edl, tmpl_a, tmpl_b);

    std::filesystem::path edl_path = a.out_path;
    edl_path += ".edl.json";
    std::filesystem::path track_path = a.out_path;
    track_path += ".shots.json";

    write_ltns(a.out_path, rendered.frames);
    write_edl(edl_path, edl);
    write_shot_track(track_path, rendered.shot_track);

    RunManifest manifest;
    manifest.command = "assemble";
    manifest.seed = a.seed;
    manifest.params = {{"script", a.script_path},
                       {"template_a", a.template_a},
                       {"template_b", a.template_b}};
    manifest.input_paths = {a.script_path, a.template_a, a.template_b};
    manifest.output_paths = {a.out_path, edl_path.string(), track_path.string()};
    write_manifest(a.out_path, manifest);
    std::cout << "wrote " << a.out_path << " (" << rendered.shot_track.size()
              << " frames)\n";
}

struct MineArgs {
    std::string shots_path;
    std::string out_path;
    std::string frames_path;
    double threshold = 1.0;
    std::string cuts_out;
};

void run_mine(const MineArgs& a) {
    using namespace loopkit;

    if (a.shots_path.empty() && a.frames_path.empty())
        throw ParamError("mine needs --shots and/or --frames");

    if (!a.frames_path.empty()) {
        if (a.cuts_out.empty())
            throw ParamError("--frames requires --cuts-out");
        TensorF32 frames = read_ltns(a.frames_path);
        std::vector<std::size_t> cuts = detect_cuts(frames, a.threshold);
        write_json_file(a.cuts_out, json{{"cuts", cuts}});

        RunManifest manifest;
        manifest.command = "mine";
        manifest.params = {{"threshold", a.threshold}, {"frames", a.frames_path}};
        manifest.input_paths = {a.frames_path};
        manifest.output_paths = {a.cuts_out};
        write_manifest(a.cuts_out, manifest);
        std::cout << "wrote " << a.cuts_out << " (" << cuts.size() << " cuts)\n";
    }

    if (!a.shots_path.empty()) {
        if (a.out_path.empty())
            throw ParamError("--shots requires --out");
        std::vector<ShotRecord> shots = read_shots(a.shots_path);
        std::vector<AbaTriple> loops = find_aba_loops(shots);
        std::vector<AbaPair> pairs = extract_pairs(shots, loops);

        json out_pairs = json::array();
        for (const AbaPair& pair : pairs) {
            OrderOutcome outcome = order_shots(pair);
            if (outcome.accepted) {
                out_pairs.push_back({{"shot1_id", outcome.shot1.shot_id},
                                     {"shot2_id", outcome.shot2.shot_id},
                                     {"loop_index", pair.loop_index},
                                     {"status", "ok"}});
            } else {
                out_pairs.push_back({{"shot1_id", pair.first.shot_id},
                                     {"shot2_id", pair.second.shot_id},
                                     {"loop_index", pair.loop_index},
                                     {"status", "rejected: " + outcome.reason}});
            }
        }
        write_json_file(a.out_path, json{{"pairs", out_pairs}});

        RunManifest manifest;
        manifest.command = "mine";
        manifest.params = {{"shots", a.shots_path}};
        manifest.input_paths = {a.shots_path};
        manifest.output_paths = {a.out_path};
        write_manifest(a.out_path, manifest);
        std::cout << "wrote " << a.out_path << " (" << out_pairs.size() << " pairs)\n";
    }
}

struct ScoreArgs {
    std::string annotations_path;
    std::string method = "annotated";
    std::string out_path;
};

void run_score(const ScoreArgs& a) {
    using namespace loopkit;

    std::vector<AnnotationRecord> records = read_annotations(a.annotations_path);
    ScoreSummary summary = aggregate_scores(records);
    std::cout << format_score_table(a.method, summary);

    if (!a.out_path.empty()) {
        write_json_file(a.out_path, json{{"method", a.method},
                                         {"ots", summary.ots},
                                         {"rule180", summary.rule180},
                                         {"eye", summary.eye},
                                         {"samples", records.size()}});
        RunManifest manifest;
        manifest.command = "score";
        manifest.params = {{"annotations", a.annotations_path}, {"method", a.method}};
        manifest.input_paths = {a.annotations_path};
        manifest.output_paths = {a.out_path};
        write_manifest(a.out_path, manifest);
    }
}

struct SliceArgs {
    std::string video_path;
    std::size_t column = 0;
    std::string out_path;
};

void run_slice(const SliceArgs& a) {
    using namespace loopkit;

    TensorF32 video = read_ltns(a.video_path);
    SliceImage image = yt_slice(video, a.column);
    write_pgm(a.out_path, image);

    RunManifest manifest;
    manifest.command = "slice";
    manifest.params = {{"video", a.video_path}, {"column", a.column}};
    manifest.input_paths = {a.video_path};
    manifest.output_paths = {a.out_path};
    write_manifest(a.out_path, manifest);
    std::cout << "wrote " << a.out_path << " (" << image.width << "x" << image.height
              << ")\n";
}

struct BaselineArgs {
    std::string clip_path;
    std::string out_path;
};

void run_baseline(const BaselineArgs& a) {
    using namespace loopkit;

    TensorF32 clip = read_ltns(a.clip_path);
    TensorF32 looped = reverse_playback_baseline(clip);
    write_ltns(a.out_path, looped);

    RunManifest manifest;
    manifest.command = "baseline";
    manifest.params = {{"clip", a.clip_path}};
    manifest.input_paths = {a.clip_path};
    manifest.output_paths = {a.out_path};
    write_manifest(a.out_path, manifest);
    std::cout << "wrote " << a.out_path << " (" << looped.dim(0) << " frames)\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"seamless-loop scheduling, dialogue assembly, and shot mining"};
    app.require_subcommand(1);

    GenLoopArgs gen;
    CLI::App* gen_cmd = app.add_subcommand(
        "gen-loop", "generate a seamless loop template with a toy denoiser");
    gen_cmd->add_option("--frames", gen.frames, "ring length F")->required();
    gen_cmd->add_option("--dim", gen.dim, "latent dim D")->required();
    gen_cmd->add_option("--window", gen.window, "latents per segment")->required();
    gen_cmd->add_option("--overlap", gen.overlap, "overlap between segments");
    gen_cmd->add_option("--offset", gen.offset, "per-step segment shift");
    gen_cmd->add_option("--steps", gen.steps, "diffusion steps T")->required();
    gen_cmd->add_option("--seed", gen.seed, "noise seed")->required();
    gen_cmd->add_option("--denoiser", gen.denoiser, "oracle|smooth");
    gen_cmd->add_option("--target", gen.target_path, "LTNS target for the oracle");
    gen_cmd->add_option("--radius", gen.radius, "smoothing kernel radius");
    gen_cmd->add_option("--beta-start", gen.beta_start, "schedule beta at t=0");
    gen_cmd->add_option("--beta-end", gen.beta_end, "schedule beta at t=T-1");
    gen_cmd->add_option("--threads", gen.threads, "segment workers (env LOOPKIT_THREADS)");
    gen_cmd->add_option("--out", gen.out_path, "output .ltns path")->required();

    AssembleArgs asm_args;
    CLI::App* asm_cmd =
        app.add_subcommand("assemble", "compile a dialogue script into a rendered timeline");
    asm_cmd->add_option("--script", asm_args.script_path, "dialogue script JSON")->required();
    asm_cmd->add_option("--template-a", asm_args.template_a, "shot A loop LTNS")->required();
    asm_cmd->add_option("--template-b", asm_args.template_b, "shot B loop LTNS")->required();
    asm_cmd->add_option("--seed", asm_args.seed, "loop-start seed")->required();
    asm_cmd->add_option("--out", asm_args.out_path, "rendered .ltns path")->required();

    MineArgs mine;
    CLI::App* mine_cmd =
        app.add_subcommand("mine", "detect cuts and mine reverse-shot pairs");
    mine_cmd->add_option("--shots", mine.shots_path, "shot records JSON");
    mine_cmd->add_option("--out", mine.out_path, "pairs manifest JSON");
    mine_cmd->add_option("--frames", mine.frames_path, "frames LTNS for cut detection");
    mine_cmd->add_option("--threshold", mine.threshold, "cut threshold");
    mine_cmd->add_option("--cuts-out", mine.cuts_out, "cut list JSON");

    ScoreArgs score;
    CLI::App* score_cmd =
        app.add_subcommand("score", "aggregate layout annotation scores");
    score_cmd->add_option("--annotations", score.annotations_path, "annotations JSON")
        ->required();
    score_cmd->add_option("--method", score.method, "row label");
    score_cmd->add_option("--out", score.out_path, "scores JSON");

    SliceArgs slice;
    CLI::App* slice_cmd = app.add_subcommand("slice", "write a y-t slice as PGM");
    slice_cmd->add_option("--video", slice.video_path, "[F, H, W] LTNS video")->required();
    slice_cmd->add_option("--column", slice.column, "pixel column x")->required();
    slice_cmd->add_option("--out", slice.out_path, "output .pgm path")->required();

    BaselineArgs baseline;
    CLI::App* baseline_cmd =
        app.add_subcommand("baseline", "loop a clip by reverse playback");
    baseline_cmd->add_option("--clip", baseline.clip_path, "[L, D] LTNS clip")->required();
    baseline_cmd->add_option("--out", baseline.out_path, "output .ltns path")->required();

    try {
        app.parse(argc, argv);
        if (gen_cmd->parsed()) run_gen_loop(gen);
        if (asm_cmd->parsed()) run_assemble(asm_args);
        if (mine_cmd->parsed()) run_mine(mine);
        if (score_cmd->parsed()) run_score(score);
        if (slice_cmd->parsed()) run_slice(slice);
        if (baseline_cmd->parsed()) run_baseline(baseline);
        return 0;
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const loopkit::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const loopkit::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
