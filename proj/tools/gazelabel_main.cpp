// gazelabel: batch pupil localization and gaze-region labeling.
//
//   gazelabel label --manifest corpus/manifest.csv --out labels.csv
//   gazelabel split --labels labels.csv --out-dir splits --seed 1
//   gazelabel stats --train splits/train.csv --validation splits/validation.csv
//   gazelabel eval  --labels labels.csv --ground-truth corpus/ground_truth.csv
//   gazelabel eval  --bioid-dir BioID --landmarks bioid_landmarks.csv
//   gazelabel synth --out-dir corpus
//
// Every option can also come from --config FILE (TOML/INI, one section per
// subcommand); command-line flags take precedence.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gazelabel/bioid.hpp"
#include "gazelabel/evaluator.hpp"
#include "gazelabel/labeler.hpp"
#include "gazelabel/synth.hpp"

namespace fs = std::filesystem;
using namespace gazelabel;

namespace {

constexpr int kExitStructural = 2;

void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
    if (!out) throw Error("cannot write " + path.string());
}

struct LabelOptions {
    fs::path manifest;
    fs::path out = "labels.csv";
    std::size_t stride = kDefaultStride;
    int offset = kDefaultCropOffset;
    double tau = kDefaultTau;
    double tau_head = kDefaultTauHead;
    unsigned workers = 1;
    std::string annotate_dir;
};

struct SplitOptions {
    fs::path labels;
    fs::path out_dir = ".";
    double train_fraction = kDefaultTrainFraction;
    std::uint64_t seed = 0;
};

struct StatsOptions {
    fs::path labels;
    fs::path train;
    fs::path validation;
    fs::path out;
};

struct EvalCliOptions {
    fs::path labels;
    fs::path ground_truth;
    fs::path bioid_dir;
    fs::path landmarks;
    fs::path json;
    int offset = kDefaultCropOffset;
    std::string sign_convention = "positive-left";
};

struct SynthOptions {
    fs::path out_dir;
    synth::CorpusPlan plan;
};

int run_label_cmd(const LabelOptions& o) {
    const CorpusManifest manifest = read_manifest(o.manifest);
    RunConfig config;
    config.stride = o.stride;
    config.workers = o.workers;
    config.label.tau = o.tau;
    config.label.tau_head = o.tau_head;
    config.label.localizer.offset = o.offset;
    if (!o.annotate_dir.empty()) config.annotate_dir = fs::path(o.annotate_dir);

    const RunResult result = run_label(manifest, config);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
    if (o.out.has_parent_path()) fs::create_directories(o.out.parent_path());
    write_labels(o.out, result.records);

    const auto counts = count_regions(result.records);
    std::cout << "labeled " << counts.total() << " of " << result.records.size() << " sampled frames ("
              << counts.skipped << " skipped) -> " << o.out.string() << '\n';
    return 0;
}

int run_split_cmd(const SplitOptions& o) {
    const auto labels = read_labels(o.labels);
    const DatasetSplit split = split_dataset(labels, o.train_fraction, o.seed);
    fs::create_directories(o.out_dir);
    write_labels(o.out_dir / "train.csv", split.train);
    write_labels(o.out_dir / "validation.csv", split.validation);
    std::string subjects = "subject_id,set\n";
    for (const auto& s : split.train_subjects) subjects += s + ",train\n";
    for (const auto& s : split.validation_subjects) subjects += s + ",validation\n";
    write_text(o.out_dir / "subjects.csv", subjects);
    std::cout << split.train_subjects.size() << " train subjects (" << split.train.size() << " records), "
              << split.validation_subjects.size() << " validation subjects (" << split.validation.size()
              << " records)\n";
    return 0;
}

int run_stats_cmd(const StatsOptions& o) {
    std::vector<StatsRow> rows;
    if (!o.train.empty() || !o.validation.empty()) {
        if (o.train.empty() || o.validation.empty()) throw InvalidArgument("--train and --validation go together");
        rows = stats_report(read_labels(o.train), read_labels(o.validation));
    } else if (!o.labels.empty()) {
        rows = stats_report(read_labels(o.labels));
    } else {
        throw InvalidArgument("stats needs --labels or --train/--validation");
    }
    std::cout << format_stats_table(rows);
    if (!o.out.empty()) write_text(o.out, format_stats_csv(rows));
    return 0;
}

int run_eval_cmd(const EvalCliOptions& o) {
    EvalOptions options;
    if (o.sign_convention == "positive-right") {
        options.sign_convention = SignConvention::PositiveIsRight;
    } else if (o.sign_convention != "positive-left") {
        throw InvalidArgument("--sign-convention must be positive-left or positive-right");
    }

    EvalSummary summary;
    if (!o.bioid_dir.empty()) {
        if (o.landmarks.empty()) throw InvalidArgument("--bioid-dir needs --landmarks");
        LocalizerConfig config;
        config.offset = o.offset;
        summary = evaluate_bioid(o.bioid_dir, o.landmarks, config, options);
    } else {
        if (o.labels.empty() || o.ground_truth.empty())
            throw InvalidArgument("eval needs --labels and --ground-truth, or --bioid-dir and --landmarks");
        std::vector<Prediction> predictions;
        for (const auto& r : read_labels(o.labels)) {
            Prediction p;
            p.frame_id = r.subject_id + "/" + r.frame_id;
            if (r.ok()) {
                p.left = r.left_pupil;
                p.right = r.right_pupil;
                p.region = r.gaze;
            } else {
                p.skip_reason = r.status;
            }
            predictions.push_back(std::move(p));
        }
        summary = accuracy_report(predictions, read_ground_truth(o.ground_truth), options);
    }
    std::cout << format_summary_text(summary);
    if (!o.json.empty()) write_text(o.json, format_summary_json(summary));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pupil localization and gaze-region labeling"};
    app.set_config("--config", "", "Read options from a TOML/INI file; flags override it");
    app.require_subcommand(1);

    LabelOptions label;
    auto* label_cmd = app.add_subcommand("label", "Localize pupils and label gaze regions over a corpus");
    label_cmd->add_option("--manifest", label.manifest, "Corpus manifest CSV")->required();
    label_cmd->add_option("--out", label.out, "Labels file to write")->capture_default_str();
    label_cmd->add_option("--stride", label.stride, "Keep every n-th frame")->capture_default_str()->check(CLI::PositiveNumber);
    label_cmd->add_option("--offset", label.offset, "Pixels added to half the eye height for the Hough crop")
        ->capture_default_str()->check(CLI::NonNegativeNumber);
    label_cmd->add_option("--tau", label.tau, "Gaze dead-band, degrees")->capture_default_str()->check(CLI::NonNegativeNumber);
    label_cmd->add_option("--tau-head", label.tau_head, "Head-pose dead-band, degrees")
        ->capture_default_str()->check(CLI::NonNegativeNumber);
    label_cmd->add_option("--workers", label.workers, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    label_cmd->add_option("--annotate-dir", label.annotate_dir, "Write overlays of the detected centers here");

    SplitOptions split;
    auto* split_cmd = app.add_subcommand("split", "Subject-wise train/validation split of a labels file");
    split_cmd->add_option("--labels", split.labels, "Labels file")->required();
    split_cmd->add_option("--out-dir", split.out_dir, "Directory for train.csv, validation.csv, subjects.csv")
        ->capture_default_str();
    split_cmd->add_option("--train-fraction", split.train_fraction, "Fraction of subjects for training")
        ->capture_default_str()->check(CLI::Range(0.0, 1.0));
    split_cmd->add_option("--seed", split.seed, "Shuffle seed")->capture_default_str();

    StatsOptions stats;
    auto* stats_cmd = app.add_subcommand("stats", "Center/left/right counts per set");
    stats_cmd->add_option("--labels", stats.labels, "Single labels file");
    stats_cmd->add_option("--train", stats.train, "Training labels file");
    stats_cmd->add_option("--validation", stats.validation, "Validation labels file");
    stats_cmd->add_option("--out", stats.out, "Also write the table as CSV");

    EvalCliOptions eval;
    auto* eval_cmd = app.add_subcommand("eval", "Normalized-error and region accuracy against ground truth");
    eval_cmd->add_option("--labels", eval.labels, "Labels file produced by 'label'");
    eval_cmd->add_option("--ground-truth", eval.ground_truth, "Ground-truth file (frame_id,lx,ly,rx,ry[,token])");
    eval_cmd->add_option("--bioid-dir", eval.bioid_dir, "BioID-layout directory (.pgm + .eye)");
    eval_cmd->add_option("--landmarks", eval.landmarks, "Landmark sidecar for --bioid-dir");
    eval_cmd->add_option("--offset", eval.offset, "Crop offset for --bioid-dir runs")->capture_default_str();
    eval_cmd->add_option("--sign-convention", eval.sign_convention, "positive-left or positive-right")
        ->capture_default_str();
    eval_cmd->add_option("--json", eval.json, "Write the summary as JSON");

    SynthOptions synth_opts;
    auto* synth_cmd = app.add_subcommand("synth", "Render a synthetic corpus with exact ground truth");
    synth_cmd->add_option("--out-dir", synth_opts.out_dir, "Output directory")->required();
    synth_cmd->add_option("--subjects", synth_opts.plan.subjects, "Number of subjects")->capture_default_str();
    synth_cmd->add_option("--frames", synth_opts.plan.frames_per_subject, "Frames per subject")->capture_default_str();
    synth_cmd->add_option("--seed", synth_opts.plan.seed, "Render seed")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*label_cmd) return run_label_cmd(label);
        if (*split_cmd) return run_split_cmd(split);
        if (*stats_cmd) return run_stats_cmd(stats);
        if (*eval_cmd) return run_eval_cmd(eval);
        if (*synth_cmd) {
            synth::write_corpus(synth_opts.out_dir, synth_opts.plan);
            std::cout << "wrote " << synth_opts.plan.subjects << " subjects to " << synth_opts.out_dir.string() << '\n';
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitStructural;
    }
    return 0;
}
