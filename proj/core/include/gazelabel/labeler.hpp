#pragma once

// Batch labeling of a frame corpus.
//
// Manifest (CSV, header required, paths relative to the manifest file):
//
//   subject_id,frames_dir,landmarks
//   alice,alice/frames,alice/landmarks.csv
//
// Frames are the image files of frames_dir in filename order; frame i has
// id printf("%06d", i), which is also its key in the landmark sidecar.
//
// Labels file (CSV, LF, one header row):
//
//   subject_id,frame_id,status,gaze,head_pose,left_x,left_y,right_x,right_y,
//   theta1,theta2,theta3,theta4,flags
//
// status is OK or a skip reason code (NO_FACE_LANDMARKS, NO_PUPIL,
// DEGENERATE_EYE, UNREADABLE_FRAME); skip rows leave the label and number
// columns empty. Numbers use the shortest round-trip decimal form.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gazelabel/gaze.hpp"
#include "gazelabel/geometry.hpp"

namespace gazelabel {

struct SubjectEntry {
    std::string subject_id;
    std::vector<std::filesystem::path> frames;  ///< temporal order
    std::filesystem::path landmarks;
};

struct CorpusManifest {
    std::vector<SubjectEntry> subjects;
};

/// Throws ParseError for malformed rows and Error for missing directories.
CorpusManifest read_manifest(const std::filesystem::path& path);

inline constexpr std::size_t kDefaultStride = 3;

/// Indices 0, stride, 2*stride, ... below count. Requires stride >= 1.
std::vector<std::size_t> sample_frames(std::size_t count, std::size_t stride = kDefaultStride);

/// Zero-padded six-digit frame id.
std::string frame_id_for_index(std::size_t index);

struct LabelRecord {
    std::string subject_id;
    std::string frame_id;
    std::string status = "OK";  ///< "OK" or a skip reason code
    Region gaze = Region::Center;
    Region head_pose = Region::Center;
    Point2d left_pupil;
    Point2d right_pupil;
    GazeAngles angles;
    std::uint32_t flags = kFlagNone;

    bool ok() const noexcept { return status == "OK"; }
    friend bool operator==(const LabelRecord&, const LabelRecord&) = default;
};

inline constexpr std::string_view kLabelsHeader =
    "subject_id,frame_id,status,gaze,head_pose,left_x,left_y,right_x,right_y,theta1,theta2,theta3,theta4,flags";

std::string serialize_labels(std::span<const LabelRecord> records);
/// Throws ParseError naming the offending line.
std::vector<LabelRecord> parse_labels(std::string_view text);
std::vector<LabelRecord> read_labels(const std::filesystem::path& path);
void write_labels(const std::filesystem::path& path, std::span<const LabelRecord> records);

struct RunConfig {
    std::size_t stride = kDefaultStride;
    LabelConfig label{};
    unsigned workers = 1;
    std::optional<std::filesystem::path> annotate_dir;
};

struct RunResult {
    std::vector<LabelRecord> records;  ///< ordered by (subject, frame index)
    std::vector<std::string> warnings; ///< per-subject and sidecar problems
};

/// Labels every sampled frame. Per-frame failures become skip records and
/// per-subject sidecar failures become warnings; neither aborts the batch.
/// Output is identical for every worker count.
RunResult run_label(const CorpusManifest& manifest, const RunConfig& config);

/// Primary (blue cross), secondary (green square) and final (pink dot)
/// centers drawn over the frame.
RgbImage annotate(const RgbImage& frame, const FrameLabel& label);

inline constexpr double kDefaultTrainFraction = 0.70;

struct DatasetSplit {
    std::vector<std::string> train_subjects;       ///< sorted
    std::vector<std::string> validation_subjects;  ///< sorted
    std::vector<LabelRecord> train;
    std::vector<LabelRecord> validation;
};

/// Subject-level split: subjects are shuffled with the seed and the first
/// floor(train_fraction * n) (clamped to [1, n-1]) go to training. Record
/// order is preserved within each set. Throws InvalidArgument with fewer
/// than two subjects or a fraction outside (0, 1).
DatasetSplit split_dataset(std::span<const LabelRecord> labels, double train_fraction = kDefaultTrainFraction,
                           std::uint64_t seed = 0);

struct RegionCounts {
    std::size_t center = 0;
    std::size_t left = 0;
    std::size_t right = 0;
    std::size_t skipped = 0;

    std::size_t total() const noexcept { return center + left + right; }
    RegionCounts& operator+=(const RegionCounts& o) noexcept;
};

RegionCounts count_regions(std::span<const LabelRecord> labels) noexcept;

struct StatsRow {
    std::string set;
    RegionCounts counts;
};

/// Rows "train", "validation", "total".
std::vector<StatsRow> stats_report(std::span<const LabelRecord> train, std::span<const LabelRecord> validation);
/// Single row "total".
std::vector<StatsRow> stats_report(std::span<const LabelRecord> labels);

/// CSV: set,center,left,right,total,skipped
std::string format_stats_csv(const std::vector<StatsRow>& rows);
/// Aligned text table.
std::string format_stats_table(const std::vector<StatsRow>& rows);

}  // namespace gazelabel
