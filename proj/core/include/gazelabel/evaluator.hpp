#pragma once

// Localization and region-classification metrics.
//
// Normalized error: e = max(d_l, d_r) / |C_l - C_r|, where d_l, d_r are the
// per-eye distances between prediction and ground truth and C_l, C_r are the
// ground-truth centers. Accuracy at threshold t counts frames with e <= t.

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gazelabel/errors.hpp"
#include "gazelabel/gaze.hpp"
#include "gazelabel/geometry.hpp"

namespace gazelabel {

class EvaluationError : public Error {
public:
    using Error::Error;
};

enum class GazeSign { Negative, Zero, Positive };

/// Which subject side a positive horizontal gaze coordinate denotes.
enum class SignConvention { PositiveIsLeft, PositiveIsRight };

/// Positive -> Left, Negative -> Right, Zero -> Center under the default
/// convention; PositiveIsRight swaps Left and Right.
Region map_angular_to_region(GazeSign sign, SignConvention convention = SignConvention::PositiveIsLeft) noexcept;

struct GroundTruthRecord {
    std::string frame_id;
    Point2d left_center;   ///< subject-left eye
    Point2d right_center;  ///< subject-right eye
    std::optional<Region> region;
    std::optional<GazeSign> gaze_point_sign;
};

/// Ground-truth text, one record per line:
///   frame_id,lx,ly,rx,ry[,token]
/// where the optional token is Left/Right/Center or a sign (+, -, 0).
/// Blank lines and lines starting with '#' are ignored. Throws ParseError on
/// the first malformed line, duplicate id, or coincident eye centers.
std::vector<GroundTruthRecord> parse_ground_truth(std::string_view text);
std::vector<GroundTruthRecord> read_ground_truth(const std::filesystem::path& path);
std::string serialize_ground_truth(const std::vector<GroundTruthRecord>& records);

/// Throws EvaluationError when the ground-truth centers coincide.
double normalized_error(Point2d pred_left, Point2d pred_right, Point2d gt_left, Point2d gt_right);

inline constexpr std::array<double, 3> kDefaultThresholds{0.05, 0.10, 0.25};

/// One pipeline outcome to be scored. `skip_reason` set means the pipeline
/// produced no estimate for this frame.
struct Prediction {
    std::string frame_id;
    Point2d left;
    Point2d right;
    std::optional<Region> region;
    std::optional<std::string> skip_reason;
};

struct RegionAccuracy {
    double fraction = 0.0;
    /// confusion[truth][predicted], indexed Left, Right, Center.
    std::array<std::array<std::size_t, 3>, 3> confusion{};
};

/// Exact-match fraction and confusion counts. Throws EvaluationError on a
/// length mismatch or empty input.
RegionAccuracy region_accuracy(const std::vector<Region>& predicted, const std::vector<Region>& truth);

struct EvalSummary {
    std::size_t n = 0;  ///< frames scored
    std::map<double, double> accuracy_at;
    double mean_e = 0.0;
    std::optional<RegionAccuracy> region;
    std::size_t skipped = 0;
    std::map<std::string, std::size_t> skipped_reasons;
    std::size_t unmatched_predictions = 0;  ///< predictions with no ground truth
    std::size_t unmatched_truth = 0;        ///< ground truth never labeled (e.g. not sampled)
};

struct EvalOptions {
    std::vector<double> thresholds{kDefaultThresholds.begin(), kDefaultThresholds.end()};
    /// Applied to ground-truth records that carry a sign instead of a region.
    SignConvention sign_convention = SignConvention::PositiveIsLeft;
};

/// Pairs predictions with ground truth by frame_id. Frames the pipeline
/// skipped are counted in `skipped` by reason and excluded from every
/// denominator; ground truth with no prediction at all (frames the labeler
/// never sampled) only shows up in `unmatched_truth`. Result is independent
/// of input order. Throws
/// EvaluationError when no frame_id matches or ids repeat.
EvalSummary accuracy_report(const std::vector<Prediction>& predictions, const std::vector<GroundTruthRecord>& truth,
                            const EvalOptions& options = {});

/// Reads a BioID ".eye" file ("#LX LY RX RY" header, then four numbers).
/// Eyes are assigned by image position: the one with larger x is the
/// subject's left, whatever the file calls it.
GroundTruthRecord read_bioid_eye_file(const std::filesystem::path& path, const std::string& frame_id);

/// Human-readable multi-line report.
std::string format_summary_text(const EvalSummary& summary);
/// Machine-readable JSON document.
std::string format_summary_json(const EvalSummary& summary);

}  // namespace gazelabel
