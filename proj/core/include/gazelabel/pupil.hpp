#pragma once

// Two-route pupil-center localization per eye:
//   primary   - Otsu threshold of the eye crop (dark = foreground), centroid
//               of the largest 8-connected blob;
//   secondary - square sub-crop around the primary center, adaptive
//               threshold, Canny, circular Hough; center of the best circle;
//   final     - midpoint of the two, or the primary alone when the Hough
//               stage finds nothing.

#include <optional>
#include <string>
#include <utility>

#include "gazelabel/errors.hpp"
#include "gazelabel/geometry.hpp"
#include "gazelabel/image.hpp"
#include "gazelabel/image_ops.hpp"
#include "gazelabel/landmarks.hpp"

namespace gazelabel {

inline constexpr int kDefaultCropOffset = 5;

/// Half-extent of the sub-crop searched by the Hough stage.
struct CropLength {
    int pixels = 0;
    bool degenerate = false;  ///< eye height was zero; pixels == offset
};

/// ceil(eye_height / 2) + offset. Requires eye_height >= 0 and offset >= 0.
CropLength crop_length(double eye_height, int offset);

struct PupilEstimate {
    Point2d primary;                  ///< face frame
    std::optional<Point2d> secondary; ///< face frame
    Point2d final;                    ///< face frame
    Side side = Side::Left;
    bool used_secondary = false;
};

/// Tunables of the localizer. Defaults are the ones the CLI uses.
struct LocalizerConfig {
    int offset = kDefaultCropOffset;   ///< added to half the eye height for the sub-crop
    int crop_pad = kDefaultCropPad;    ///< pixels around the eye-contour box
    double adaptive_bias = 5.0;        ///< intensity margin below the local mean
    double canny_sigma = kDefaultCannySigma;
    double canny_low_fraction = kDefaultCannyLowFraction;
    HoughParams hough{};
};

enum class FailureReason {
    NoFaceLandmarks,
    NoPupil,
    DegenerateEye,
    UnreadableFrame,
};

/// Machine-readable code, e.g. "NO_PUPIL".
const char* reason_code(FailureReason reason) noexcept;

class LocalizationError : public Error {
public:
    LocalizationError(Side side, FailureReason reason, const std::string& detail)
        : Error(std::string(to_string(side)) + " eye: " + detail), side_(side), reason_(reason) {}

    Side side() const noexcept { return side_; }
    FailureReason reason() const noexcept { return reason_; }

private:
    Side side_;
    FailureReason reason_;
};

/// Primary center in crop coordinates, or nullopt when the crop's histogram
/// is degenerate or no dark blob exists.
std::optional<Point2d> primary_center(const EyeCrop& crop);

/// Secondary center in crop coordinates. Searches circles with radii in
/// [max(2, h/4), h] (h = eye height), capped by the sub-crop size, and
/// returns the circle with the best ring support among those containing the
/// primary center.
std::optional<Point2d> secondary_center(const EyeCrop& crop, Point2d primary, double eye_height, int offset,
                                        const LocalizerConfig& config = {});

/// Full pipeline for one eye. Throws LocalizationError.
PupilEstimate localize_eye(const GrayImage& face, const EyeContour& contour, const LocalizerConfig& config = {});

/// (subject-left, subject-right) estimates in face coordinates.
/// Throws LocalizationError naming the failing side.
std::pair<PupilEstimate, PupilEstimate> localize_pupils(const GrayImage& face, const LandmarkSet& landmarks,
                                                        const LocalizerConfig& config = {});

}  // namespace gazelabel
