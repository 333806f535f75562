#pragma once

// Geometric gaze-region and head-pose heuristics.
//
// theta1/theta2 are the unsigned angles between each pupil->nose segment and
// the face's vertical axis through the nose tip; theta3/theta4 are the same
// angles for the outer eye corners. The vertical axis is perpendicular to the
// line joining the outer eye corners, which equals the image vertical for a
// level face and rotates with the head under in-plane roll.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "gazelabel/errors.hpp"
#include "gazelabel/geometry.hpp"
#include "gazelabel/image.hpp"
#include "gazelabel/landmarks.hpp"
#include "gazelabel/pupil.hpp"

namespace gazelabel {

/// Subject-perspective region.
enum class Region { Left, Right, Center };

const char* to_string(Region region) noexcept;
std::optional<Region> region_from_string(std::string_view text) noexcept;

inline constexpr double kDefaultTau = 2.0;
inline constexpr double kDefaultTauHead = 2.0;

struct GazeAngles {
    double theta1 = 0.0;  ///< subject-left pupil
    double theta2 = 0.0;  ///< subject-right pupil
    double theta3 = 0.0;  ///< subject-left outer corner
    double theta4 = 0.0;  ///< subject-right outer corner

    friend bool operator==(const GazeAngles&, const GazeAngles&) = default;
};

class UndefinedAngleError : public Error {
public:
    using Error::Error;
};

/// Unsigned angle in degrees, in [0, 90], between the segment nose->point and
/// the line through the nose along `vertical`. With the default image
/// vertical this is atan(|dx| / |dy|), and 90 when dy = 0.
/// Throws UndefinedAngleError when point == nose.
double pupil_angle(Point2d point, Point2d nose, Point2d vertical = {0.0, 1.0});

/// Unit vector perpendicular to the outer-corner line, pointing down the face.
/// Falls back to the image vertical if the corners coincide.
Point2d face_vertical(const FaceAnchors& anchors) noexcept;

GazeAngles gaze_angles(Point2d left_pupil, Point2d right_pupil, const FaceAnchors& anchors);

/// theta1 - theta2 > tau -> Left; theta2 - theta1 > tau -> Right; else Center.
Region classify_gaze(const GazeAngles& angles, double tau = kDefaultTau);

/// The same comparator on (theta3, theta4).
Region classify_head_pose(const GazeAngles& angles, double tau_h = kDefaultTauHead);

/// Non-fatal conditions recorded on a label.
enum FrameFlag : std::uint32_t {
    kFlagNone = 0,
    kFlagNoSecondaryLeft = 1u << 0,
    kFlagNoSecondaryRight = 1u << 1,
    kFlagPupilOnNoseAxis = 1u << 2,
};

/// "NO_SECONDARY_LEFT|PUPIL_ON_NOSE_AXIS", or "" for no flags.
std::string flags_to_string(std::uint32_t flags);
std::optional<std::uint32_t> flags_from_string(std::string_view text) noexcept;

struct FrameLabel {
    std::string frame_id;
    Region gaze = Region::Center;
    Region head_pose = Region::Center;
    PupilEstimate left;
    PupilEstimate right;
    GazeAngles angles;
    std::uint32_t flags = kFlagNone;
};

struct LabelConfig {
    double tau = kDefaultTau;
    double tau_head = kDefaultTauHead;
    LocalizerConfig localizer{};
};

class LabelingError : public Error {
public:
    LabelingError(FailureReason reason, const std::string& detail) : Error(detail), reason_(reason) {}
    FailureReason reason() const noexcept { return reason_; }

private:
    FailureReason reason_;
};

/// Localizes both pupils and classifies gaze and head pose. Throws
/// LabelingError carrying the failure cause.
FrameLabel label_frame(const GrayImage& face, const LandmarkSet& landmarks, const LabelConfig& config = {});

}  // namespace gazelabel
