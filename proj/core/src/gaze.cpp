#include "gazelabel/gaze.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <utility>

namespace gazelabel {

const char* to_string(Region region) noexcept {
    switch (region) {
        case Region::Left: return "Left";
        case Region::Right: return "Right";
        case Region::Center: return "Center";
    }
    return "Center";
}

std::optional<Region> region_from_string(std::string_view text) noexcept {
    if (text == "Left") return Region::Left;
    if (text == "Right") return Region::Right;
    if (text == "Center") return Region::Center;
    return std::nullopt;
}

double pupil_angle(Point2d point, Point2d nose, Point2d vertical) {
    const double dx = point.x - nose.x;
    const double dy = point.y - nose.y;
    if (dx == 0.0 && dy == 0.0) throw UndefinedAngleError("angle undefined: point coincides with the nose anchor");
    const double along = std::abs(dx * vertical.x + dy * vertical.y);
    const double across = std::abs(dx * vertical.y - dy * vertical.x);
    return std::atan2(across, along) * 180.0 / std::numbers::pi;
}

Point2d face_vertical(const FaceAnchors& anchors) noexcept {
    // Right outer corner is on the image left, so this runs left-to-right.
    const Point2d across = anchors.left_outer_corner - anchors.right_outer_corner;
    const double len = std::hypot(across.x, across.y);
    if (len == 0.0) return {0.0, 1.0};
    // Rotate by +90 degrees in image coordinates (y down): (x, y) -> (-y, x).
    return {-across.y / len, across.x / len};
}

GazeAngles gaze_angles(Point2d left_pupil, Point2d right_pupil, const FaceAnchors& anchors) {
    const Point2d v = face_vertical(anchors);
    return {pupil_angle(left_pupil, anchors.nose, v), pupil_angle(right_pupil, anchors.nose, v),
            pupil_angle(anchors.left_outer_corner, anchors.nose, v),
            pupil_angle(anchors.right_outer_corner, anchors.nose, v)};
}

namespace {

Region compare_pair(double left, double right, double tau) {
    if (!(tau >= 0.0)) throw InvalidArgument("dead-band must be non-negative");
    if (left - right > tau) return Region::Left;
    if (right - left > tau) return Region::Right;
    return Region::Center;
}

constexpr std::array<std::pair<FrameFlag, const char*>, 3> kFlagNames{{
    {kFlagNoSecondaryLeft, "NO_SECONDARY_LEFT"},
    {kFlagNoSecondaryRight, "NO_SECONDARY_RIGHT"},
    {kFlagPupilOnNoseAxis, "PUPIL_ON_NOSE_AXIS"},
}};

}  // namespace

Region classify_gaze(const GazeAngles& angles, double tau) { return compare_pair(angles.theta1, angles.theta2, tau); }

Region classify_head_pose(const GazeAngles& angles, double tau_h) {
    return compare_pair(angles.theta3, angles.theta4, tau_h);
}

std::string flags_to_string(std::uint32_t flags) {
    std::string out;
    for (const auto& [bit, name] : kFlagNames) {
        if (!(flags & bit)) continue;
        if (!out.empty()) out += '|';
        out += name;
    }
    return out;
}

std::optional<std::uint32_t> flags_from_string(std::string_view text) noexcept {
    std::uint32_t flags = 0;
    while (!text.empty()) {
        const auto bar = text.find('|');
        const auto token = text.substr(0, bar);
        bool known = false;
        for (const auto& [bit, name] : kFlagNames)
            if (token == name) {
                flags |= bit;
                known = true;
            }
        if (!known) return std::nullopt;
        if (bar == std::string_view::npos) break;
        text.remove_prefix(bar + 1);
    }
    return flags;
}

FrameLabel label_frame(const GrayImage& face, const LandmarkSet& landmarks, const LabelConfig& config) {
    FrameLabel label;
    label.frame_id = landmarks.frame_id;
    try {
        std::tie(label.left, label.right) = localize_pupils(face, landmarks, config.localizer);
    } catch (const LocalizationError& e) {
        throw LabelingError(e.reason(), e.what());
    }
    const FaceAnchors anchors = face_anchors(landmarks);
    try {
        label.angles = gaze_angles(label.left.final, label.right.final, anchors);
    } catch (const UndefinedAngleError& e) {
        throw LabelingError(FailureReason::NoPupil, e.what());
    }
    label.gaze = classify_gaze(label.angles, config.tau);
    label.head_pose = classify_head_pose(label.angles, config.tau_head);

    if (!label.left.used_secondary) label.flags |= kFlagNoSecondaryLeft;
    if (!label.right.used_secondary) label.flags |= kFlagNoSecondaryRight;
    if (label.angles.theta1 == 0.0 || label.angles.theta2 == 0.0) label.flags |= kFlagPupilOnNoseAxis;
    return label;
}

}  // namespace gazelabel
