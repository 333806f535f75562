#pragma once

// 68-point facial landmarks (iBUG/dlib index convention, 0-based) read from
// a sidecar text file, plus the eye geometry derived from them.
//
// Sidecar format, one record per line (UTF-8, LF):
//
//   frame_id,x0,y0,x1,y1,...,x67,y67
//
// 137 comma-separated fields; coordinates in plain decimal notation with a
// dot separator. Blank lines are ignored.
//
// Left/right always mean the subject's own left/right. The subject's left
// eye (indices 42-47) appears on the image right.

#include <array>
#include <optional>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gazelabel/errors.hpp"
#include "gazelabel/geometry.hpp"
#include "gazelabel/image.hpp"

namespace gazelabel {

inline constexpr std::size_t kLandmarkCount = 68;

namespace landmark_index {
inline constexpr int kNoseTip = 30;
inline constexpr int kRightEyeFirst = 36;  // subject-right eye: 36..41
inline constexpr int kLeftEyeFirst = 42;   // subject-left eye: 42..47
inline constexpr int kRightEyeOuter = 36;
inline constexpr int kRightEyeInner = 39;
inline constexpr int kLeftEyeInner = 42;
inline constexpr int kLeftEyeOuter = 45;
}  // namespace landmark_index

enum class Side { Left, Right };

const char* to_string(Side side) noexcept;

struct LandmarkSet {
    std::string frame_id;
    std::array<Point2d, kLandmarkCount> points{};

    friend bool operator==(const LandmarkSet&, const LandmarkSet&) = default;
};

struct ParseIssue {
    std::size_t line = 0;  ///< 1-based
    std::string frame_id;  ///< empty if the id itself could not be read
    std::string message;
};

struct LandmarkFile {
    std::vector<LandmarkSet> records;  ///< well-formed records in file order
    std::vector<ParseIssue> issues;    ///< one per rejected record, in file order
};

/// Parses sidecar text. Malformed records (wrong field count, bad number,
/// non-finite value, empty or duplicate frame id) are reported in `issues`
/// and skipped; well-formed records are kept.
LandmarkFile parse_landmark_file(std::string_view text);

/// Reads and parses a sidecar file. Throws Error if the file cannot be read.
LandmarkFile read_landmark_file(const std::filesystem::path& path);

/// Inverse of parse_landmark_file; numbers use the shortest round-trip
/// decimal form.
std::string serialize_landmarks(std::span<const LandmarkSet> records);

/// The eye's six contour points. For both eyes the order is: corner, two
/// upper-lid points, corner, two lower-lid points (the 68-point convention).
struct EyeContour {
    std::array<Point2d, 6> points{};
    Side side = Side::Left;
};

struct FaceAnchors {
    Point2d nose;
    Point2d left_inner_corner;
    Point2d left_outer_corner;
    Point2d right_inner_corner;
    Point2d right_outer_corner;
};

/// Thrown when an eye contour has zero area (e.g. collinear points).
class DegenerateEyeError : public Error {
public:
    explicit DegenerateEyeError(Side side)
        : Error(std::string("degenerate ") + to_string(side) + " eye contour"), side_(side) {}

    Side side() const noexcept { return side_; }

private:
    Side side_;
};

/// Eye contour for one side, without degeneracy checks.
EyeContour eye_contour(const LandmarkSet& landmarks, Side side);

/// (subject-left, subject-right) contours. Throws DegenerateEyeError.
std::pair<EyeContour, EyeContour> eye_contours(const LandmarkSet& landmarks);

/// True when the contour's polygon area or bounding box vanishes.
bool is_degenerate(const EyeContour& contour) noexcept;

/// Nose tip (30) and the four eye corners (36, 39, 42, 45).
FaceAnchors face_anchors(const LandmarkSet& landmarks);

/// Max y minus min y over the contour points.
double contour_height(const EyeContour& contour) noexcept;

/// Landmarks of the horizontally flipped image: x -> (image_width - 1) - x,
/// with indices permuted so that every point keeps its anatomical meaning.
LandmarkSet mirror_landmarks(const LandmarkSet& landmarks, int image_width);

/// A rectangular cut of the face image around one eye.
struct EyeCrop {
    GrayImage image;
    Point2i origin;  ///< top-left corner in face-image coordinates
    Side side = Side::Left;
    /// Crop pixels whose centers lie inside the eye contour; absent means the
    /// whole crop is eye.
    std::optional<BinaryMask> eye_region{};

    Point2d to_face(Point2d crop_point) const noexcept { return crop_point + to_double(origin); }
    Point2d to_crop(Point2d face_point) const noexcept { return face_point - to_double(origin); }
};

inline constexpr int kDefaultCropPad = 2;

/// Pixels of a width x height raster (placed at `origin` in face coordinates)
/// whose centers fall inside the contour polygon.
BinaryMask contour_mask(const EyeContour& contour, int width, int height, Point2i origin);

/// Crop spanning [floor(min) - pad, ceil(max) + pad] in each axis (inclusive),
/// clamped to the image, with the contour interior as its eye region. Throws
/// Error when the padded box misses the image.
EyeCrop crop_eye(const GrayImage& image, const EyeContour& contour, int pad = kDefaultCropPad);

}  // namespace gazelabel
