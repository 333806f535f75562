#pragma once

// Pixel-level operators composed by the pupil localizer. All functions are
// pure: identical inputs give bit-identical outputs, and none keep state.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "gazelabel/geometry.hpp"
#include "gazelabel/image.hpp"

namespace gazelabel {

// ---------------------------------------------------------------------------
// Grayscale conversion
// ---------------------------------------------------------------------------

/// ITU-R BT.601 luma weights, in thousandths. They sum to 1000, so white maps
/// to 255 exactly.
inline constexpr int kLumaWeightR = 299;
inline constexpr int kLumaWeightG = 587;
inline constexpr int kLumaWeightB = 114;

/// Y = round((299 R + 587 G + 114 B) / 1000), computed in integers.
GrayImage to_grayscale(const RgbImage& image);

// ---------------------------------------------------------------------------
// Global and local thresholding
// ---------------------------------------------------------------------------

/// Otsu level over the 256-bin histogram. Pixels <= level form the dark
/// class. Between-class variances are compared exactly (rational arithmetic),
/// and the lowest maximizing level wins a tie. Returns nullopt when the image
/// holds fewer than two distinct intensities (degenerate histogram).
std::optional<std::uint8_t> otsu_level(const GrayImage& image);

/// Otsu over the pixels selected by `roi` only (same dimensions as `image`).
std::optional<std::uint8_t> otsu_level(const GrayImage& image, const BinaryMask& roi);

/// Dark-is-foreground binarization: foreground iff intensity <= level.
BinaryMask threshold_dark(const GrayImage& image, std::uint8_t level);

/// Foreground iff intensity < (mean of the window x window neighbourhood) - bias.
/// Pixels outside the image are edge-replicated. `window` must be odd, >= 3,
/// and no larger than either image dimension.
BinaryMask adaptive_threshold(const GrayImage& image, int window, double bias);

// ---------------------------------------------------------------------------
// Smoothing, gradients, Canny
// ---------------------------------------------------------------------------

inline constexpr double kDefaultCannySigma = 1.4;
/// Low hysteresis threshold as a fraction of the maximum gradient magnitude.
inline constexpr double kDefaultCannyLowFraction = 0.2;
/// High threshold = kCannyHighRatio * low.
inline constexpr double kCannyHighRatio = 2.0;

/// Gaussian blur with an edge-replicated border, rounded back to 8 bits.
/// sigma <= 0 returns the input unchanged.
GrayImage gaussian_blur(const GrayImage& image, double sigma);

/// Smoothed Sobel gradient, same layout as the source image.
struct GradientField {
    int width = 0;
    int height = 0;
    std::vector<double> gx;
    std::vector<double> gy;
    std::vector<double> magnitude;

    double max_magnitude() const noexcept;
};

/// Gaussian smoothing followed by 3x3 Sobel, both evaluated on the
/// edge-replicated extension of the image.
GradientField gradient(const GrayImage& image, double sigma);

/// Canny edge detection: gaussian smoothing, Sobel gradient, non-maximum
/// suppression along the quantized gradient direction, and 8-connected
/// double-threshold hysteresis. The image is treated as extended by edge
/// replication, so padding the input that way does not change the edges
/// inside the original frame. Requires 0 < low <= high.
EdgeMap canny(const GrayImage& image, double sigma, double low, double high);

struct CannyThresholds {
    double low = 0.0;
    double high = 0.0;
};

/// low = low_fraction * max gradient magnitude, high = kCannyHighRatio * low.
/// Returns nullopt for a flat image.
std::optional<CannyThresholds> auto_canny_thresholds(const GrayImage& image, double sigma,
                                                     double low_fraction = kDefaultCannyLowFraction);

// ---------------------------------------------------------------------------
// Connected components
// ---------------------------------------------------------------------------

struct Blob {
    std::size_t area = 0;
    Point2d centroid;
    int min_x = 0, min_y = 0, max_x = 0, max_y = 0;
};

/// 8-connected components, in the raster order of their first pixel.
std::vector<Blob> connected_components(const BinaryMask& mask);

/// Largest component; ties go to the one found first in raster order.
std::optional<Blob> largest_blob(const BinaryMask& mask);

/// Area centroid of the largest component, or nullopt for an empty mask.
std::optional<Point2d> largest_blob_centroid(const BinaryMask& mask);

// ---------------------------------------------------------------------------
// Circular Hough transform
// ---------------------------------------------------------------------------

struct CircleCandidate {
    Point2d center;
    int radius = 0;
    double score = 0.0;    ///< accumulator votes at the peak cell
    double support = 0.0;  ///< votes per pixel of the ideal ring at this radius
};

struct HoughParams {
    /// A peak must collect at least ratio * 2*pi*r votes to be reported.
    double vote_floor_ratio = 0.35;
};

/// Integer offsets (dx, dy) whose distance from the origin rounds to `radius`,
/// i.e. radius - 1/2 <= |(dx, dy)| < radius + 1/2.
std::vector<Point2i> circle_offsets(int radius);

/// Circular Hough transform over a 1-pixel (cx, cy, r) accumulator. Every edge
/// pixel votes once for each center at rounded distance r in [r_min, r_max].
/// Candidates are 26-neighbourhood local maxima of votes normalized by ring
/// size (so neighbouring radii compete fairly), above the vote floor, with a
/// 3x3 vote-weighted centroid for the sub-pixel center, sorted by score
/// descending. Requires 1 <= r_min <= r_max and 2*r_max < min(width, height).
std::vector<CircleCandidate> hough_circles(const EdgeMap& edges, int r_min, int r_max,
                                           const HoughParams& params = {});

}  // namespace gazelabel
