#include "gazelabel/pupil.hpp"

#include <algorithm>
#include <cmath>

namespace gazelabel {

const char* reason_code(FailureReason reason) noexcept {
    switch (reason) {
        case FailureReason::NoFaceLandmarks: return "NO_FACE_LANDMARKS";
        case FailureReason::NoPupil: return "NO_PUPIL";
        case FailureReason::DegenerateEye: return "DEGENERATE_EYE";
        case FailureReason::UnreadableFrame: return "UNREADABLE_FRAME";
    }
    return "UNKNOWN";
}

CropLength crop_length(double eye_height, int offset) {
    if (!(eye_height >= 0.0) || offset < 0) throw InvalidArgument("crop_length needs eye_height >= 0 and offset >= 0");
    if (eye_height == 0.0) return {offset, true};
    return {static_cast<int>(std::ceil(eye_height / 2.0)) + offset, false};
}

std::optional<Point2d> primary_center(const EyeCrop& crop) {
    if (!crop.eye_region) {
        const auto level = otsu_level(crop.image);
        if (!level) return std::nullopt;
        return largest_blob_centroid(threshold_dark(crop.image, *level));
    }
    // Only the eye itself is thresholded; lids and skin would otherwise join
    // the dark class.
    const BinaryMask& region = *crop.eye_region;
    const auto level = otsu_level(crop.image, region);
    if (!level) return std::nullopt;
    BinaryMask dark = threshold_dark(crop.image, *level);
    for (int y = 0; y < dark.height(); ++y)
        for (int x = 0; x < dark.width(); ++x)
            if (!region.at(x, y)) dark.set(x, y, false);
    return largest_blob_centroid(dark);
}

std::optional<Point2d> secondary_center(const EyeCrop& crop, Point2d primary, double eye_height, int offset,
                                        const LocalizerConfig& config) {
    const int half = crop_length(eye_height, offset).pixels;
    const int px = static_cast<int>(std::lround(primary.x));
    const int py = static_cast<int>(std::lround(primary.y));
    const int x0 = std::clamp(px - half, 0, crop.image.width() - 1);
    const int y0 = std::clamp(py - half, 0, crop.image.height() - 1);
    const int x1 = std::clamp(px + half, 0, crop.image.width() - 1);
    const int y1 = std::clamp(py + half, 0, crop.image.height() - 1);
    const int w = x1 - x0 + 1;
    const int h = y1 - y0 + 1;
    const int min_dim = std::min(w, h);
    if (min_dim < 5) return std::nullopt;

    const GrayImage sub = crop.image.region(x0, y0, w, h);

    int window = std::clamp(static_cast<int>(std::lround(eye_height)), 3, min_dim);
    if (window % 2 == 0) --window;
    const GrayImage binary = to_gray(adaptive_threshold(sub, window, config.adaptive_bias));

    const auto thresholds = auto_canny_thresholds(binary, config.canny_sigma, config.canny_low_fraction);
    if (!thresholds) return std::nullopt;
    const EdgeMap edges = canny(binary, config.canny_sigma, thresholds->low, thresholds->high);

    const int r_min = std::max(2, static_cast<int>(std::floor(eye_height / 4.0)));
    const int r_max = std::min(static_cast<int>(std::ceil(eye_height)), (min_dim - 1) / 2);
    if (r_min > r_max) return std::nullopt;

    // Best-supported circle around the primary center. Raw votes favour the
    // long lid arcs at large radii; support compares rings of any size.
    const Point2d primary_sub{primary.x - x0, primary.y - y0};
    const auto candidates = hough_circles(edges, r_min, r_max, config.hough);
    const CircleCandidate* best = nullptr;
    for (const auto& c : candidates) {
        if (distance(c.center, primary_sub) > c.radius) continue;
        if (!best || c.support > best->support) best = &c;
    }
    if (!best) return std::nullopt;
    return Point2d{best->center.x + x0, best->center.y + y0};
}

PupilEstimate localize_eye(const GrayImage& face, const EyeContour& contour, const LocalizerConfig& config) {
    if (is_degenerate(contour)) throw LocalizationError(contour.side, FailureReason::DegenerateEye, "degenerate contour");
    EyeCrop crop = [&] {
        try {
            return crop_eye(face, contour, config.crop_pad);
        } catch (const Error& e) {
            throw LocalizationError(contour.side, FailureReason::DegenerateEye, e.what());
        }
    }();
    const auto primary = primary_center(crop);
    if (!primary) throw LocalizationError(contour.side, FailureReason::NoPupil, "no dark blob in eye crop");

    const double height = contour_height(contour);
    const auto secondary = secondary_center(crop, *primary, height, config.offset, config);

    PupilEstimate est;
    est.side = contour.side;
    est.primary = crop.to_face(*primary);
    if (secondary) {
        est.secondary = crop.to_face(*secondary);
        est.final = crop.to_face(midpoint(*primary, *secondary));
        est.used_secondary = true;
    } else {
        est.final = est.primary;
    }
    return est;
}

std::pair<PupilEstimate, PupilEstimate> localize_pupils(const GrayImage& face, const LandmarkSet& landmarks,
                                                        const LocalizerConfig& config) {
    return {localize_eye(face, eye_contour(landmarks, Side::Left), config),
            localize_eye(face, eye_contour(landmarks, Side::Right), config)};
}

}  // namespace gazelabel
