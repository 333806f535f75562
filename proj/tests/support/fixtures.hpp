#pragma once

// Test fixtures built independently of the library: analytic rasterizers and
// landmark layouts. Nothing here calls into gazelabel beyond its value types.

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "gazelabel/geometry.hpp"
#include "gazelabel/image.hpp"
#include "gazelabel/landmarks.hpp"

namespace fixtures {

using gazelabel::BinaryMask;
using gazelabel::EdgeMap;
using gazelabel::GrayImage;
using gazelabel::LandmarkSet;
using gazelabel::Point2d;

inline GrayImage filled(int w, int h, std::uint8_t v) { return GrayImage(w, h, v); }

/// Anti-aliased disk by 8x8 supersampling; blends `value` over the existing pixels.
inline void draw_disk(GrayImage& img, Point2d c, double r, std::uint8_t value) {
    constexpr int kSub = 8;
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            if (std::abs(x - c.x) > r + 1 || std::abs(y - c.y) > r + 1) continue;
            int inside = 0;
            for (int sy = 0; sy < kSub; ++sy)
                for (int sx = 0; sx < kSub; ++sx) {
                    const double px = x - 0.5 + (sx + 0.5) / kSub;
                    const double py = y - 0.5 + (sy + 0.5) / kSub;
                    if ((px - c.x) * (px - c.x) + (py - c.y) * (py - c.y) <= r * r) ++inside;
                }
            const double f = inside / double(kSub * kSub);
            const double v = f * value + (1.0 - f) * img.at(x, y);
            img.at(x, y) = static_cast<std::uint8_t>(std::lround(v));
        }
    }
}

/// Edge pixels whose centers lie within half a pixel of the circle.
inline EdgeMap ring_edges(int w, int h, Point2d c, double r) {
    EdgeMap e(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (std::abs(std::hypot(x - c.x, y - c.y) - r) < 0.5) e.set(x, y, true);
    return e;
}

inline void add_ring(EdgeMap& e, Point2d c, double r) {
    const EdgeMap ring = ring_edges(e.width(), e.height(), c, r);
    for (int y = 0; y < e.height(); ++y)
        for (int x = 0; x < e.width(); ++x)
            if (ring.at(x, y)) e.set(x, y, true);
}

/// Six-point eye contour around `center` in the 68-point order: image-left
/// corner, two upper lid points, image-right corner, two lower lid points.
inline void place_eye(LandmarkSet& lm, int first, Point2d center, double half_w, double half_h,
                      double roll_rad = 0.0, Point2d pivot = {0, 0}) {
    const Point2d local[6] = {{-half_w, 0.0},         {-half_w * 0.4, -half_h}, {half_w * 0.4, -half_h},
                              {half_w, 0.0},          {half_w * 0.4, half_h},   {-half_w * 0.4, half_h}};
    for (int i = 0; i < 6; ++i) {
        Point2d p{center.x + local[i].x, center.y + local[i].y};
        if (roll_rad != 0.0) {
            const double dx = p.x - pivot.x, dy = p.y - pivot.y;
            p = {pivot.x + dx * std::cos(roll_rad) - dy * std::sin(roll_rad),
                 pivot.y + dx * std::sin(roll_rad) + dy * std::cos(roll_rad)};
        }
        lm.points[first + i] = p;
    }
}

inline Point2d rotate_about(Point2d p, Point2d pivot, double rad) {
    const double dx = p.x - pivot.x, dy = p.y - pivot.y;
    return {pivot.x + dx * std::cos(rad) - dy * std::sin(rad), pivot.y + dx * std::sin(rad) + dy * std::cos(rad)};
}

/// Frontal layout: subject-right eye (36..41) on the image left, subject-left
/// eye (42..47) on the image right, nose tip below their midpoint. Unused
/// points sit on a loose jaw arc so every coordinate is finite and distinct.
inline LandmarkSet frontal_landmarks(Point2d mid, double interocular, double nose_drop, double roll_deg = 0.0,
                                     const std::string& id = "000000") {
    LandmarkSet lm;
    lm.frame_id = id;
    for (int i = 0; i < 68; ++i) {
        const double t = i / 67.0 * 3.14159;
        lm.points[i] = {mid.x - interocular * std::cos(t), mid.y + interocular * 0.2 + interocular * std::sin(t)};
    }
    const double rad = roll_deg * 3.14159265358979323846 / 180.0;
    const double hw = 0.21 * interocular;
    const double hh = 0.45 * hw;
    place_eye(lm, 36, {mid.x - interocular / 2, mid.y}, hw, hh, rad, mid);
    place_eye(lm, 42, {mid.x + interocular / 2, mid.y}, hw, hh, rad, mid);
    lm.points[30] = rotate_about({mid.x, mid.y + nose_drop}, mid, rad);
    return lm;
}

inline void salt_and_pepper(EdgeMap& e, double fraction, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int y = 0; y < e.height(); ++y)
        for (int x = 0; x < e.width(); ++x)
            if (u(rng) < fraction) e.set(x, y, !e.at(x, y));
}

}  // namespace fixtures
