#include "gazelabel/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "gazelabel/evaluator.hpp"
#include "gazelabel/raster_io.hpp"

namespace gazelabel::synth {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double standard_normal(std::mt19937_64& rng) {
    const double u1 = 1.0 - uniform01(rng);  // (0, 1]
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

struct Geometry {
    double eye_dx;  // eye center |u|
    double a;       // eye half-width
    double b;       // eye opening half-height
    double iris_r;
    double pupil_r;
    double face_a;  // face ellipse semi-axes
    double face_b;
    double face_cv;  // face ellipse center v
    double iris_du;
    double iris_dv;
};

Geometry geometry_for(const FaceParams& p) {
    Geometry g{};
    g.eye_dx = p.interocular / 2.0;
    g.a = kEyeHalfWidth * p.interocular;
    g.b = kEyeHalfHeight * g.a;
    g.iris_r = kIrisRadius * g.a;
    g.pupil_r = kPupilRadius * g.iris_r;
    g.face_a = 0.95 * p.interocular;
    g.face_b = 1.25 * p.interocular;
    g.face_cv = 0.45 * p.interocular;
    g.iris_du = p.gaze_shift * g.a;
    g.iris_dv = p.vertical_shift * g.a;
    return g;
}

bool inside_ellipse(double u, double v, double cu, double cv, double ra, double rb) {
    const double x = (u - cu) / ra;
    const double y = (v - cv) / rb;
    return x * x + y * y <= 1.0;
}

double shade(const FaceParams& p, const Geometry& g, double u, double v) {
    for (const double side : {-1.0, 1.0}) {
        const double cu = side * g.eye_dx;
        if (inside_ellipse(u, v, cu, 0.0, g.a, g.b)) {
            const double du = u - (cu + g.iris_du);
            const double dv = v - g.iris_dv;
            const double r2 = du * du + dv * dv;
            if (r2 <= g.pupil_r * g.pupil_r) return p.pupil;
            if (r2 <= g.iris_r * g.iris_r) return p.iris;
            return p.sclera;
        }
    }
    if (inside_ellipse(u, v, 0.0, g.face_cv, g.face_a, g.face_b)) {
        // Brows: bars well above each eye, clear of the eye crop.
        const double brow_bottom = -(g.b + 0.12 * p.interocular + 3.0);
        const double brow_top = brow_bottom - 0.06 * p.interocular - 1.5;
        for (const double side : {-1.0, 1.0})
            if (v >= brow_top && v <= brow_bottom && std::abs(u - side * g.eye_dx) <= 1.1 * g.a) return p.brow;
        // Mouth.
        if (std::abs(v - 0.95 * p.interocular) <= 0.03 * p.interocular + 0.5 && std::abs(u) <= 0.35 * p.interocular)
            return 0.6 * p.skin;
        return p.skin;
    }
    return p.background;
}

// Landmark positions in the face frame.
std::array<Point2d, kLandmarkCount> face_frame_landmarks(const FaceParams& p, const Geometry& g) {
    std::array<Point2d, kLandmarkCount> pts{};
    const double D = p.interocular;
    // Jaw 0..16: lower half of the face ellipse, image-left to image-right.
    for (int i = 0; i <= 16; ++i) {
        const double t = std::numbers::pi * (1.0 - i / 16.0);
        pts[i] = {g.face_a * std::cos(t) * 0.98, g.face_cv + g.face_b * 0.8 * std::sin(t) * (i == 0 || i == 16 ? 0.1 : 1.0)};
    }
    // Brows 17..21 over the subject-right eye, 22..26 over the subject-left.
    const double brow_v = -(g.b + 0.12 * D + 3.0) - 0.03 * D;
    for (int i = 0; i < 5; ++i) {
        const double t = -1.0 + i * 0.5;
        pts[17 + i] = {-g.eye_dx + t * g.a, brow_v};
        pts[22 + i] = {g.eye_dx + t * g.a, brow_v};
    }
    // Nose bridge 27..30 and nostrils 31..35.
    for (int i = 0; i < 4; ++i) pts[27 + i] = {0.0, 0.1 * D + i * 0.15 * D};
    for (int i = 0; i < 5; ++i) pts[31 + i] = {(-0.15 + 0.075 * i) * D, 0.62 * D};
    // Eyes: corner, two upper-lid points, corner, two lower-lid points.
    const double lid = g.b * std::sqrt(8.0 / 9.0);
    const double third = g.a / 3.0;
    const double r = -g.eye_dx;  // subject-right eye (image left)
    pts[36] = {r - g.a, 0.0};
    pts[37] = {r - third, -lid};
    pts[38] = {r + third, -lid};
    pts[39] = {r + g.a, 0.0};
    pts[40] = {r + third, lid};
    pts[41] = {r - third, lid};
    const double l = g.eye_dx;  // subject-left eye (image right)
    pts[42] = {l - g.a, 0.0};
    pts[43] = {l - third, -lid};
    pts[44] = {l + third, -lid};
    pts[45] = {l + g.a, 0.0};
    pts[46] = {l + third, lid};
    pts[47] = {l - third, lid};
    // Mouth 48..67 on two ellipses.
    const double mv = 0.95 * D;
    for (int i = 0; i < 12; ++i) {
        const double t = std::numbers::pi - i * (2.0 * std::numbers::pi / 12.0);
        pts[48 + i] = {0.35 * D * std::cos(t), mv - 0.08 * D * std::sin(t)};
    }
    for (int i = 0; i < 8; ++i) {
        const double t = std::numbers::pi - i * (2.0 * std::numbers::pi / 8.0);
        pts[60 + i] = {0.25 * D * std::cos(t), mv - 0.03 * D * std::sin(t)};
    }
    return pts;
}

}  // namespace

Region region_for_shift(double gaze_shift) noexcept {
    if (gaze_shift >= 0.1) return Region::Left;
    if (gaze_shift <= -0.1) return Region::Right;
    return Region::Center;
}

Face render_face(const FaceParams& p) {
    const Geometry g = geometry_for(p);
    const double roll = p.roll_deg * std::numbers::pi / 180.0;
    const double c = std::cos(roll);
    const double s = std::sin(roll);
    auto to_image = [&](Point2d f) { return Point2d{p.center.x + c * f.x - s * f.y, p.center.y + s * f.x + c * f.y}; };

    std::mt19937_64 rng(p.seed);
    GrayImage image(p.width, p.height);
    constexpr int kSub = 4;
    for (int y = 0; y < p.height; ++y) {
        for (int x = 0; x < p.width; ++x) {
            double acc = 0.0;
            for (int sy = 0; sy < kSub; ++sy)
                for (int sx = 0; sx < kSub; ++sx) {
                    const double ix = x - 0.5 + (sx + 0.5) / kSub - p.center.x;
                    const double iy = y - 0.5 + (sy + 0.5) / kSub - p.center.y;
                    acc += shade(p, g, c * ix + s * iy, -s * ix + c * iy);
                }
            double v = acc / (kSub * kSub);
            if (p.noise_sigma > 0.0) v += p.noise_sigma * standard_normal(rng);
            image.at(x, y) = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
        }
    }

    Face face{std::move(image), {}, {}, {}, region_for_shift(p.gaze_shift)};
    const auto pts = face_frame_landmarks(p, g);
    for (std::size_t i = 0; i < kLandmarkCount; ++i) {
        Point2d q = to_image(pts[i]);
        if (p.landmark_jitter > 0.0) {
            q.x += uniform(rng, -p.landmark_jitter, p.landmark_jitter);
            q.y += uniform(rng, -p.landmark_jitter, p.landmark_jitter);
        }
        face.landmarks.points[i] = q;
    }
    face.left_pupil = to_image({g.eye_dx + g.iris_du, g.iris_dv});
    face.right_pupil = to_image({-g.eye_dx + g.iris_du, g.iris_dv});
    return face;
}

FaceParams random_face(std::mt19937_64& rng, int width, int height) {
    FaceParams p;
    p.width = width;
    p.height = height;
    const double limit = std::min(width / 2.7, height / 1.9);
    p.interocular = uniform(rng, std::min(40.0, 0.8 * limit), limit);
    p.center = {width / 2.0 + uniform(rng, -4.0, 4.0), height * 0.42 + uniform(rng, -3.0, 3.0)};
    p.roll_deg = uniform(rng, -5.0, 5.0);
    const double pick = uniform01(rng);
    const double base = pick < 1.0 / 3.0 ? -0.3 : pick < 2.0 / 3.0 ? 0.0 : 0.3;
    p.gaze_shift = base + uniform(rng, -0.04, 0.04);
    p.vertical_shift = uniform(rng, -0.05, 0.05);
    p.background = static_cast<std::uint8_t>(uniform(rng, 30.0, 110.0));
    p.skin = static_cast<std::uint8_t>(uniform(rng, 150.0, 190.0));
    p.sclera = static_cast<std::uint8_t>(uniform(rng, 215.0, 240.0));
    p.iris = static_cast<std::uint8_t>(uniform(rng, 50.0, 90.0));
    p.pupil = static_cast<std::uint8_t>(uniform(rng, 10.0, 35.0));
    p.noise_sigma = uniform(rng, 0.0, 4.0);
    p.landmark_jitter = 0.5;
    p.seed = rng();
    return p;
}

void write_corpus(const std::filesystem::path& dir, const CorpusPlan& plan) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::mt19937_64 rng(plan.seed);
    std::ofstream manifest(dir / "manifest.csv", std::ios::binary);
    manifest << "subject_id,frames_dir,landmarks\n";
    std::vector<GroundTruthRecord> truth;
    char name[64];
    for (int s = 0; s < plan.subjects; ++s) {
        std::snprintf(name, sizeof name, "subject%02d", s);
        const std::string subject = name;
        const fs::path frames = dir / subject / "frames";
        fs::create_directories(frames);
        std::vector<LandmarkSet> sets;
        const FaceParams base = random_face(rng, plan.width, plan.height);
        for (int f = 0; f < plan.frames_per_subject; ++f) {
            // Same subject, drifting gaze and pose from frame to frame.
            FaceParams p = random_face(rng, plan.width, plan.height);
            p.interocular = base.interocular;
            p.skin = base.skin;
            p.sclera = base.sclera;
            p.iris = base.iris;
            p.pupil = base.pupil;
            p.background = base.background;
            Face face = render_face(p);
            std::snprintf(name, sizeof name, "%06d", f);
            face.landmarks.frame_id = name;
            sets.push_back(face.landmarks);
            truth.push_back({subject + "/" + name, face.left_pupil, face.right_pupil, face.gaze, std::nullopt});
            std::snprintf(name, sizeof name, "frame_%06d.png", f);
            write_image(frames / name, face.image);
        }
        std::ofstream lm(dir / subject / "landmarks.csv", std::ios::binary);
        lm << serialize_landmarks(sets);
        manifest << subject << ',' << subject << "/frames," << subject << "/landmarks.csv\n";
    }
    std::ofstream gt(dir / "ground_truth.csv", std::ios::binary);
    gt << serialize_ground_truth(truth);
}

}  // namespace gazelabel::synth
