#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "gazelabel/gaze.hpp"
#include "gazelabel/synth.hpp"

using namespace gazelabel;

namespace {

GazeAngles angles(double t1, double t2, double t3 = 0, double t4 = 0) { return {t1, t2, t3, t4}; }

}  // namespace

TEST(PupilAngle, HandCases) {
    EXPECT_DOUBLE_EQ(pupil_angle({10, 0}, {10, 20}), 0.0);
    EXPECT_DOUBLE_EQ(pupil_angle({0, 0}, {20, 20}), 45.0);
    EXPECT_DOUBLE_EQ(pupil_angle({0, 20}, {20, 20}), 90.0);
    EXPECT_DOUBLE_EQ(pupil_angle({40, 0}, {20, 20}), 45.0);
    EXPECT_NEAR(pupil_angle({13, 10}, {10, 20}), std::atan(3.0 / 10.0) * 180 / 3.14159265358979323846, 1e-12);
    EXPECT_THROW(pupil_angle({5, 5}, {5, 5}), UndefinedAngleError);
}

TEST(FaceVertical, PerpendicularToOuterCorners) {
    FaceAnchors a;
    a.right_outer_corner = {10, 10};
    a.left_outer_corner = {50, 10};
    EXPECT_EQ(face_vertical(a), (Point2d{0, 1}));
    a.left_outer_corner = {10 + 40 * std::cos(0.2), 10 + 40 * std::sin(0.2)};
    const Point2d v = face_vertical(a);
    EXPECT_NEAR(v.x, -std::sin(0.2), 1e-12);
    EXPECT_NEAR(v.y, std::cos(0.2), 1e-12);
}

TEST(ClassifyGaze, Rule) {
    EXPECT_EQ(classify_gaze(angles(10, 10), 2), Region::Center);
    EXPECT_EQ(classify_gaze(angles(15, 5), 2), Region::Left);
    EXPECT_EQ(classify_gaze(angles(5, 15), 2), Region::Right);
    EXPECT_EQ(classify_gaze(angles(11, 10), 2), Region::Center);
    EXPECT_EQ(classify_gaze(angles(12, 10), 2), Region::Center);  // boundary belongs to Center
    EXPECT_EQ(classify_gaze(angles(12.000001, 10), 2), Region::Left);
    EXPECT_THROW(classify_gaze(angles(1, 2), -1), InvalidArgument);
}

TEST(ClassifyGaze, PartitionsThePlane) {
    for (double t1 = 0; t1 <= 60; t1 += 0.75)
        for (double t2 = 0; t2 <= 60; t2 += 0.75) {
            const Region r = classify_gaze(angles(t1, t2), 2.0);
            const Region expected = t1 - t2 > 2.0 ? Region::Left : (t2 - t1 > 2.0 ? Region::Right : Region::Center);
            ASSERT_EQ(r, expected) << t1 << "," << t2;
        }
}

TEST(ClassifyHeadPose, SameRuleOnCorners) {
    EXPECT_EQ(classify_head_pose(angles(0, 0, 30, 30)), Region::Center);
    EXPECT_EQ(classify_head_pose(angles(0, 0, 20, 8), 2), Region::Left);
    EXPECT_EQ(classify_head_pose(angles(0, 0, 8, 20), 2), Region::Right);
}

TEST(ClassifyHeadPose, FrontalIsCenterAndAsymmetryIsNot) {
    const auto lm = fixtures::frontal_landmarks({80, 50}, 60, 22);
    const auto a = face_anchors(lm);
    const auto g = gaze_angles(a.left_outer_corner, a.right_outer_corner, a);
    EXPECT_EQ(classify_head_pose(g), Region::Center);

    // Slide the nose sideways until the corner angles differ by about 5 degrees.
    auto turned = lm;
    turned.points[30].x += 4.6;
    const auto ta = face_anchors(turned);
    const auto tg = gaze_angles(ta.left_outer_corner, ta.right_outer_corner, ta);
    EXPECT_GT(std::abs(tg.theta3 - tg.theta4), 4.5);
    EXPECT_NE(classify_head_pose(tg), Region::Center);
}

TEST(Flags, RoundTrip) {
    EXPECT_EQ(flags_to_string(kFlagNone), "");
    const std::uint32_t all = kFlagNoSecondaryLeft | kFlagNoSecondaryRight | kFlagPupilOnNoseAxis;
    EXPECT_EQ(flags_to_string(all), "NO_SECONDARY_LEFT|NO_SECONDARY_RIGHT|PUPIL_ON_NOSE_AXIS");
    for (std::uint32_t f = 0; f < 8; ++f) EXPECT_EQ(flags_from_string(flags_to_string(f)), f);
    EXPECT_FALSE(flags_from_string("BOGUS").has_value());
}

TEST(GazeAngles, SymmetricPupilsAreCenter) {
    const auto lm = fixtures::frontal_landmarks({80, 50}, 60, 22);
    const auto a = face_anchors(lm);
    const auto g = gaze_angles({80 + 31, 51}, {80 - 31, 51}, a);
    EXPECT_DOUBLE_EQ(g.theta1, g.theta2);
    EXPECT_EQ(classify_gaze(g), Region::Center);
}

TEST(GazeAngles, PupilsShiftedTowardSubjectLeft) {
    const auto lm = fixtures::frontal_landmarks({80, 50}, 60, 22);
    const auto a = face_anchors(lm);
    const Point2d l{110 + 3, 50}, r{50 + 3, 50};
    const auto g = gaze_angles(l, r, a);
    // Oracle: atan(|dx| / |dy|) against the image vertical for an unrolled face.
    const double deg = 180.0 / 3.14159265358979323846;
    EXPECT_NEAR(g.theta1, std::atan(33.0 / 22.0) * deg, 1e-12);
    EXPECT_NEAR(g.theta2, std::atan(27.0 / 22.0) * deg, 1e-12);
    EXPECT_EQ(classify_gaze(g), Region::Left);
}

TEST(GazeAngles, RolledCenteredPupilsStayCenter) {
    for (double roll = -10.0; roll <= 10.0; roll += 0.5) {
        const Point2d mid{80, 50};
        const auto lm = fixtures::frontal_landmarks(mid, 60, 22, roll);
        const auto a = face_anchors(lm);
        const double rad = roll * 3.14159265358979323846 / 180.0;
        const auto l = fixtures::rotate_about({110, 50}, mid, rad);
        const auto r = fixtures::rotate_about({50, 50}, mid, rad);
        EXPECT_EQ(classify_gaze(gaze_angles(l, r, a)), Region::Center) << roll;
        EXPECT_EQ(classify_head_pose(gaze_angles(l, r, a)), Region::Center) << roll;
    }
}

TEST(LabelFrame, RenderedGazeDirections) {
    for (double shift : {-0.3, 0.0, 0.3}) {
        synth::FaceParams p;
        p.gaze_shift = shift;
        const auto face = synth::render_face(p);
        const auto label = label_frame(face.image, face.landmarks);
        EXPECT_EQ(label.gaze, synth::region_for_shift(shift)) << shift;
        EXPECT_EQ(label.head_pose, Region::Center);
    }
}

TEST(LabelFrame, MirroredFrameSwapsLabels) {
    for (double shift : {-0.3, 0.0, 0.3}) {
        synth::FaceParams p;
        p.gaze_shift = shift;
        p.roll_deg = 2.0;
        const auto face = synth::render_face(p);
        GrayImage flipped(face.image.width(), face.image.height());
        for (int y = 0; y < flipped.height(); ++y)
            for (int x = 0; x < flipped.width(); ++x) flipped.at(x, y) = face.image.at(face.image.width() - 1 - x, y);
        const auto a = label_frame(face.image, face.landmarks);
        const auto b = label_frame(flipped, mirror_landmarks(face.landmarks, face.image.width()));
        auto swap = [](Region r) { return r == Region::Left ? Region::Right : r == Region::Right ? Region::Left : r; };
        EXPECT_EQ(b.gaze, swap(a.gaze)) << shift;
        EXPECT_EQ(b.head_pose, swap(a.head_pose)) << shift;
    }
}

TEST(LabelFrame, FailureCarriesTheCause) {
    synth::FaceParams p;
    auto face = synth::render_face(p);
    for (auto& v : face.image.pixels()) v = 128;
    try {
        label_frame(face.image, face.landmarks);
        FAIL() << "expected LabelingError";
    } catch (const LabelingError& e) {
        EXPECT_EQ(e.reason(), FailureReason::NoPupil);
    }
}
