#include <gtest/gtest.h>

#include <string>

#include "fixtures.hpp"
#include "gazelabel/errors.hpp"
#include "gazelabel/landmarks.hpp"

using namespace gazelabel;

namespace {

std::string record_line(const std::string& id, int points, double base = 1.0) {
    std::string s = id;
    for (int i = 0; i < points; ++i) s += "," + std::to_string(base + i) + "," + std::to_string(base + 2 * i + 0.5);
    return s + "\n";
}

LandmarkSet indexed_landmarks() {
    LandmarkSet lm;
    lm.frame_id = "000007";
    for (int i = 0; i < 68; ++i) lm.points[i] = {static_cast<double>(i), static_cast<double>(i % 5)};
    return lm;
}

}  // namespace

TEST(LandmarkParse, SingleRecord) {
    const auto f = parse_landmark_file(record_line("000000", 68));
    ASSERT_EQ(f.records.size(), 1u);
    EXPECT_TRUE(f.issues.empty());
    EXPECT_EQ(f.records[0].frame_id, "000000");
    EXPECT_DOUBLE_EQ(f.records[0].points[3].x, 4.0);
    EXPECT_DOUBLE_EQ(f.records[0].points[3].y, 7.5);
}

TEST(LandmarkParse, ShortRecordCitesItsLine) {
    const auto f = parse_landmark_file(record_line("a", 68) + record_line("b", 67));
    EXPECT_EQ(f.records.size(), 1u);
    ASSERT_EQ(f.issues.size(), 1u);
    EXPECT_EQ(f.issues[0].line, 2u);
    EXPECT_EQ(f.issues[0].frame_id, "b");
    EXPECT_NE(f.issues[0].message.find("67 points"), std::string::npos);
}

TEST(LandmarkParse, TenRecordsOneMalformed) {
    std::string text;
    for (int i = 0; i < 10; ++i) {
        std::string line = record_line("f" + std::to_string(i), 68, i);
        if (i == 6) line.replace(line.find(','), 4, ",x.5");
        text += line;
    }
    const auto f = parse_landmark_file(text);
    ASSERT_EQ(f.records.size(), 9u);
    ASSERT_EQ(f.issues.size(), 1u);
    EXPECT_EQ(f.issues[0].line, 7u);
    EXPECT_EQ(f.issues[0].frame_id, "f6");
    for (std::size_t i = 0; i < 9; ++i) EXPECT_EQ(f.records[i].frame_id, "f" + std::to_string(i < 6 ? i : i + 1));
}

TEST(LandmarkParse, RejectsDuplicatesAndNonNumbers) {
    auto f = parse_landmark_file(record_line("a", 68) + record_line("a", 68));
    EXPECT_EQ(f.records.size(), 1u);
    ASSERT_EQ(f.issues.size(), 1u);
    EXPECT_NE(f.issues[0].message.find("duplicate"), std::string::npos);

    for (const char* bad : {"nan", "inf", "1e3", "", "+1", "0x10", "1.2.3"}) {
        std::string line = record_line("z", 68);
        const auto comma = line.find(',');
        line.replace(comma + 1, line.find(',', comma + 1) - comma - 1, bad);
        f = parse_landmark_file(line);
        EXPECT_TRUE(f.records.empty()) << bad;
        EXPECT_EQ(f.issues.size(), 1u) << bad;
    }
}

TEST(LandmarkParse, SkipsBlankLinesAndAcceptsCrlf) {
    std::string text = "\n" + record_line("a", 68) + "\r\n  \n";
    std::string crlf = record_line("b", 68);
    crlf.insert(crlf.size() - 1, "\r");
    const auto f = parse_landmark_file(text + crlf);
    EXPECT_EQ(f.records.size(), 2u);
    EXPECT_TRUE(f.issues.empty());
}

TEST(LandmarkParse, SerializeRoundTrip) {
    std::vector<LandmarkSet> sets;
    for (int k = 0; k < 3; ++k) {
        auto lm = fixtures::frontal_landmarks({80.25 + k, 52.125}, 60.0 + 0.1 * k, 20.0, 3.0 * k, "00000" + std::to_string(k));
        sets.push_back(lm);
    }
    const std::string text = serialize_landmarks(sets);
    const auto once = parse_landmark_file(text);
    ASSERT_TRUE(once.issues.empty());
    ASSERT_EQ(once.records.size(), 3u);
    for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_EQ(once.records[k].frame_id, sets[k].frame_id);
        EXPECT_EQ(once.records[k].points, sets[k].points);
    }
    EXPECT_EQ(serialize_landmarks(once.records), text);
}

TEST(EyeContours, IndexContract) {
    const auto lm = indexed_landmarks();
    const auto left = eye_contour(lm, Side::Left);
    const auto right = eye_contour(lm, Side::Right);
    for (int i = 0; i < 6; ++i) {
        EXPECT_DOUBLE_EQ(left.points[i].x, 42.0 + i);
        EXPECT_DOUBLE_EQ(right.points[i].x, 36.0 + i);
    }
    EXPECT_EQ(left.side, Side::Left);
    EXPECT_EQ(right.side, Side::Right);
}

TEST(EyeContours, CollinearContourIsDegenerate) {
    auto lm = fixtures::frontal_landmarks({80, 50}, 60, 20);
    for (int i = 42; i < 48; ++i) lm.points[i] = {100.0 + i, 50.0 + 0.5 * i};
    EXPECT_TRUE(is_degenerate(eye_contour(lm, Side::Left)));
    try {
        eye_contours(lm);
        FAIL() << "expected DegenerateEyeError";
    } catch (const DegenerateEyeError& e) {
        EXPECT_EQ(e.side(), Side::Left);
    }
}

TEST(EyeContours, MirrorSwapsSidesAndReflectsGeometry) {
    const int width = 160;
    const auto lm = fixtures::frontal_landmarks({70.5, 50}, 60, 22, 4.0);
    const auto m = mirror_landmarks(lm, width);
    const auto left = eye_contour(lm, Side::Left);
    const auto mirrored_right = eye_contour(m, Side::Right);
    // Outer corner 45 maps to outer corner 36, and so on around the contour.
    const int partner[6] = {3, 2, 1, 0, 5, 4};
    for (int i = 0; i < 6; ++i) {
        EXPECT_DOUBLE_EQ(mirrored_right.points[partner[i]].x, width - 1 - left.points[i].x);
        EXPECT_DOUBLE_EQ(mirrored_right.points[partner[i]].y, left.points[i].y);
    }
    EXPECT_DOUBLE_EQ(m.points[30].x, width - 1 - lm.points[30].x);
    // Mirroring twice is the identity.
    const auto back = mirror_landmarks(m, width);
    for (int i = 0; i < 68; ++i) {
        EXPECT_NEAR(back.points[i].x, lm.points[i].x, 1e-12);
        EXPECT_EQ(back.points[i].y, lm.points[i].y);
    }
}

TEST(EyeContours, MirroredLeftEyeStaysOnImageRight) {
    const auto lm = fixtures::frontal_landmarks({80, 50}, 60, 22);
    const auto m = mirror_landmarks(lm, 160);
    EXPECT_GT(eye_contour(m, Side::Left).points[0].x, eye_contour(m, Side::Right).points[0].x);
}

TEST(ContourHeight, Basics) {
    EyeContour c;
    const double ys[6] = {10, 12, 14, 14, 12, 10};
    for (int i = 0; i < 6; ++i) c.points[i] = {static_cast<double>(i), ys[i]};
    EXPECT_DOUBLE_EQ(contour_height(c), 4.0);
    for (auto& p : c.points) p.y = 7;
    EXPECT_DOUBLE_EQ(contour_height(c), 0.0);
}

TEST(ContourHeight, OpenEyeFixture) {
    // Lid points sit at +-half_h around the center.
    const auto lm = fixtures::frontal_landmarks({80, 50}, 60, 20);
    EXPECT_NEAR(contour_height(eye_contour(lm, Side::Right)), 2 * 0.45 * 0.21 * 60, 1e-12);
}

TEST(CropEye, PadsTheInclusiveBoundingBox) {
    const GrayImage img(64, 48, 0);
    EyeContour c;
    const Point2d pts[6] = {{10, 15}, {15, 10}, {25, 10}, {30, 15}, {25, 20}, {15, 20}};
    for (int i = 0; i < 6; ++i) c.points[i] = pts[i];
    const auto crop = crop_eye(img, c, 2);
    EXPECT_EQ(crop.origin, (Point2i{8, 8}));
    // Columns 8..32 and rows 8..22 inclusive.
    EXPECT_EQ(crop.image.width(), 25);
    EXPECT_EQ(crop.image.height(), 15);
}

TEST(CropEye, ClampsAtTheBorder) {
    const GrayImage img(40, 30, 0);
    EyeContour c;
    const Point2d pts[6] = {{1, 3}, {3, 1}, {6, 1}, {8, 3}, {6, 5}, {3, 5}};
    for (int i = 0; i < 6; ++i) c.points[i] = pts[i];
    const auto crop = crop_eye(img, c, 4);
    EXPECT_EQ(crop.origin, (Point2i{0, 0}));
    EXPECT_EQ(crop.image.width(), 13);
    EXPECT_EQ(crop.image.height(), 10);
}

TEST(CropEye, OutsideImageIsAnError) {
    const GrayImage img(40, 30, 0);
    EyeContour c;
    for (int i = 0; i < 6; ++i) c.points[i] = {100.0 + i, 100.0 + (i % 3)};
    EXPECT_THROW(crop_eye(img, c, 2), Error);
}

TEST(CropEye, CoordinateRoundTripIsExact) {
    GrayImage img(50, 40);
    for (int y = 0; y < 40; ++y)
        for (int x = 0; x < 50; ++x) img.at(x, y) = static_cast<std::uint8_t>(x * 5 + y);
    const auto lm = fixtures::frontal_landmarks({25.3, 18.7}, 24, 10, 6.0);
    const auto crop = crop_eye(img, eye_contour(lm, Side::Left));
    for (int y = 0; y < crop.image.height(); ++y)
        for (int x = 0; x < crop.image.width(); ++x) {
            const Point2d f = crop.to_face({static_cast<double>(x), static_cast<double>(y)});
            EXPECT_EQ(crop.image.at(x, y), img.at(static_cast<int>(f.x), static_cast<int>(f.y)));
            EXPECT_EQ(crop.to_crop(f), (Point2d{static_cast<double>(x), static_cast<double>(y)}));
        }
}

TEST(CropEye, EyeRegionIsTheContourInterior) {
    const GrayImage img(64, 48, 0);
    EyeContour c;
    const Point2d pts[6] = {{10, 15}, {15, 10}, {25, 10}, {30, 15}, {25, 20}, {15, 20}};
    for (int i = 0; i < 6; ++i) c.points[i] = pts[i];
    const auto crop = crop_eye(img, c, 2);
    ASSERT_TRUE(crop.eye_region.has_value());
    const auto& m = *crop.eye_region;
    auto inside = [&](double x, double y) {
        // Convex hexagon: inside iff on the same side of every edge.
        for (int i = 0; i < 6; ++i) {
            const Point2d a = pts[i], b = pts[(i + 1) % 6];
            if ((b.x - a.x) * (y - a.y) - (b.y - a.y) * (x - a.x) < 0) return false;
        }
        return true;
    };
    std::size_t n = 0;
    for (int y = 0; y < m.height(); ++y)
        for (int x = 0; x < m.width(); ++x) {
            const double fx = x + crop.origin.x, fy = y + crop.origin.y;
            const bool on_edge = [&] {
                for (int i = 0; i < 6; ++i) {
                    const Point2d a = pts[i], b = pts[(i + 1) % 6];
                    if ((b.x - a.x) * (fy - a.y) - (b.y - a.y) * (fx - a.x) == 0) return true;
                }
                return false;
            }();
            if (on_edge) continue;  // boundary pixels may go either way
            EXPECT_EQ(m.at(x, y), inside(fx, fy)) << fx << "," << fy;
            n += m.at(x, y);
        }
    EXPECT_GT(n, 100u);
}
