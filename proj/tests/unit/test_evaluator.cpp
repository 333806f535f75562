#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "gazelabel/errors.hpp"
#include "gazelabel/evaluator.hpp"

using namespace gazelabel;

namespace {

GroundTruthRecord gt(std::string id, Point2d l, Point2d r, std::optional<Region> region = std::nullopt) {
    return {std::move(id), l, r, region, std::nullopt};
}

Prediction pred(std::string id, Point2d l, Point2d r, std::optional<Region> region = std::nullopt) {
    return {std::move(id), l, r, region, std::nullopt};
}

Prediction skipped(std::string id, std::string reason) {
    Prediction p;
    p.frame_id = std::move(id);
    p.skip_reason = std::move(reason);
    return p;
}

}  // namespace

TEST(NormalizedError, HandCases) {
    EXPECT_EQ(normalized_error({0, 0}, {50, 0}, {0, 0}, {50, 0}), 0.0);
    EXPECT_EQ(normalized_error({3, 0}, {50, 4}, {0, 0}, {50, 0}), 0.08);
    const double e = normalized_error({2, 0}, {60, 3}, {0, 0}, {60, 0});
    EXPECT_EQ(e, 0.05);
    EXPECT_THROW(normalized_error({0, 0}, {1, 1}, {5, 5}, {5, 5}), EvaluationError);
}

TEST(NormalizedError, BoundaryIsInsideTheBucket) {
    const std::vector<GroundTruthRecord> truth{gt("a", {0, 0}, {60, 0})};
    const auto s = accuracy_report({pred("a", {2, 0}, {60, 3})}, truth);
    EXPECT_EQ(s.accuracy_at.at(0.05), 1.0);
}

TEST(NormalizedError, InvariantUnderSimilarityTransforms) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-50, 50);
    for (int i = 0; i < 200; ++i) {
        const Point2d pts[4] = {{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}};
        const double base = normalized_error(pts[0], pts[1], pts[2], pts[3]);
        const double ang = u(rng) / 10, scale = 0.5 + std::abs(u(rng)) / 20;
        const Point2d shift{u(rng), u(rng)};
        Point2d q[4];
        for (int k = 0; k < 4; ++k)
            q[k] = Point2d{scale * (pts[k].x * std::cos(ang) - pts[k].y * std::sin(ang)),
                           scale * (pts[k].x * std::sin(ang) + pts[k].y * std::cos(ang))} + shift;
        EXPECT_NEAR(normalized_error(q[0], q[1], q[2], q[3]), base, 1e-9 * std::max(1.0, base));
        // Relabeling the eyes on both sides changes nothing.
        EXPECT_EQ(normalized_error(pts[1], pts[0], pts[3], pts[2]), base);
    }
}

TEST(AccuracyReport, CountsPerThreshold) {
    // Errors 0.03, 0.07 and 0.2 at interocular 100.
    const std::vector<GroundTruthRecord> truth{gt("a", {0, 0}, {100, 0}), gt("b", {0, 0}, {100, 0}),
                                               gt("c", {0, 0}, {100, 0})};
    const std::vector<Prediction> preds{pred("a", {3, 0}, {100, 0}), pred("b", {0, 7}, {100, 0}),
                                        pred("c", {0, 0}, {80, 0})};
    const auto s = accuracy_report(preds, truth);
    EXPECT_EQ(s.n, 3u);
    EXPECT_DOUBLE_EQ(s.accuracy_at.at(0.05), 1.0 / 3);
    EXPECT_DOUBLE_EQ(s.accuracy_at.at(0.10), 2.0 / 3);
    EXPECT_DOUBLE_EQ(s.accuracy_at.at(0.25), 1.0);
    EXPECT_NEAR(s.mean_e, (0.03 + 0.07 + 0.2) / 3, 1e-15);
}

TEST(AccuracyReport, SkippedFramesLeaveTheDenominator) {
    std::vector<GroundTruthRecord> truth;
    std::vector<Prediction> preds;
    for (const char* id : {"a", "b", "c"}) {
        truth.push_back(gt(id, {0, 0}, {100, 0}));
        preds.push_back(pred(id, {1, 0}, {100, 0}));
    }
    truth.push_back(gt("d", {0, 0}, {100, 0}));
    preds.push_back(skipped("d", "NO_PUPIL"));
    const auto s = accuracy_report(preds, truth);
    EXPECT_EQ(s.n, 3u);
    EXPECT_EQ(s.skipped, 1u);
    EXPECT_EQ(s.skipped_reasons.at("NO_PUPIL"), 1u);
    EXPECT_EQ(s.accuracy_at.at(0.05), 1.0);
}

TEST(AccuracyReport, UnsampledGroundTruthIsNotASkip) {
    const std::vector<GroundTruthRecord> truth{gt("a", {0, 0}, {100, 0}), gt("b", {0, 0}, {100, 0})};
    const auto s = accuracy_report({pred("a", {0, 0}, {100, 0}), pred("zz", {0, 0}, {1, 0})}, truth);
    EXPECT_EQ(s.n, 1u);
    EXPECT_EQ(s.skipped, 0u);
    EXPECT_EQ(s.unmatched_truth, 1u);
    EXPECT_EQ(s.unmatched_predictions, 1u);
}

TEST(AccuracyReport, Errors) {
    const std::vector<GroundTruthRecord> truth{gt("a", {0, 0}, {100, 0})};
    EXPECT_THROW(accuracy_report({pred("x", {0, 0}, {1, 0})}, truth), EvaluationError);
    EXPECT_THROW(accuracy_report({pred("a", {0, 0}, {1, 0}), pred("a", {0, 0}, {1, 0})}, truth), EvaluationError);
}

TEST(AccuracyReport, MonotoneInThreshold) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0, 30);
    std::vector<GroundTruthRecord> truth;
    std::vector<Prediction> preds;
    for (int i = 0; i < 200; ++i) {
        const std::string id = std::to_string(i);
        truth.push_back(gt(id, {0, 0}, {100, 0}));
        preds.push_back(pred(id, {u(rng), 0}, {100, u(rng)}));
    }
    EvalOptions o;
    o.thresholds = {0.25, 0.01, 0.05, 0.1, 0.15, 0.3};
    const auto s = accuracy_report(preds, truth, o);
    double prev = -1;
    for (const auto& [t, a] : s.accuracy_at) {
        EXPECT_GE(a, prev) << t;
        prev = a;
    }
}

TEST(AccuracyReport, IndependentOfRecordOrder) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0, 10);
    std::vector<GroundTruthRecord> truth;
    std::vector<Prediction> preds;
    const Region regions[3] = {Region::Left, Region::Right, Region::Center};
    for (int i = 0; i < 50; ++i) {
        const std::string id = "f" + std::to_string(i);
        truth.push_back(gt(id, {0, 0}, {64, 0}, regions[i % 3]));
        preds.push_back(i % 7 == 0 ? skipped(id, "NO_PUPIL") : pred(id, {u(rng), u(rng)}, {64, u(rng)}, regions[(i / 2) % 3]));
    }
    const auto a = accuracy_report(preds, truth);
    std::shuffle(truth.begin(), truth.end(), rng);
    std::shuffle(preds.begin(), preds.end(), rng);
    const auto b = accuracy_report(preds, truth);
    EXPECT_EQ(format_summary_json(a), format_summary_json(b));
    EXPECT_EQ(a.mean_e, b.mean_e);
}

TEST(SignMapping, Convention) {
    EXPECT_EQ(map_angular_to_region(GazeSign::Zero), Region::Center);
    EXPECT_EQ(map_angular_to_region(GazeSign::Positive), Region::Left);
    EXPECT_EQ(map_angular_to_region(GazeSign::Negative), Region::Right);
    EXPECT_EQ(map_angular_to_region(GazeSign::Positive, SignConvention::PositiveIsRight), Region::Right);
    EXPECT_EQ(map_angular_to_region(GazeSign::Zero, SignConvention::PositiveIsRight), Region::Center);
}

TEST(RegionAccuracy, IdenticalAndAllCenter) {
    const std::vector<Region> truth{Region::Left, Region::Right, Region::Center, Region::Left, Region::Right,
                                    Region::Center};
    const auto same = region_accuracy(truth, truth);
    EXPECT_EQ(same.fraction, 1.0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) EXPECT_EQ(same.confusion[i][j], i == j ? 2u : 0u);

    const auto center = region_accuracy(std::vector<Region>(6, Region::Center), truth);
    EXPECT_DOUBLE_EQ(center.fraction, 1.0 / 3);
    EXPECT_THROW(region_accuracy({Region::Left}, truth), EvaluationError);
}

TEST(AccuracyReport, SignTokensFeedRegionAccuracy) {
    const auto truth = parse_ground_truth("a,0,0,10,0,+\nb,0,0,10,0,-\nc,0,0,10,0,0\n");
    std::vector<Prediction> preds{pred("a", {0, 0}, {10, 0}, Region::Left), pred("b", {0, 0}, {10, 0}, Region::Right),
                                  pred("c", {0, 0}, {10, 0}, Region::Center)};
    EXPECT_EQ(accuracy_report(preds, truth).region->fraction, 1.0);
    EvalOptions flipped;
    flipped.sign_convention = SignConvention::PositiveIsRight;
    EXPECT_DOUBLE_EQ(accuracy_report(preds, truth, flipped).region->fraction, 1.0 / 3);
}

TEST(GroundTruthFile, ParseAndRoundTrip) {
    const std::string text = "# comment\ns1/000000,10.5,20,40,20.25,Left\ns1/000003,1,2,3,4\n";
    const auto recs = parse_ground_truth(text);
    ASSERT_EQ(recs.size(), 2u);
    EXPECT_EQ(recs[0].region, Region::Left);
    EXPECT_FALSE(recs[1].region.has_value());
    const auto again = parse_ground_truth(serialize_ground_truth(recs));
    ASSERT_EQ(again.size(), 2u);
    EXPECT_EQ(again[0].left_center, recs[0].left_center);
    EXPECT_EQ(again[1].right_center, recs[1].right_center);
}

TEST(GroundTruthFile, Errors) {
    EXPECT_THROW(parse_ground_truth("a,1,2,3\n"), ParseError);
    EXPECT_THROW(parse_ground_truth("a,1,2,x,4\n"), ParseError);
    EXPECT_THROW(parse_ground_truth("a,1,2,1,2\n"), ParseError);
    EXPECT_THROW(parse_ground_truth("a,1,2,3,4,Up\n"), ParseError);
    try {
        parse_ground_truth("a,1,2,3,4\na,1,2,3,4\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
}

TEST(BioIdEyeFile, SubjectLeftIsTheLargerX) {
    const auto path = std::filesystem::temp_directory_path() / "gazelabel_test_bioid.eye";
    {
        std::ofstream out(path);
        out << "#LX\tLY\tRX\tRY\n232\t110\t161\t110\n";
    }
    const auto r = read_bioid_eye_file(path, "BioID_0000");
    EXPECT_EQ(r.left_center, (Point2d{232, 110}));
    EXPECT_EQ(r.right_center, (Point2d{161, 110}));
    std::filesystem::remove(path);
}
