#include "gazelabel/evaluator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

namespace gazelabel {

Region map_angular_to_region(GazeSign sign, SignConvention convention) noexcept {
    switch (sign) {
        case GazeSign::Zero: return Region::Center;
        case GazeSign::Positive: return convention == SignConvention::PositiveIsLeft ? Region::Left : Region::Right;
        case GazeSign::Negative: return convention == SignConvention::PositiveIsLeft ? Region::Right : Region::Left;
    }
    return Region::Center;
}

namespace {

int region_index(Region r) noexcept {
    switch (r) {
        case Region::Left: return 0;
        case Region::Right: return 1;
        case Region::Center: return 2;
    }
    return 2;
}

bool parse_number(std::string_view s, double& v) {
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return ec == std::errc{} && ptr == s.data() + s.size() && std::isfinite(v);
}

std::string shortest(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

}  // namespace

std::vector<GroundTruthRecord> parse_ground_truth(std::string_view text) {
    std::vector<GroundTruthRecord> out;
    std::unordered_set<std::string> seen;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() || line.front() == '#') continue;

        std::vector<std::string_view> fields;
        for (std::size_t start = 0;;) {
            const auto comma = line.find(',', start);
            fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (fields.size() != 5 && fields.size() != 6)
            throw ParseError(line_no, "expected 5 or 6 fields, got " + std::to_string(fields.size()));
        GroundTruthRecord r;
        r.frame_id = std::string(fields[0]);
        if (r.frame_id.empty()) throw ParseError(line_no, "empty frame_id");
        double v[4];
        for (int i = 0; i < 4; ++i)
            if (!parse_number(fields[i + 1], v[i]))
                throw ParseError(line_no, "non-numeric coordinate '" + std::string(fields[i + 1]) + "'");
        r.left_center = {v[0], v[1]};
        r.right_center = {v[2], v[3]};
        if (r.left_center == r.right_center) throw ParseError(line_no, "coincident eye centers");
        if (fields.size() == 6) {
            const auto token = fields[5];
            if (auto region = region_from_string(token)) {
                r.region = region;
            } else if (token == "+") {
                r.gaze_point_sign = GazeSign::Positive;
            } else if (token == "-") {
                r.gaze_point_sign = GazeSign::Negative;
            } else if (token == "0") {
                r.gaze_point_sign = GazeSign::Zero;
            } else {
                throw ParseError(line_no, "unknown region/sign token '" + std::string(token) + "'");
            }
        }
        if (!seen.insert(r.frame_id).second) throw ParseError(line_no, "duplicate frame_id '" + r.frame_id + "'");
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<GroundTruthRecord> read_ground_truth(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open ground-truth file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_ground_truth(ss.str());
}

std::string serialize_ground_truth(const std::vector<GroundTruthRecord>& records) {
    std::string out;
    for (const auto& r : records) {
        out += r.frame_id + ',' + shortest(r.left_center.x) + ',' + shortest(r.left_center.y) + ',' +
               shortest(r.right_center.x) + ',' + shortest(r.right_center.y);
        if (r.region) {
            out += ',';
            out += to_string(*r.region);
        } else if (r.gaze_point_sign) {
            out += *r.gaze_point_sign == GazeSign::Positive ? ",+" : *r.gaze_point_sign == GazeSign::Negative ? ",-" : ",0";
        }
        out += '\n';
    }
    return out;
}

double normalized_error(Point2d pred_left, Point2d pred_right, Point2d gt_left, Point2d gt_right) {
    const double interocular = distance(gt_left, gt_right);
    if (interocular == 0.0) throw EvaluationError("ground-truth eye centers coincide");
    return std::max(distance(pred_left, gt_left), distance(pred_right, gt_right)) / interocular;
}

RegionAccuracy region_accuracy(const std::vector<Region>& predicted, const std::vector<Region>& truth) {
    if (predicted.size() != truth.size())
        throw EvaluationError("region sequences differ in length: " + std::to_string(predicted.size()) + " vs " +
                              std::to_string(truth.size()));
    if (truth.empty()) throw EvaluationError("no region labels to compare");
    RegionAccuracy acc;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        ++acc.confusion[region_index(truth[i])][region_index(predicted[i])];
        if (truth[i] == predicted[i]) ++hits;
    }
    acc.fraction = static_cast<double>(hits) / static_cast<double>(truth.size());
    return acc;
}

EvalSummary accuracy_report(const std::vector<Prediction>& predictions, const std::vector<GroundTruthRecord>& truth,
                            const EvalOptions& options) {
    std::unordered_map<std::string, const Prediction*> by_id;
    for (const auto& p : predictions)
        if (!by_id.emplace(p.frame_id, &p).second) throw EvaluationError("duplicate prediction for '" + p.frame_id + "'");

    std::vector<const GroundTruthRecord*> gt;
    gt.reserve(truth.size());
    for (const auto& t : truth) gt.push_back(&t);
    std::sort(gt.begin(), gt.end(), [](auto* a, auto* b) { return a->frame_id < b->frame_id; });
    for (std::size_t i = 1; i < gt.size(); ++i)
        if (gt[i]->frame_id == gt[i - 1]->frame_id)
            throw EvaluationError("duplicate ground truth for '" + gt[i]->frame_id + "'");

    EvalSummary s;
    std::vector<double> errors;
    std::vector<Region> region_pred, region_truth;
    std::size_t matched = 0;
    for (const auto* t : gt) {
        const auto it = by_id.find(t->frame_id);
        if (it == by_id.end()) {
            ++s.unmatched_truth;
            continue;
        }
        ++matched;
        const Prediction& p = *it->second;
        if (p.skip_reason) {
            ++s.skipped;
            ++s.skipped_reasons[*p.skip_reason];
            continue;
        }
        errors.push_back(normalized_error(p.left, p.right, t->left_center, t->right_center));
        std::optional<Region> true_region = t->region;
        if (!true_region && t->gaze_point_sign) true_region = map_angular_to_region(*t->gaze_point_sign, options.sign_convention);
        if (true_region && p.region) {
            region_truth.push_back(*true_region);
            region_pred.push_back(*p.region);
        }
    }
    if (matched == 0) throw EvaluationError("no prediction matches any ground-truth frame_id");
    s.unmatched_predictions = predictions.size() - matched;

    s.n = errors.size();
    double sum = 0.0;
    for (double e : errors) sum += e;
    s.mean_e = s.n ? sum / static_cast<double>(s.n) : 0.0;
    for (double t : options.thresholds) {
        const auto within = std::count_if(errors.begin(), errors.end(), [t](double e) { return e <= t; });
        s.accuracy_at[t] = s.n ? static_cast<double>(within) / static_cast<double>(s.n) : 0.0;
    }
    if (!region_truth.empty()) s.region = region_accuracy(region_pred, region_truth);
    return s;
}

GroundTruthRecord read_bioid_eye_file(const std::filesystem::path& path, const std::string& frame_id) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open eye file " + path.string());
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        std::istringstream ss(line);
        double v[4];
        if (!(ss >> v[0] >> v[1] >> v[2] >> v[3])) throw ParseError(line_no, "expected four numbers in " + path.string());
        Point2d a{v[0], v[1]}, b{v[2], v[3]};
        if (a == b) throw ParseError(line_no, "coincident eye centers in " + path.string());
        if (a.x < b.x) std::swap(a, b);
        return GroundTruthRecord{frame_id, a, b, std::nullopt, std::nullopt};
    }
    throw ParseError(0, "no eye coordinates in " + path.string());
}

std::string format_summary_text(const EvalSummary& s) {
    std::ostringstream out;
    char buf[128];
    out << "frames evaluated: " << s.n << '\n';
    out << "frames skipped:   " << s.skipped << '\n';
    for (const auto& [reason, count] : s.skipped_reasons) out << "  " << reason << ": " << count << '\n';
    if (s.unmatched_predictions) out << "predictions without ground truth: " << s.unmatched_predictions << '\n';
    if (s.unmatched_truth) out << "ground truth without prediction:  " << s.unmatched_truth << '\n';
    std::snprintf(buf, sizeof buf, "mean e: %.6f\n", s.mean_e);
    out << buf;
    for (const auto& [t, frac] : s.accuracy_at) {
        std::snprintf(buf, sizeof buf, "e <= %.2f: %6.2f%%\n", t, 100.0 * frac);
        out << buf;
    }
    if (s.region) {
        std::snprintf(buf, sizeof buf, "region accuracy: %6.2f%%\n", 100.0 * s.region->fraction);
        out << buf;
        out << "confusion (rows truth, cols predicted: Left Right Center)\n";
        const char* names[] = {"Left", "Right", "Center"};
        for (int i = 0; i < 3; ++i) {
            std::snprintf(buf, sizeof buf, "  %-6s %6zu %6zu %6zu\n", names[i], s.region->confusion[i][0],
                          s.region->confusion[i][1], s.region->confusion[i][2]);
            out << buf;
        }
    }
    return out.str();
}

std::string format_summary_json(const EvalSummary& s) {
    nlohmann::ordered_json j;
    j["n"] = s.n;
    j["skipped"] = s.skipped;
    j["skipped_reasons"] = s.skipped_reasons;
    j["unmatched_predictions"] = s.unmatched_predictions;
    j["unmatched_truth"] = s.unmatched_truth;
    j["mean_e"] = s.mean_e;
    nlohmann::ordered_json acc = nlohmann::ordered_json::object();
    for (const auto& [t, frac] : s.accuracy_at) {
        char key[32];
        std::snprintf(key, sizeof key, "%.2f", t);
        acc[key] = frac;
    }
    j["accuracy_at"] = acc;
    if (s.region) {
        j["region_accuracy"] = s.region->fraction;
        j["region_confusion"] = s.region->confusion;
    }
    return j.dump(2) + "\n";
}

}  // namespace gazelabel
