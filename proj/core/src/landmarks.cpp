#include "gazelabel/landmarks.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace gazelabel {

const char* to_string(Side side) noexcept { return side == Side::Left ? "left" : "right"; }

namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

bool parse_decimal(std::string_view field, double& value) {
    // Plain decimal only: optional '-', digits, optional '.' and digits.
    if (field.empty()) return false;
    std::size_t i = field[0] == '-' ? 1 : 0;
    bool digits = false;
    bool dot = false;
    for (; i < field.size(); ++i) {
        const char c = field[i];
        if (c >= '0' && c <= '9') {
            digits = true;
        } else if (c == '.' && !dot) {
            dot = true;
        } else {
            return false;
        }
    }
    if (!digits) return false;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value, std::chars_format::fixed);
    return ec == std::errc{} && ptr == field.data() + field.size() && std::isfinite(value);
}

void append_number(std::string& out, double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
    if (ec != std::errc{}) throw Error("cannot format landmark coordinate");
    out.append(buf, ptr);
}

// Mirror partner of every index in the 68-point scheme.
constexpr std::array<int, kLandmarkCount> kMirrorIndex = [] {
    std::array<int, kLandmarkCount> m{};
    for (int i = 0; i < 68; ++i) m[i] = i;
    auto pair = [&m](int a, int b) {
        m[a] = b;
        m[b] = a;
    };
    for (int i = 0; i <= 7; ++i) pair(i, 16 - i);        // jaw
    for (int i = 17; i <= 21; ++i) pair(i, 43 - i);      // brows 17-21 <-> 26-22
    pair(31, 35);                                        // nostrils
    pair(32, 34);
    pair(36, 45);                                        // eyes
    pair(37, 44);
    pair(38, 43);
    pair(39, 42);
    pair(40, 47);
    pair(41, 46);
    pair(48, 54);                                        // outer lips
    pair(49, 53);
    pair(50, 52);
    pair(55, 59);
    pair(56, 58);
    pair(60, 64);                                        // inner lips
    pair(61, 63);
    pair(65, 67);
    return m;
}();

}  // namespace

LandmarkFile parse_landmark_file(std::string_view text) {
    LandmarkFile result;
    std::unordered_set<std::string> seen;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

        const auto fields = split_commas(line);
        const std::string frame_id(fields.front());
        auto reject = [&](std::string message) {
            result.issues.push_back({line_no, frame_id, std::move(message)});
        };
        if (frame_id.empty()) {
            reject("empty frame_id");
            continue;
        }
        if (fields.size() != 1 + 2 * kLandmarkCount) {
            const std::size_t numbers = fields.size() - 1;
            reject("expected " + std::to_string(kLandmarkCount) + " points (136 numbers), got " +
                   std::to_string(numbers) + " numbers" +
                   (numbers % 2 == 0 ? " (" + std::to_string(numbers / 2) + " points)" : std::string{}));
            continue;
        }
        LandmarkSet set;
        set.frame_id = frame_id;
        bool ok = true;
        for (std::size_t i = 0; i < 2 * kLandmarkCount && ok; ++i) {
            double v = 0.0;
            if (!parse_decimal(fields[i + 1], v)) {
                reject("non-numeric coordinate in field " + std::to_string(i + 2) + ": '" + std::string(fields[i + 1]) +
                       "'");
                ok = false;
                break;
            }
            if (i % 2 == 0)
                set.points[i / 2].x = v;
            else
                set.points[i / 2].y = v;
        }
        if (!ok) continue;
        if (!seen.insert(frame_id).second) {
            reject("duplicate frame_id '" + frame_id + "'");
            continue;
        }
        result.records.push_back(std::move(set));
    }
    return result;
}

LandmarkFile read_landmark_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open landmark file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw Error("cannot read landmark file " + path.string());
    return parse_landmark_file(ss.str());
}

std::string serialize_landmarks(std::span<const LandmarkSet> records) {
    std::string out;
    for (const auto& r : records) {
        out += r.frame_id;
        for (const auto& p : r.points) {
            out += ',';
            append_number(out, p.x);
            out += ',';
            append_number(out, p.y);
        }
        out += '\n';
    }
    return out;
}

EyeContour eye_contour(const LandmarkSet& landmarks, Side side) {
    const int first = side == Side::Left ? landmark_index::kLeftEyeFirst : landmark_index::kRightEyeFirst;
    EyeContour c;
    c.side = side;
    for (int i = 0; i < 6; ++i) c.points[i] = landmarks.points[first + i];
    return c;
}

bool is_degenerate(const EyeContour& contour) noexcept {
    double area2 = 0.0;
    double min_x = contour.points[0].x, max_x = min_x, min_y = contour.points[0].y, max_y = min_y;
    for (std::size_t i = 0; i < 6; ++i) {
        const auto& a = contour.points[i];
        const auto& b = contour.points[(i + 1) % 6];
        area2 += a.x * b.y - b.x * a.y;
        min_x = std::min(min_x, a.x);
        max_x = std::max(max_x, a.x);
        min_y = std::min(min_y, a.y);
        max_y = std::max(max_y, a.y);
    }
    const double box = (max_x - min_x) * (max_y - min_y);
    return box <= 0.0 || std::abs(area2) <= 1e-9 * std::max(box, 1.0);
}

std::pair<EyeContour, EyeContour> eye_contours(const LandmarkSet& landmarks) {
    auto left = eye_contour(landmarks, Side::Left);
    auto right = eye_contour(landmarks, Side::Right);
    if (is_degenerate(left)) throw DegenerateEyeError(Side::Left);
    if (is_degenerate(right)) throw DegenerateEyeError(Side::Right);
    return {left, right};
}

FaceAnchors face_anchors(const LandmarkSet& landmarks) {
    namespace li = landmark_index;
    return {landmarks.points[li::kNoseTip], landmarks.points[li::kLeftEyeInner], landmarks.points[li::kLeftEyeOuter],
            landmarks.points[li::kRightEyeInner], landmarks.points[li::kRightEyeOuter]};
}

double contour_height(const EyeContour& contour) noexcept {
    const auto [lo, hi] = std::minmax_element(contour.points.begin(), contour.points.end(),
                                              [](Point2d a, Point2d b) { return a.y < b.y; });
    return hi->y - lo->y;
}

LandmarkSet mirror_landmarks(const LandmarkSet& landmarks, int image_width) {
    LandmarkSet out;
    out.frame_id = landmarks.frame_id;
    const double flip = static_cast<double>(image_width - 1);
    for (std::size_t i = 0; i < kLandmarkCount; ++i) {
        const Point2d p = landmarks.points[kMirrorIndex[i]];
        out.points[i] = {flip - p.x, p.y};
    }
    return out;
}

EyeCrop crop_eye(const GrayImage& image, const EyeContour& contour, int pad) {
    if (pad < 0) throw InvalidArgument("crop pad must be non-negative");
    double min_x = contour.points[0].x, max_x = min_x, min_y = contour.points[0].y, max_y = min_y;
    for (const auto& p : contour.points) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const double x0 = std::floor(min_x) - pad;
    const double y0 = std::floor(min_y) - pad;
    const double x1 = std::ceil(max_x) + pad;
    const double y1 = std::ceil(max_y) + pad;
    if (x1 < 0.0 || y1 < 0.0 || x0 > image.width() - 1 || y0 > image.height() - 1)
        throw Error(std::string(to_string(contour.side)) + " eye contour lies outside the image");
    const int cx0 = static_cast<int>(std::max(x0, 0.0));
    const int cy0 = static_cast<int>(std::max(y0, 0.0));
    const int cx1 = static_cast<int>(std::min(x1, static_cast<double>(image.width() - 1)));
    const int cy1 = static_cast<int>(std::min(y1, static_cast<double>(image.height() - 1)));
    EyeCrop crop{image.region(cx0, cy0, cx1 - cx0 + 1, cy1 - cy0 + 1), {cx0, cy0}, contour.side};
    crop.eye_region = contour_mask(contour, crop.image.width(), crop.image.height(), crop.origin);
    return crop;
}

BinaryMask contour_mask(const EyeContour& contour, int width, int height, Point2i origin) {
    BinaryMask mask(width, height);
    const auto& pts = contour.points;
    for (int y = 0; y < height; ++y) {
        const double py = y + origin.y;
        for (int x = 0; x < width; ++x) {
            const double px = x + origin.x;
            // Even-odd crossing test against each polygon edge.
            bool inside = false;
            for (std::size_t i = 0, j = pts.size() - 1; i < pts.size(); j = i++) {
                if ((pts[i].y > py) != (pts[j].y > py) &&
                    px < pts[j].x + (py - pts[j].y) * (pts[i].x - pts[j].x) / (pts[i].y - pts[j].y))
                    inside = !inside;
            }
            if (inside) mask.set(x, y);
        }
    }
    return mask;
}

}  // namespace gazelabel
