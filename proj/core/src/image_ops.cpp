#include "gazelabel/image_ops.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <tuple>

namespace gazelabel {

GrayImage to_grayscale(const RgbImage& image) {
    GrayImage out(image.width(), image.height());
    for (int y = 0; y < image.height(); ++y) {
        for (int x = 0; x < image.width(); ++x) {
            const auto p = image.at(x, y);
            const int weighted = kLumaWeightR * p.r + kLumaWeightG * p.g + kLumaWeightB * p.b;
            out.at(x, y) = static_cast<std::uint8_t>((weighted + 500) / 1000);
        }
    }
    return out;
}

namespace {

__extension__ using u128 = unsigned __int128;
__extension__ using i128 = __int128;

// Three-way comparison of a/b against c/d (b, d > 0) by continued-fraction
// expansion, so no product of the operands is ever formed.
int compare_fractions(u128 a, u128 b, u128 c, u128 d) {
    for (;;) {
        const u128 qa = a / b;
        const u128 qc = c / d;
        if (qa != qc) return qa < qc ? -1 : 1;
        const u128 ra = a % b;
        const u128 rc = c % d;
        if (ra == 0 || rc == 0) {
            if (ra == rc) return 0;
            return ra == 0 ? -1 : 1;
        }
        // ra/b vs rc/d has the same sign as d/rc vs b/ra.
        std::tie(a, b, c, d) = std::make_tuple(d, rc, b, ra);
    }
}

// Largest pixel count for which the squared Otsu numerator fits in 128 bits.
constexpr std::size_t kMaxOtsuPixels = std::size_t{1} << 24;

std::optional<std::uint8_t> otsu_from_histogram(const std::array<std::uint64_t, 256>& hist) {
    std::uint64_t n = 0;
    for (auto c : hist) n += c;
    if (n > kMaxOtsuPixels) throw DimensionError("image too large for exact Otsu (more than 2^24 pixels)");

    std::uint64_t total_sum = 0;
    for (int v = 0; v < 256; ++v) total_sum += hist[v] * static_cast<std::uint64_t>(v);

    // Between-class variance at level t is proportional to
    //   (S0 * N - S * n0)^2 / (n0 * n1),
    // where n0, S0 are the count and intensity sum of pixels <= t.
    std::optional<std::uint8_t> best;
    u128 best_num = 0;
    u128 best_den = 1;
    std::uint64_t n0 = 0;
    std::uint64_t s0 = 0;
    for (int t = 0; t < 255; ++t) {
        n0 += hist[t];
        s0 += hist[t] * static_cast<std::uint64_t>(t);
        const std::uint64_t n1 = n - n0;
        if (n0 == 0 || n1 == 0) continue;
        const i128 diff = static_cast<i128>(s0) * static_cast<i128>(n) -
                          static_cast<i128>(total_sum) * static_cast<i128>(n0);
        const u128 mag = static_cast<u128>(diff < 0 ? -diff : diff);
        const u128 num = mag * mag;
        const u128 den = static_cast<u128>(n0) * n1;
        if (!best || compare_fractions(num, den, best_num, best_den) > 0) {
            best = static_cast<std::uint8_t>(t);
            best_num = num;
            best_den = den;
        }
    }
    if (best && best_num == 0) return std::nullopt;
    return best;
}

}  // namespace

std::optional<std::uint8_t> otsu_level(const GrayImage& image) {
    std::array<std::uint64_t, 256> hist{};
    for (auto v : image.pixels()) ++hist[v];
    return otsu_from_histogram(hist);
}

std::optional<std::uint8_t> otsu_level(const GrayImage& image, const BinaryMask& roi) {
    if (roi.width() != image.width() || roi.height() != image.height())
        throw DimensionError("otsu region mask does not match the image");
    std::array<std::uint64_t, 256> hist{};
    for (int y = 0; y < image.height(); ++y)
        for (int x = 0; x < image.width(); ++x)
            if (roi.at(x, y)) ++hist[image.at(x, y)];
    return otsu_from_histogram(hist);
}

BinaryMask threshold_dark(const GrayImage& image, std::uint8_t level) {
    BinaryMask mask(image.width(), image.height());
    for (int y = 0; y < image.height(); ++y)
        for (int x = 0; x < image.width(); ++x)
            if (image.at(x, y) <= level) mask.set(x, y);
    return mask;
}

BinaryMask adaptive_threshold(const GrayImage& image, int window, double bias) {
    if (window < 3 || window % 2 == 0)
        throw InvalidArgument("adaptive window must be odd and >= 3, got " + std::to_string(window));
    const int w = image.width();
    const int h = image.height();
    if (window > w || window > h)
        throw DimensionError("adaptive window " + std::to_string(window) + " exceeds image " + std::to_string(w) +
                             "x" + std::to_string(h));

    // Integral image of the edge-replicated extension, padded by window/2.
    const int half = window / 2;
    const int pw = w + 2 * half;
    const int ph = h + 2 * half;
    std::vector<std::int64_t> integral(static_cast<std::size_t>(pw + 1) * (ph + 1), 0);
    auto I = [&](int x, int y) -> std::int64_t& { return integral[static_cast<std::size_t>(y) * (pw + 1) + x]; };
    for (int y = 0; y < ph; ++y) {
        const int sy = std::clamp(y - half, 0, h - 1);
        std::int64_t row = 0;
        for (int x = 0; x < pw; ++x) {
            const int sx = std::clamp(x - half, 0, w - 1);
            row += image.at(sx, sy);
            I(x + 1, y + 1) = I(x + 1, y) + row;
        }
    }

    const double area = static_cast<double>(window) * window;
    BinaryMask mask(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            // Window centred on (x, y) spans padded [x, x + window) x [y, y + window).
            const std::int64_t sum = I(x + window, y + window) - I(x, y + window) - I(x + window, y) + I(x, y);
            if (static_cast<double>(image.at(x, y)) * area < static_cast<double>(sum) - bias * area) mask.set(x, y);
        }
    }
    return mask;
}

std::vector<Blob> connected_components(const BinaryMask& mask) {
    const int w = mask.width();
    const int h = mask.height();
    std::vector<std::uint8_t> visited(static_cast<std::size_t>(w) * h, 0);
    std::vector<Blob> blobs;
    std::vector<Point2i> stack;

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!mask.at(x, y) || visited[static_cast<std::size_t>(y) * w + x]) continue;
            Blob blob;
            blob.min_x = blob.max_x = x;
            blob.min_y = blob.max_y = y;
            double sx = 0.0;
            double sy = 0.0;
            visited[static_cast<std::size_t>(y) * w + x] = 1;
            stack.push_back({x, y});
            while (!stack.empty()) {
                const Point2i p = stack.back();
                stack.pop_back();
                ++blob.area;
                sx += p.x;
                sy += p.y;
                blob.min_x = std::min(blob.min_x, p.x);
                blob.max_x = std::max(blob.max_x, p.x);
                blob.min_y = std::min(blob.min_y, p.y);
                blob.max_y = std::max(blob.max_y, p.y);
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int nx = p.x + dx;
                        const int ny = p.y + dy;
                        if (!mask.contains(nx, ny) || !mask.at(nx, ny)) continue;
                        auto& seen = visited[static_cast<std::size_t>(ny) * w + nx];
                        if (seen) continue;
                        seen = 1;
                        stack.push_back({nx, ny});
                    }
                }
            }
            blob.centroid = {sx / static_cast<double>(blob.area), sy / static_cast<double>(blob.area)};
            blobs.push_back(blob);
        }
    }
    return blobs;
}

std::optional<Blob> largest_blob(const BinaryMask& mask) {
    const auto blobs = connected_components(mask);
    if (blobs.empty()) return std::nullopt;
    const Blob* best = &blobs.front();
    for (const auto& b : blobs)
        if (b.area > best->area) best = &b;
    return *best;
}

std::optional<Point2d> largest_blob_centroid(const BinaryMask& mask) {
    if (auto blob = largest_blob(mask)) return blob->centroid;
    return std::nullopt;
}

}  // namespace gazelabel
