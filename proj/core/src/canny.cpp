#include "gazelabel/image_ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gazelabel {

namespace {

std::vector<double> gaussian_kernel(double sigma) {
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> k(static_cast<std::size_t>(2 * radius + 1));
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        const double v = std::exp(-(i * i) / (2.0 * sigma * sigma));
        k[static_cast<std::size_t>(i + radius)] = v;
        sum += v;
    }
    for (auto& v : k) v /= sum;
    return k;
}

// A double-valued plane with clamped (edge-replicating) reads.
struct Plane {
    int width = 0;
    int height = 0;
    std::vector<double> v;

    Plane(int w, int h) : width(w), height(h), v(static_cast<std::size_t>(w) * h, 0.0) {}

    double& at(int x, int y) { return v[static_cast<std::size_t>(y) * width + x]; }
    double at(int x, int y) const { return v[static_cast<std::size_t>(y) * width + x]; }
    double clamped(int x, int y) const {
        return at(std::clamp(x, 0, width - 1), std::clamp(y, 0, height - 1));
    }
};

// Separable blur of `src` with clamped borders. An empty kernel copies.
Plane blur(const Plane& src, const std::vector<double>& kernel) {
    if (kernel.size() <= 1) return src;
    const int radius = static_cast<int>(kernel.size() / 2);
    Plane tmp(src.width, src.height);
    for (int y = 0; y < src.height; ++y)
        for (int x = 0; x < src.width; ++x) {
            double acc = 0.0;
            for (int j = -radius; j <= radius; ++j) acc += kernel[static_cast<std::size_t>(j + radius)] * src.clamped(x + j, y);
            tmp.at(x, y) = acc;
        }
    Plane out(src.width, src.height);
    for (int y = 0; y < src.height; ++y)
        for (int x = 0; x < src.width; ++x) {
            double acc = 0.0;
            for (int j = -radius; j <= radius; ++j) acc += kernel[static_cast<std::size_t>(j + radius)] * tmp.clamped(x, y + j);
            out.at(x, y) = acc;
        }
    return out;
}

int blur_radius(double sigma) { return sigma > 0.0 ? static_cast<int>(std::ceil(3.0 * sigma)) : 0; }

// Image replicated outward by `margin` pixels on every side.
Plane extended(const GrayImage& image, int margin) {
    Plane p(image.width() + 2 * margin, image.height() + 2 * margin);
    for (int y = 0; y < p.height; ++y)
        for (int x = 0; x < p.width; ++x)
            p.at(x, y) = image.at(std::clamp(x - margin, 0, image.width() - 1),
                                  std::clamp(y - margin, 0, image.height() - 1));
    return p;
}

struct ExtendedGradient {
    int margin = 0;
    Plane gx, gy, mag;
};

// Gradient on the image extended by blur radius + 3 pixels. Beyond the blur
// radius the replicated extension is constant along the border normal, so
// clamped reads at the extended border reproduce the infinite extension
// exactly and downstream results do not depend on how far the input was
// already replicated.
ExtendedGradient extended_gradient(const GrayImage& image, double sigma) {
    const int margin = blur_radius(sigma) + 3;
    const Plane src = extended(image, margin);
    const Plane smooth = sigma > 0.0 ? blur(src, gaussian_kernel(sigma)) : src;

    ExtendedGradient g{margin, Plane(src.width, src.height), Plane(src.width, src.height), Plane(src.width, src.height)};
    for (int y = 0; y < src.height; ++y) {
        for (int x = 0; x < src.width; ++x) {
            const double tl = smooth.clamped(x - 1, y - 1), tc = smooth.clamped(x, y - 1), tr = smooth.clamped(x + 1, y - 1);
            const double ml = smooth.clamped(x - 1, y), mr = smooth.clamped(x + 1, y);
            const double bl = smooth.clamped(x - 1, y + 1), bc = smooth.clamped(x, y + 1), br = smooth.clamped(x + 1, y + 1);
            const double gx = (tr + 2.0 * mr + br) - (tl + 2.0 * ml + bl);
            const double gy = (bl + 2.0 * bc + br) - (tl + 2.0 * tc + tr);
            g.gx.at(x, y) = gx;
            g.gy.at(x, y) = gy;
            g.mag.at(x, y) = std::hypot(gx, gy);
        }
    }
    return g;
}

double max_of(const Plane& p) {
    double m = 0.0;
    for (double v : p.v) m = std::max(m, v);
    return m;
}

constexpr double kTan22_5 = 0.41421356237309503;  // tan(pi/8)

}  // namespace

double GradientField::max_magnitude() const noexcept {
    double m = 0.0;
    for (double v : magnitude) m = std::max(m, v);
    return m;
}

GrayImage gaussian_blur(const GrayImage& image, double sigma) {
    if (sigma <= 0.0) return image;
    const int margin = blur_radius(sigma);
    const Plane smooth = blur(extended(image, margin), gaussian_kernel(sigma));
    GrayImage out(image.width(), image.height());
    for (int y = 0; y < image.height(); ++y)
        for (int x = 0; x < image.width(); ++x)
            out.at(x, y) = static_cast<std::uint8_t>(std::clamp(std::lround(smooth.at(x + margin, y + margin)), 0L, 255L));
    return out;
}

GradientField gradient(const GrayImage& image, double sigma) {
    const auto g = extended_gradient(image, sigma);
    GradientField out;
    out.width = image.width();
    out.height = image.height();
    const std::size_t n = image.size();
    out.gx.reserve(n);
    out.gy.reserve(n);
    out.magnitude.reserve(n);
    for (int y = 0; y < image.height(); ++y)
        for (int x = 0; x < image.width(); ++x) {
            out.gx.push_back(g.gx.at(x + g.margin, y + g.margin));
            out.gy.push_back(g.gy.at(x + g.margin, y + g.margin));
            out.magnitude.push_back(g.mag.at(x + g.margin, y + g.margin));
        }
    return out;
}

std::optional<CannyThresholds> auto_canny_thresholds(const GrayImage& image, double sigma, double low_fraction) {
    if (!(low_fraction > 0.0)) throw InvalidArgument("low_fraction must be positive");
    const double peak = max_of(extended_gradient(image, sigma).mag);
    if (peak <= 0.0) return std::nullopt;
    const double low = low_fraction * peak;
    return CannyThresholds{low, kCannyHighRatio * low};
}

EdgeMap canny(const GrayImage& image, double sigma, double low, double high) {
    if (!(low > 0.0) || !(low <= high))
        throw InvalidArgument("canny thresholds must satisfy 0 < low <= high, got low=" + std::to_string(low) +
                              " high=" + std::to_string(high));

    const auto g = extended_gradient(image, sigma);
    const int W = g.mag.width;
    const int H = g.mag.height;

    // Non-maximum suppression. Along the gradient direction a pixel must
    // strictly beat the neighbour that precedes it in raster order and at
    // least tie the one that follows, so a two-pixel plateau keeps one pixel.
    Plane thin(W, H);
    for (int y = 0; y < H; ++y) {
        for (int x = 0; x < W; ++x) {
            const double m = g.mag.at(x, y);
            if (m <= 0.0) continue;
            const double gx = g.gx.at(x, y);
            const double gy = g.gy.at(x, y);
            const double ax = std::abs(gx);
            const double ay = std::abs(gy);
            int dx = 0;
            int dy = 0;
            if (ay <= kTan22_5 * ax) {
                dx = 1;
            } else if (ax <= kTan22_5 * ay) {
                dy = 1;
            } else if ((gx > 0.0) == (gy > 0.0)) {
                dx = 1;
                dy = 1;
            } else {
                dx = -1;
                dy = 1;
            }
            // (x - dx, y - dy) precedes (x + dx, y + dy) in raster order.
            const double before = g.mag.clamped(x - dx, y - dy);
            const double after = g.mag.clamped(x + dx, y + dy);
            if (m > before && m >= after) thin.at(x, y) = m;
        }
    }

    // Hysteresis over the whole extended domain.
    std::vector<std::uint8_t> state(static_cast<std::size_t>(W) * H, 0);  // 0 none, 1 weak, 2 edge
    std::vector<Point2i> stack;
    for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x) {
            const double m = thin.at(x, y);
            if (m >= high) {
                state[static_cast<std::size_t>(y) * W + x] = 2;
                stack.push_back({x, y});
            } else if (m >= low) {
                state[static_cast<std::size_t>(y) * W + x] = 1;
            }
        }
    while (!stack.empty()) {
        const Point2i p = stack.back();
        stack.pop_back();
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                const int nx = p.x + dx;
                const int ny = p.y + dy;
                if (nx < 0 || ny < 0 || nx >= W || ny >= H) continue;
                auto& s = state[static_cast<std::size_t>(ny) * W + nx];
                if (s == 1) {
                    s = 2;
                    stack.push_back({nx, ny});
                }
            }
    }

    EdgeMap edges(image.width(), image.height());
    for (int y = 0; y < image.height(); ++y)
        for (int x = 0; x < image.width(); ++x)
            if (state[static_cast<std::size_t>(y + g.margin) * W + (x + g.margin)] == 2) edges.set(x, y);
    return edges;
}

}  // namespace gazelabel
