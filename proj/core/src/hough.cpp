#include "gazelabel/image_ops.hpp"

#include <algorithm>
#include <cstdint>
#include <numbers>
#include <string>

namespace gazelabel {

std::vector<Point2i> circle_offsets(int radius) {
    // (2r - 1)^2 <= 4 (dx^2 + dy^2) < (2r + 1)^2, all in integers.
    const long lo = static_cast<long>(2 * radius - 1) * (2 * radius - 1);
    const long hi = static_cast<long>(2 * radius + 1) * (2 * radius + 1);
    std::vector<Point2i> out;
    for (int dy = -radius - 1; dy <= radius + 1; ++dy)
        for (int dx = -radius - 1; dx <= radius + 1; ++dx) {
            const long d4 = 4L * (static_cast<long>(dx) * dx + static_cast<long>(dy) * dy);
            if (d4 >= lo && d4 < hi) out.push_back({dx, dy});
        }
    return out;
}

std::vector<CircleCandidate> hough_circles(const EdgeMap& edges, int r_min, int r_max, const HoughParams& params) {
    const int w = edges.width();
    const int h = edges.height();
    if (r_min < 1 || r_min > r_max)
        throw InvalidArgument("hough radius band must satisfy 1 <= r_min <= r_max, got [" + std::to_string(r_min) +
                              ", " + std::to_string(r_max) + "]");
    if (2 * r_max >= std::min(w, h))
        throw InvalidArgument("hough r_max " + std::to_string(r_max) + " must be below half of min(width, height)");

    std::vector<Point2i> edge_pixels;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (edges.at(x, y)) edge_pixels.push_back({x, y});
    if (edge_pixels.empty()) return {};

    const int nr = r_max - r_min + 1;
    const std::size_t plane = static_cast<std::size_t>(w) * h;
    std::vector<std::uint32_t> acc(plane * nr, 0);
    auto cell = [&](int x, int y, int ri) { return static_cast<std::size_t>(ri) * plane + static_cast<std::size_t>(y) * w + x; };

    // Offsets per radius; the accumulator is compared across radii as
    // votes / offsets so larger circles do not win on circumference alone.
    std::vector<std::uint64_t> ring_size(nr);
    for (int ri = 0; ri < nr; ++ri) {
        const auto offsets = circle_offsets(r_min + ri);
        ring_size[ri] = offsets.size();
        for (const auto& p : edge_pixels)
            for (const auto& o : offsets) {
                const int cx = p.x + o.x;
                const int cy = p.y + o.y;
                if (cx >= 0 && cy >= 0 && cx < w && cy < h) ++acc[cell(cx, cy, ri)];
            }
    }

    std::vector<CircleCandidate> out;
    for (int ri = 0; ri < nr; ++ri) {
        const int r = r_min + ri;
        const double floor_votes = params.vote_floor_ratio * 2.0 * std::numbers::pi * r;
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                const std::size_t idx = cell(x, y, ri);
                const std::uint32_t v = acc[idx];
                if (v == 0 || static_cast<double>(v) < floor_votes) continue;
                // Plateaus resolve to their first cell in (r, y, x) order.
                bool peak = true;
                for (int dr = -1; dr <= 1 && peak; ++dr) {
                    const int rj = ri + dr;
                    if (rj < 0 || rj >= nr) continue;
                    for (int dy = -1; dy <= 1 && peak; ++dy)
                        for (int dx = -1; dx <= 1; ++dx) {
                            if (dr == 0 && dy == 0 && dx == 0) continue;
                            const int nx = x + dx;
                            const int ny = y + dy;
                            if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                            const std::size_t nidx = cell(nx, ny, rj);
                            const std::uint64_t lhs = std::uint64_t{acc[nidx]} * ring_size[ri];
                            const std::uint64_t rhs = std::uint64_t{v} * ring_size[rj];
                            if (nidx < idx ? lhs >= rhs : lhs > rhs) {
                                peak = false;
                                break;
                            }
                        }
                }
                if (!peak) continue;

                double sw = 0.0, sx = 0.0, sy = 0.0;
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int nx = x + dx;
                        const int ny = y + dy;
                        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                        const double wv = acc[cell(nx, ny, ri)];
                        sw += wv;
                        sx += wv * nx;
                        sy += wv * ny;
                    }
                out.push_back({{sx / sw, sy / sw}, r, static_cast<double>(v),
                               static_cast<double>(v) / static_cast<double>(ring_size[ri])});
            }
        }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const CircleCandidate& a, const CircleCandidate& b) { return a.score > b.score; });
    return out;
}

}  // namespace gazelabel
