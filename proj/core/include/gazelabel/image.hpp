#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gazelabel/errors.hpp"

namespace gazelabel {

/// Row-major 8-bit intensity raster. Width and height are always >= 1.
class GrayImage {
public:
    GrayImage(int width, int height, std::uint8_t fill = 0);
    GrayImage(int width, int height, std::vector<std::uint8_t> data);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }

    std::uint8_t at(int x, int y) const { return data_[index(x, y)]; }
    std::uint8_t& at(int x, int y) { return data_[index(x, y)]; }
    bool contains(int x, int y) const noexcept { return x >= 0 && y >= 0 && x < width_ && y < height_; }

    std::span<const std::uint8_t> pixels() const noexcept { return data_; }
    std::span<std::uint8_t> pixels() noexcept { return data_; }

    /// Copy of the rectangle [x0, x0+w) x [y0, y0+h); must lie inside the image.
    GrayImage region(int x0, int y0, int w, int h) const;

    friend bool operator==(const GrayImage&, const GrayImage&) = default;

private:
    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }

    int width_;
    int height_;
    std::vector<std::uint8_t> data_;
};

/// Interleaved 8-bit RGB raster (R, G, B per pixel).
class RgbImage {
public:
    struct Pixel {
        std::uint8_t r = 0, g = 0, b = 0;
        friend bool operator==(Pixel, Pixel) = default;
    };

    RgbImage(int width, int height) : RgbImage(width, height, Pixel{}) {}
    RgbImage(int width, int height, Pixel fill);
    RgbImage(int width, int height, std::vector<std::uint8_t> interleaved);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }

    Pixel at(int x, int y) const;
    void set(int x, int y, Pixel p);
    bool contains(int x, int y) const noexcept { return x >= 0 && y >= 0 && x < width_ && y < height_; }

    std::span<const std::uint8_t> bytes() const noexcept { return data_; }

    static RgbImage from_gray(const GrayImage& gray);

    friend bool operator==(const RgbImage&, const RgbImage&) = default;

private:
    int width_;
    int height_;
    std::vector<std::uint8_t> data_;
};

/// Row-major boolean raster. The tag keeps masks and edge maps from mixing.
template <class Tag>
class BoolRaster {
public:
    BoolRaster(int width, int height) : width_(width), height_(height) {
        if (width < 1 || height < 1) throw DimensionError("raster dimensions must be positive");
        data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
    }

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }

    bool at(int x, int y) const { return data_[index(x, y)] != 0; }
    void set(int x, int y, bool v = true) { data_[index(x, y)] = v ? 1 : 0; }
    bool contains(int x, int y) const noexcept { return x >= 0 && y >= 0 && x < width_ && y < height_; }

    std::size_t count() const noexcept {
        std::size_t n = 0;
        for (auto v : data_) n += v;
        return n;
    }
    bool empty() const noexcept { return count() == 0; }

    friend bool operator==(const BoolRaster&, const BoolRaster&) = default;

private:
    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }

    int width_;
    int height_;
    std::vector<std::uint8_t> data_;
};

struct MaskTag {};
struct EdgeTag {};

/// Foreground occupancy produced by thresholding.
using BinaryMask = BoolRaster<MaskTag>;
/// Edge indicator produced by Canny; the voting set for the Hough transform.
using EdgeMap = BoolRaster<EdgeTag>;

/// Renders a boolean raster as 0/255 intensities.
template <class Tag>
GrayImage to_gray(const BoolRaster<Tag>& raster) {
    GrayImage out(raster.width(), raster.height());
    for (int y = 0; y < raster.height(); ++y)
        for (int x = 0; x < raster.width(); ++x) out.at(x, y) = raster.at(x, y) ? 255 : 0;
    return out;
}

}  // namespace gazelabel
