#include "gazelabel/image.hpp"

#include <string>

namespace gazelabel {

namespace {

std::size_t checked_area(int width, int height) {
    if (width < 1 || height < 1)
        throw DimensionError("image dimensions must be positive, got " + std::to_string(width) + "x" +
                             std::to_string(height));
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
}

}  // namespace

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : width_(width), height_(height), data_(checked_area(width, height), fill) {}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
    if (data_.size() != checked_area(width, height))
        throw DimensionError("pixel buffer length " + std::to_string(data_.size()) + " does not match " +
                             std::to_string(width) + "x" + std::to_string(height));
}

GrayImage GrayImage::region(int x0, int y0, int w, int h) const {
    if (w < 1 || h < 1 || x0 < 0 || y0 < 0 || x0 + w > width_ || y0 + h > height_)
        throw DimensionError("region outside image bounds");
    GrayImage out(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) out.at(x, y) = at(x0 + x, y0 + y);
    return out;
}

RgbImage::RgbImage(int width, int height, Pixel fill)
    : width_(width), height_(height), data_(checked_area(width, height) * 3) {
    for (std::size_t i = 0; i < data_.size(); i += 3) {
        data_[i] = fill.r;
        data_[i + 1] = fill.g;
        data_[i + 2] = fill.b;
    }
}

RgbImage::RgbImage(int width, int height, std::vector<std::uint8_t> interleaved)
    : width_(width), height_(height), data_(std::move(interleaved)) {
    if (data_.size() != checked_area(width, height) * 3)
        throw DimensionError("RGB buffer length does not match dimensions");
}

RgbImage::Pixel RgbImage::at(int x, int y) const {
    const std::size_t i = (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + x) * 3;
    return {data_[i], data_[i + 1], data_[i + 2]};
}

void RgbImage::set(int x, int y, Pixel p) {
    const std::size_t i = (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + x) * 3;
    data_[i] = p.r;
    data_[i + 1] = p.g;
    data_[i + 2] = p.b;
}

RgbImage RgbImage::from_gray(const GrayImage& gray) {
    RgbImage out(gray.width(), gray.height());
    for (int y = 0; y < gray.height(); ++y)
        for (int x = 0; x < gray.width(); ++x) {
            const auto v = gray.at(x, y);
            out.set(x, y, {v, v, v});
        }
    return out;
}

}  // namespace gazelabel
