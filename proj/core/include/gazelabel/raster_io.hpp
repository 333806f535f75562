#pragma once

#include <filesystem>

#include "gazelabel/image.hpp"

namespace gazelabel {

/// Reads any format the codec backend understands (PNG, JPEG, PGM, ...).
/// Gray sources are expanded to RGB. Throws Error when the file is missing
/// or cannot be decoded.
RgbImage read_rgb(const std::filesystem::path& path);

/// Reads and converts to luma with the library's fixed weights.
GrayImage read_gray(const std::filesystem::path& path);

/// Format is chosen from the extension. Throws Error on failure.
void write_image(const std::filesystem::path& path, const GrayImage& image);
void write_image(const std::filesystem::path& path, const RgbImage& image);

}  // namespace gazelabel
