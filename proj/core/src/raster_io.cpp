#include "gazelabel/raster_io.hpp"

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "gazelabel/image_ops.hpp"

namespace gazelabel {

RgbImage read_rgb(const std::filesystem::path& path) {
    cv::Mat bgr;
    try {
        bgr = cv::imread(path.string(), cv::IMREAD_COLOR);
    } catch (const cv::Exception& e) {
        throw Error("cannot decode image " + path.string() + ": " + e.what());
    }
    if (bgr.empty()) throw Error("cannot read image " + path.string());
    std::vector<std::uint8_t> rgb(static_cast<std::size_t>(bgr.cols) * bgr.rows * 3);
    std::size_t i = 0;
    for (int y = 0; y < bgr.rows; ++y) {
        const auto* row = bgr.ptr<cv::Vec3b>(y);
        for (int x = 0; x < bgr.cols; ++x) {
            rgb[i++] = row[x][2];
            rgb[i++] = row[x][1];
            rgb[i++] = row[x][0];
        }
    }
    return RgbImage(bgr.cols, bgr.rows, std::move(rgb));
}

GrayImage read_gray(const std::filesystem::path& path) { return to_grayscale(read_rgb(path)); }

namespace {

void write_mat(const std::filesystem::path& path, const cv::Mat& mat) {
    bool ok = false;
    try {
        ok = cv::imwrite(path.string(), mat);
    } catch (const cv::Exception& e) {
        throw Error("cannot write image " + path.string() + ": " + e.what());
    }
    if (!ok) throw Error("cannot write image " + path.string());
}

}  // namespace

void write_image(const std::filesystem::path& path, const GrayImage& image) {
    cv::Mat mat(image.height(), image.width(), CV_8UC1);
    for (int y = 0; y < image.height(); ++y)
        for (int x = 0; x < image.width(); ++x) mat.at<std::uint8_t>(y, x) = image.at(x, y);
    write_mat(path, mat);
}

void write_image(const std::filesystem::path& path, const RgbImage& image) {
    cv::Mat mat(image.height(), image.width(), CV_8UC3);
    for (int y = 0; y < image.height(); ++y)
        for (int x = 0; x < image.width(); ++x) {
            const auto p = image.at(x, y);
            mat.at<cv::Vec3b>(y, x) = cv::Vec3b(p.b, p.g, p.r);
        }
    write_mat(path, mat);
}

}  // namespace gazelabel
