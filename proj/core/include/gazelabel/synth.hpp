#pragma once

// Schematic face renderer with exact ground truth. Faces are drawn in a face
// frame (origin midway between the eye centers, +u toward the subject's left,
// +v down), rolled in-plane, and anti-aliased by 4x4 supersampling.

#include <cstdint>
#include <filesystem>
#include <random>

#include "gazelabel/gaze.hpp"
#include "gazelabel/geometry.hpp"
#include "gazelabel/image.hpp"
#include "gazelabel/landmarks.hpp"

namespace gazelabel::synth {

struct FaceParams {
    int width = 160;
    int height = 120;
    Point2d center{80.0, 52.0};  ///< image position of the face-frame origin
    double interocular = 60.0;    ///< distance between eye centers, pixels
    double roll_deg = 0.0;
    /// Iris displacement inside each socket, as a fraction of the eye
    /// half-width; positive toward the subject's left.
    double gaze_shift = 0.0;
    double vertical_shift = 0.0;
    std::uint8_t background = 60;
    std::uint8_t skin = 170;
    std::uint8_t sclera = 225;
    std::uint8_t iris = 70;
    std::uint8_t pupil = 25;
    std::uint8_t brow = 80;
    double noise_sigma = 0.0;
    double landmark_jitter = 0.0;  ///< uniform +- jitter applied to every landmark
    std::uint64_t seed = 0;
};

struct Face {
    GrayImage image;
    LandmarkSet landmarks;
    Point2d left_pupil;   ///< exact iris center, subject-left eye
    Point2d right_pupil;  ///< exact iris center, subject-right eye
    Region gaze = Region::Center;
};

/// Eye half-width, opening half-height and iris radius as fractions.
inline constexpr double kEyeHalfWidth = 0.21;   // of interocular
inline constexpr double kEyeHalfHeight = 0.45;  // of eye half-width
inline constexpr double kIrisRadius = 0.40;     // of eye half-width
inline constexpr double kPupilRadius = 0.45;    // of iris radius

Face render_face(const FaceParams& params);

/// Region implied by a gaze shift: |shift| < 0.1 is Center.
Region region_for_shift(double gaze_shift) noexcept;

/// Random but valid face parameters for a width x height canvas.
FaceParams random_face(std::mt19937_64& rng, int width = 160, int height = 120);

/// Portable uniform draw in [0, 1) from a 64-bit engine.
double uniform01(std::mt19937_64& rng);
/// Portable standard normal draw (Box-Muller).
double standard_normal(std::mt19937_64& rng);

struct CorpusPlan {
    int subjects = 2;
    int frames_per_subject = 12;
    int width = 160;
    int height = 120;
    std::uint64_t seed = 7;
};

/// Writes <dir>/manifest.csv, <dir>/ground_truth.csv and, per subject,
/// <dir>/<subject>/frames/frame_NNNNNN.png plus <dir>/<subject>/landmarks.csv.
/// Ground-truth ids are "<subject>/<NNNNNN>".
void write_corpus(const std::filesystem::path& dir, const CorpusPlan& plan);

}  // namespace gazelabel::synth
