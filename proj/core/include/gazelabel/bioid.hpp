#pragma once

#include <filesystem>

#include "gazelabel/evaluator.hpp"
#include "gazelabel/pupil.hpp"

namespace gazelabel {

/// Localization benchmark over a BioID-layout directory: every NAME.eye file
/// pairs with the image NAME.pgm and with the sidecar record whose frame_id
/// is NAME. Frames without landmarks are skipped as NO_FACE_LANDMARKS, the
/// same way a failed face detection would be.
EvalSummary evaluate_bioid(const std::filesystem::path& dir, const std::filesystem::path& landmarks,
                           const LocalizerConfig& config = {}, const EvalOptions& options = {});

}  // namespace gazelabel
