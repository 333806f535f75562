#include "gazelabel/bioid.hpp"

#include <algorithm>
#include <unordered_map>

#include "gazelabel/raster_io.hpp"

namespace gazelabel {

EvalSummary evaluate_bioid(const std::filesystem::path& dir, const std::filesystem::path& landmarks,
                           const LocalizerConfig& config, const EvalOptions& options) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw Error("BioID directory not found: " + dir.string());

    std::unordered_map<std::string, LandmarkSet> sets;
    for (auto& set : read_landmark_file(landmarks).records) sets.emplace(set.frame_id, std::move(set));

    std::vector<fs::path> eye_files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".eye") eye_files.push_back(entry.path());
    std::sort(eye_files.begin(), eye_files.end());

    std::vector<GroundTruthRecord> truth;
    std::vector<Prediction> predictions;
    for (const auto& eye : eye_files) {
        const std::string name = eye.stem().string();
        truth.push_back(read_bioid_eye_file(eye, name));
        Prediction p;
        p.frame_id = name;
        const auto it = sets.find(name);
        if (it == sets.end()) {
            p.skip_reason = reason_code(FailureReason::NoFaceLandmarks);
            predictions.push_back(std::move(p));
            continue;
        }
        try {
            const auto [left, right] = localize_pupils(read_gray(dir / (name + ".pgm")), it->second, config);
            p.left = left.final;
            p.right = right.final;
        } catch (const LocalizationError& e) {
            p.skip_reason = reason_code(e.reason());
        } catch (const Error&) {
            p.skip_reason = reason_code(FailureReason::UnreadableFrame);
        }
        predictions.push_back(std::move(p));
    }
    return accuracy_report(predictions, truth, options);
}

}  // namespace gazelabel
