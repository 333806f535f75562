#include "gazelabel/labeler.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "gazelabel/raster_io.hpp"

namespace gazelabel {

namespace fs = std::filesystem;

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    for (std::size_t start = 0;;) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) return out;
        start = comma + 1;
    }
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        out.push_back(line);
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
    }
    return out;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool is_image_file(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    static const std::set<std::string> kExt{".png", ".jpg", ".jpeg", ".bmp", ".pgm", ".ppm", ".tif", ".tiff"};
    return kExt.count(ext) > 0;
}

void append_number(std::string& out, double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw Error("cannot format number");
    out.append(buf, ptr);
}

bool parse_number(std::string_view s, double& v) {
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return ec == std::errc{} && ptr == s.data() + s.size() && std::isfinite(v);
}

// Unbiased draw in [0, bound) from the raw 64-bit engine output.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    for (;;) {
        const std::uint64_t v = rng();
        if (v < limit) return v % bound;
    }
}

void draw_cross(RgbImage& img, Point2d c, RgbImage::Pixel color) {
    const int cx = static_cast<int>(std::lround(c.x));
    const int cy = static_cast<int>(std::lround(c.y));
    for (int d = -3; d <= 3; ++d) {
        if (img.contains(cx + d, cy)) img.set(cx + d, cy, color);
        if (img.contains(cx, cy + d)) img.set(cx, cy + d, color);
    }
}

void draw_square(RgbImage& img, Point2d c, RgbImage::Pixel color) {
    const int cx = static_cast<int>(std::lround(c.x));
    const int cy = static_cast<int>(std::lround(c.y));
    for (int d = -2; d <= 2; ++d)
        for (const int e : {-2, 2}) {
            if (img.contains(cx + d, cy + e)) img.set(cx + d, cy + e, color);
            if (img.contains(cx + e, cy + d)) img.set(cx + e, cy + d, color);
        }
}

void draw_dot(RgbImage& img, Point2d c, RgbImage::Pixel color) {
    const int cx = static_cast<int>(std::lround(c.x));
    const int cy = static_cast<int>(std::lround(c.y));
    for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx)
            if (img.contains(cx + dx, cy + dy)) img.set(cx + dx, cy + dy, color);
}

}  // namespace

CorpusManifest read_manifest(const fs::path& path) {
    const std::string text = slurp(path);
    const auto lines = split_lines(text);
    const fs::path base = path.parent_path();
    CorpusManifest manifest;
    std::set<std::string> seen;
    bool header = false;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto line = lines[i];
        if (line.empty() || line.front() == '#') continue;
        if (!header) {
            if (line != "subject_id,frames_dir,landmarks")
                throw ParseError(i + 1, "manifest header must be 'subject_id,frames_dir,landmarks'");
            header = true;
            continue;
        }
        const auto f = split_fields(line);
        if (f.size() != 3) throw ParseError(i + 1, "expected 3 fields, got " + std::to_string(f.size()));
        SubjectEntry e;
        e.subject_id = std::string(f[0]);
        if (e.subject_id.empty()) throw ParseError(i + 1, "empty subject_id");
        if (e.subject_id.find('/') != std::string::npos) throw ParseError(i + 1, "subject_id may not contain '/'");
        if (!seen.insert(e.subject_id).second) throw ParseError(i + 1, "duplicate subject_id '" + e.subject_id + "'");
        const fs::path frames_dir = base / fs::path(std::string(f[1]));
        e.landmarks = base / fs::path(std::string(f[2]));
        if (!fs::is_directory(frames_dir)) throw Error("frames directory not found: " + frames_dir.string());
        for (const auto& entry : fs::directory_iterator(frames_dir))
            if (entry.is_regular_file() && is_image_file(entry.path())) e.frames.push_back(entry.path());
        std::sort(e.frames.begin(), e.frames.end(),
                  [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });
        manifest.subjects.push_back(std::move(e));
    }
    if (!header) throw ParseError(0, "manifest is empty");
    return manifest;
}

std::vector<std::size_t> sample_frames(std::size_t count, std::size_t stride) {
    if (stride < 1) throw InvalidArgument("stride must be >= 1");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < count; i += stride) out.push_back(i);
    return out;
}

std::string frame_id_for_index(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%06zu", index);
    return buf;
}

std::string serialize_labels(std::span<const LabelRecord> records) {
    std::string out(kLabelsHeader);
    out += '\n';
    for (const auto& r : records) {
        out += r.subject_id;
        out += ',';
        out += r.frame_id;
        out += ',';
        out += r.status;
        if (r.ok()) {
            out += ',';
            out += to_string(r.gaze);
            out += ',';
            out += to_string(r.head_pose);
            for (double v : {r.left_pupil.x, r.left_pupil.y, r.right_pupil.x, r.right_pupil.y, r.angles.theta1,
                             r.angles.theta2, r.angles.theta3, r.angles.theta4}) {
                out += ',';
                append_number(out, v);
            }
            out += ',';
            out += flags_to_string(r.flags);
        } else {
            out += ",,,,,,,,,,,";
        }
        out += '\n';
    }
    return out;
}

std::vector<LabelRecord> parse_labels(std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.empty() || lines.front() != kLabelsHeader) throw ParseError(1, "missing labels header");
    std::vector<LabelRecord> out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto line = lines[i];
        if (line.empty()) continue;
        const auto f = split_fields(line);
        if (f.size() != 14) throw ParseError(i + 1, "expected 14 fields, got " + std::to_string(f.size()));
        LabelRecord r;
        r.subject_id = std::string(f[0]);
        r.frame_id = std::string(f[1]);
        r.status = std::string(f[2]);
        if (r.subject_id.empty() || r.frame_id.empty() || r.status.empty())
            throw ParseError(i + 1, "empty subject_id, frame_id or status");
        if (r.ok()) {
            const auto gaze = region_from_string(f[3]);
            const auto head = region_from_string(f[4]);
            if (!gaze || !head) throw ParseError(i + 1, "unknown region label");
            r.gaze = *gaze;
            r.head_pose = *head;
            double v[8];
            for (int k = 0; k < 8; ++k)
                if (!parse_number(f[5 + k], v[k])) throw ParseError(i + 1, "bad number '" + std::string(f[5 + k]) + "'");
            r.left_pupil = {v[0], v[1]};
            r.right_pupil = {v[2], v[3]};
            r.angles = {v[4], v[5], v[6], v[7]};
            const auto flags = flags_from_string(f[13]);
            if (!flags) throw ParseError(i + 1, "unknown flag in '" + std::string(f[13]) + "'");
            r.flags = *flags;
        } else {
            for (std::size_t k = 3; k < 14; ++k)
                if (!f[k].empty()) throw ParseError(i + 1, "skip record must leave label columns empty");
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<LabelRecord> read_labels(const fs::path& path) { return parse_labels(slurp(path)); }

void write_labels(const fs::path& path, std::span<const LabelRecord> records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << serialize_labels(records);
    if (!out) throw Error("cannot write " + path.string());
}

RgbImage annotate(const RgbImage& frame, const FrameLabel& label) {
    RgbImage out = frame;
    for (const PupilEstimate* est : {&label.left, &label.right}) {
        draw_cross(out, est->primary, {0, 0, 255});
        if (est->secondary) draw_square(out, *est->secondary, {0, 200, 0});
        draw_dot(out, est->final, {255, 105, 180});
    }
    return out;
}

RunResult run_label(const CorpusManifest& manifest, const RunConfig& config) {
    struct Task {
        const SubjectEntry* subject;
        std::size_t frame_index;
        const std::unordered_map<std::string, LandmarkSet>* landmarks;  // null: sidecar unusable
    };

    RunResult result;
    std::vector<std::unordered_map<std::string, LandmarkSet>> sidecars(manifest.subjects.size());
    std::vector<bool> sidecar_ok(manifest.subjects.size(), false);
    for (std::size_t s = 0; s < manifest.subjects.size(); ++s) {
        const auto& subject = manifest.subjects[s];
        try {
            const LandmarkFile file = read_landmark_file(subject.landmarks);
            for (const auto& issue : file.issues)
                result.warnings.push_back(subject.subject_id + ": " + subject.landmarks.string() + ":" +
                                          std::to_string(issue.line) + ": " + issue.message);
            for (const auto& set : file.records) sidecars[s].emplace(set.frame_id, set);
            sidecar_ok[s] = true;
        } catch (const Error& e) {
            result.warnings.push_back(subject.subject_id + ": unreadable landmark sidecar: " + e.what());
        }
    }

    std::vector<Task> tasks;
    for (std::size_t s = 0; s < manifest.subjects.size(); ++s) {
        const auto& subject = manifest.subjects[s];
        for (std::size_t idx : sample_frames(subject.frames.size(), config.stride))
            tasks.push_back({&subject, idx, sidecar_ok[s] ? &sidecars[s] : nullptr});
    }

    if (config.annotate_dir) fs::create_directories(*config.annotate_dir);

    result.records.resize(tasks.size());
    auto process = [&](const Task& task) {
        LabelRecord rec;
        rec.subject_id = task.subject->subject_id;
        rec.frame_id = frame_id_for_index(task.frame_index);
        std::optional<RgbImage> frame;
        try {
            frame = read_rgb(task.subject->frames[task.frame_index]);
        } catch (const Error&) {
            rec.status = reason_code(FailureReason::UnreadableFrame);
            return rec;
        }
        const LandmarkSet* lm = nullptr;
        if (task.landmarks) {
            const auto it = task.landmarks->find(rec.frame_id);
            if (it != task.landmarks->end()) lm = &it->second;
        }
        if (!lm) {
            rec.status = reason_code(FailureReason::NoFaceLandmarks);
            return rec;
        }
        try {
            const FrameLabel label = label_frame(to_grayscale(*frame), *lm, config.label);
            rec.gaze = label.gaze;
            rec.head_pose = label.head_pose;
            rec.left_pupil = label.left.final;
            rec.right_pupil = label.right.final;
            rec.angles = label.angles;
            rec.flags = label.flags;
            if (config.annotate_dir)
                write_image(*config.annotate_dir / (rec.subject_id + "_" + rec.frame_id + ".png"), annotate(*frame, label));
        } catch (const LabelingError& e) {
            rec.status = reason_code(e.reason());
        }
        return rec;
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(config.workers, static_cast<unsigned>(tasks.size())));
    if (workers <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) result.records[i] = process(tasks[i]);
    } else {
        std::atomic<std::size_t> next{0};
        std::mutex failure_mutex;
        std::exception_ptr failure;
        {
            std::vector<std::jthread> pool;
            pool.reserve(workers);
            for (unsigned w = 0; w < workers; ++w)
                pool.emplace_back([&] {
                    try {
                        for (std::size_t i = next++; i < tasks.size(); i = next++) result.records[i] = process(tasks[i]);
                    } catch (...) {
                        const std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        next = tasks.size();
                    }
                });
        }
        if (failure) std::rethrow_exception(failure);
    }
    return result;
}

DatasetSplit split_dataset(std::span<const LabelRecord> labels, double train_fraction, std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw InvalidArgument("train fraction must lie in (0, 1)");
    std::set<std::string> unique;
    for (const auto& r : labels) unique.insert(r.subject_id);
    if (unique.size() < 2) throw InvalidArgument("cannot split fewer than two subjects");

    std::vector<std::string> subjects(unique.begin(), unique.end());
    std::mt19937_64 rng(seed);
    for (std::size_t i = subjects.size() - 1; i > 0; --i) std::swap(subjects[i], subjects[bounded(rng, i + 1)]);

    const std::size_t n = subjects.size();
    const auto wanted = static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(n) + 1e-9));
    const std::size_t n_train = std::clamp<std::size_t>(wanted, 1, n - 1);

    DatasetSplit split;
    split.train_subjects.assign(subjects.begin(), subjects.begin() + static_cast<std::ptrdiff_t>(n_train));
    split.validation_subjects.assign(subjects.begin() + static_cast<std::ptrdiff_t>(n_train), subjects.end());
    std::sort(split.train_subjects.begin(), split.train_subjects.end());
    std::sort(split.validation_subjects.begin(), split.validation_subjects.end());
    const std::set<std::string> train_set(split.train_subjects.begin(), split.train_subjects.end());
    for (const auto& r : labels) (train_set.count(r.subject_id) ? split.train : split.validation).push_back(r);
    return split;
}

RegionCounts& RegionCounts::operator+=(const RegionCounts& o) noexcept {
    center += o.center;
    left += o.left;
    right += o.right;
    skipped += o.skipped;
    return *this;
}

RegionCounts count_regions(std::span<const LabelRecord> labels) noexcept {
    RegionCounts c;
    for (const auto& r : labels) {
        if (!r.ok()) {
            ++c.skipped;
            continue;
        }
        switch (r.gaze) {
            case Region::Center: ++c.center; break;
            case Region::Left: ++c.left; break;
            case Region::Right: ++c.right; break;
        }
    }
    return c;
}

std::vector<StatsRow> stats_report(std::span<const LabelRecord> train, std::span<const LabelRecord> validation) {
    StatsRow t{"train", count_regions(train)};
    StatsRow v{"validation", count_regions(validation)};
    StatsRow total{"total", t.counts};
    total.counts += v.counts;
    return {t, v, total};
}

std::vector<StatsRow> stats_report(std::span<const LabelRecord> labels) { return {{"total", count_regions(labels)}}; }

std::string format_stats_csv(const std::vector<StatsRow>& rows) {
    std::string out = "set,center,left,right,total,skipped\n";
    for (const auto& r : rows) {
        out += r.set + ',' + std::to_string(r.counts.center) + ',' + std::to_string(r.counts.left) + ',' +
               std::to_string(r.counts.right) + ',' + std::to_string(r.counts.total()) + ',' +
               std::to_string(r.counts.skipped) + '\n';
    }
    return out;
}

std::string format_stats_table(const std::vector<StatsRow>& rows) {
    std::string out;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-12s %10s %10s %10s %10s %10s\n", "set", "center", "left", "right", "total",
                  "skipped");
    out += buf;
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%-12s %10zu %10zu %10zu %10zu %10zu\n", r.set.c_str(), r.counts.center,
                      r.counts.left, r.counts.right, r.counts.total(), r.counts.skipped);
        out += buf;
    }
    return out;
}

}  // namespace gazelabel
