// fuzzquant — k-means signal quantization with combined crisp/fuzzy
// indicators, and the CFIS iris segmentation pipeline built on them.
//
// Subcommands: quantize, segment, batch, synth. Results go to stdout as
// JSON; human-readable notes go to stderr. Exit codes: 0 success,
// 1 segmentation failure, 2 usage or I/O error.

#include <atomic>
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fuzzquant/cfis.hpp"
#include "fuzzquant/indicators.hpp"
#include "fuzzquant/quantizer.hpp"
#include "fuzzquant/raster.hpp"
#include "fuzzquant/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitSegmentation = 1;
constexpr int kExitUsage = 2;

void emit(const json& j, bool compact) {
    if (compact)
        std::cout << j.dump() << "\n";
    else
        std::cout << j.dump(2) << "\n";
}

json error_object(const fq::Error& e) {
    json j{{"error",
            {{"code", fq::error_code_name(e.code())}, {"message", e.what()}}}};
    if (!e.stage().empty())
        j["error"]["stage"] = e.stage();
    return j;
}

bool is_io_code(fq::ErrorCode code) {
    switch (code) {
    case fq::ErrorCode::FileNotFound:
    case fq::ErrorCode::UnsupportedFormat:
    case fq::ErrorCode::CorruptData:
    case fq::ErrorCode::IoError:
        return true;
    default:
        return false;
    }
}

// --- quantize -----------------------------------------------------------

int cmd_quantize(const std::string& input, int k, bool compact) {
    std::ifstream in(input);
    if (!in) {
        std::cerr << "fuzzquant: cannot open " << input << "\n";
        return kExitUsage;
    }
    fq::Signal signal;
    std::string token;
    while (in >> token) {
        // tolerate CSV: split on commas
        std::replace(token.begin(), token.end(), ',', ' ');
        std::istringstream parts(token);
        std::string piece;
        while (parts >> piece) {
            try {
                size_t used = 0;
                const double v = std::stod(piece, &used);
                if (used != piece.size())
                    throw std::invalid_argument(piece);
                signal.values.push_back(v);
            } catch (const std::exception&) {
                std::cerr << "fuzzquant: not a number: '" << piece << "'\n";
                return kExitUsage;
            }
        }
    }

    try {
        const fq::Quantization q = fq::kmeans_quantize(signal, k);
        const fq::CombinedIndicators ind = fq::make_indicators(signal, q);
        const fq::TripletReport report = fq::verify_triplet(ind, &signal);
        if (!report.ok) {
            std::cerr << "fuzzquant: internal triplet verification failed: "
                      << report.violations.front().rule << " at index "
                      << report.violations.front().index << "\n";
            return kExitSegmentation;
        }
        emit(json{{"centroids", q.centroids},
                  {"labels", q.labels},
                  {"sse", q.sse},
                  {"cci", ind.cci},
                  {"cfi", ind.cfi},
                  {"fib", ind.fib}},
             compact);
        return kExitSuccess;
    } catch (const fq::Error& e) {
        std::cerr << "fuzzquant: " << e.what() << "\n";
        return kExitUsage;
    }
}

// --- segment ------------------------------------------------------------

json result_to_json(const fq::SegmentationResult& result) {
    std::vector<bool> voted(result.voted.begin(), result.voted.end());
    return json{
        {"pupil",
         {{"cx", result.pupil.cx}, {"cy", result.pupil.cy}, {"r", result.pupil.radius}}},
        {"limbic_row", result.limbic_row},
        {"limbic_radius_px", result.limbic_row},
        {"voted", voted},
        {"timings_ms",
         {{"pupil", result.timings.pupil_us / 1000.0},
          {"unwrap", result.timings.unwrap_us / 1000.0},
          {"profiles", result.timings.profiles_us / 1000.0},
          {"quantize", result.timings.quantize_us / 1000.0},
          {"vote", result.timings.vote_us / 1000.0},
          {"total", result.timings.total_us / 1000.0}}},
    };
}

void write_csv_column_file(const fs::path& path, const std::vector<std::string>& header,
                           const std::vector<std::vector<double>>& columns) {
    std::ofstream out(path);
    if (!out)
        throw fq::Error(fq::ErrorCode::IoError, "cannot write " + path.string());
    for (size_t c = 0; c < header.size(); ++c)
        out << header[c] << (c + 1 < header.size() ? "," : "\n");
    const size_t rows = columns.empty() ? 0 : columns.front().size();
    out.precision(10);
    for (size_t i = 0; i < rows; ++i) {
        for (size_t c = 0; c < columns.size(); ++c)
            out << columns[c][i] << (c + 1 < columns.size() ? "," : "\n");
    }
}

void write_dumps(const fs::path& dir, const fq::GrayImage& img,
                 const fq::SegmentationResult& result, const fq::CfisConfig& config) {
    fs::create_directories(dir);

    // Recreate the intermediate rasters from the recorded geometry.
    const int cx = static_cast<int>(std::lround(result.pupil.cx));
    const int cy = static_cast<int>(std::lround(result.pupil.cy));
    const fq::PolarMap map =
        fq::build_polar_map(cx, cy, result.unwrap_radius, img.width, img.height);
    const fq::UnwrappedImage ui = fq::unwrap(img, map);
    const fq::RectUnwrapped rui = fq::stretch_rows(ui, config.rui_width);

    fq::GrayImage ui_img(ui.width, ui.rows);
    ui_img.pixels = ui.pixels;
    fq::save_image(ui_img, (dir / "ui.pgm").string());
    fq::GrayImage rui_img(rui.width, rui.rows);
    rui_img.pixels = rui.pixels;
    fq::save_image(rui_img, (dir / "rui.pgm").string());

    const fq::RadialProfiles profiles = fq::radial_profiles(ui, rui);
    write_csv_column_file(dir / "profiles.csv", {"A", "B", "C"},
                          {profiles.A, profiles.B, profiles.C});

    auto to_doubles = [](const std::vector<int32_t>& v) {
        return std::vector<double>(v.begin(), v.end());
    };
    write_csv_column_file(
        dir / "bands.csv",
        {"P", "Q", "R", "cfi_P", "fib_P", "cfi_Q", "fib_Q", "cfi_R", "fib_R"},
        {to_doubles(result.bands[0].labels), to_doubles(result.bands[1].labels),
         to_doubles(result.bands[2].labels), result.bands[0].cfi, result.bands[0].fib,
         result.bands[1].cfi, result.bands[1].fib, result.bands[2].cfi,
         result.bands[2].fib});
}

int cmd_segment(const std::string& image_path, const fq::CfisConfig& config,
                const std::string& overlay_path, const std::string& dump_dir,
                bool compact) {
    fq::GrayImage img;
    try {
        img = fq::load_image(image_path);
    } catch (const fq::Error& e) {
        std::cerr << "fuzzquant: " << e.what() << "\n";
        return kExitUsage;
    }

    fq::SegmentationResult result;
    try {
        result = fq::segment(img, config);
    } catch (const fq::Error& e) {
        emit(error_object(e), compact);
        return is_io_code(e.code()) ? kExitUsage : kExitSegmentation;
    }

    try {
        if (!overlay_path.empty()) {
            const fq::RgbImage overlay =
                fq::render_overlay(img, result.pupil, result.limbic_row);
            fq::save_rgb(overlay, overlay_path);
        }
        if (!dump_dir.empty())
            write_dumps(dump_dir, img, result, config);
    } catch (const fq::Error& e) {
        std::cerr << "fuzzquant: " << e.what() << "\n";
        return kExitUsage;
    }

    emit(result_to_json(result), compact);
    return kExitSuccess;
}

// --- batch --------------------------------------------------------------

struct BatchEntry {
    std::string file;
    bool ok = false;
    std::string stage;
    std::string code;
    std::string message;
    fq::SegmentationResult result;
    bool has_pupil_time = false;
};

double median(std::vector<double> values) {
    if (values.empty())
        return 0.0;
    std::sort(values.begin(), values.end());
    const size_t n = values.size();
    return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

int cmd_batch(const std::string& dir, int jobs, const std::string& out_path,
              const fq::CfisConfig& config, bool compact) {
    std::vector<fs::path> files;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        if (!entry.is_regular_file())
            continue;
        std::string ext = entry.path().extension().string();
        for (char& c : ext)
            c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (ext == ".pgm" || ext == ".png")
            files.push_back(entry.path());
    }
    if (ec) {
        std::cerr << "fuzzquant: cannot read directory " << dir << "\n";
        return kExitUsage;
    }
    if (files.empty()) {
        std::cerr << "fuzzquant: no supported images in " << dir << "\n";
        return kExitUsage;
    }
    std::sort(files.begin(), files.end());

    std::vector<BatchEntry> entries(files.size());
    std::atomic<size_t> next{0};
    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(files.size())));
    auto worker = [&]() {
        for (size_t i = next.fetch_add(1); i < files.size(); i = next.fetch_add(1)) {
            BatchEntry& entry = entries[i];
            entry.file = files[i].filename().string();
            try {
                const fq::GrayImage img = fq::load_image(files[i].string());
                entry.result = fq::segment(img, config);
                entry.ok = true;
                entry.has_pupil_time = true;
            } catch (const fq::Error& e) {
                entry.stage = e.stage().empty() ? (is_io_code(e.code()) ? "io" : "limbic")
                                                : e.stage();
                entry.code = fq::error_code_name(e.code());
                entry.message = e.what();
                entry.has_pupil_time = entry.stage == "limbic";
                // pupil timing is still meaningful when only the limbic part failed
            } catch (const std::exception& e) {
                entry.stage = "io";
                entry.code = "Exception";
                entry.message = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();

    int pupil_failures = 0, limbic_failures = 0;
    std::vector<double> pupil_ms, total_ms;
    json results = json::array();
    for (const BatchEntry& entry : entries) {
        if (entry.ok) {
            pupil_ms.push_back(entry.result.timings.pupil_us / 1000.0);
            total_ms.push_back(entry.result.timings.total_us / 1000.0);
            json r = result_to_json(entry.result);
            r["file"] = entry.file;
            r["ok"] = true;
            r.erase("voted"); // keep per-image batch rows compact
            results.push_back(std::move(r));
        } else {
            if (entry.stage == "pupil")
                ++pupil_failures;
            else if (entry.stage == "limbic")
                ++limbic_failures;
            results.push_back(json{{"file", entry.file},
                                   {"ok", false},
                                   {"stage", entry.stage},
                                   {"code", entry.code},
                                   {"message", entry.message}});
        }
    }

    const double med_pupil = median(pupil_ms);
    const double med_total = median(total_ms);
    json summary{
        {"total", static_cast<int>(entries.size())},
        {"pupil_failures", pupil_failures},
        {"limbic_failures", limbic_failures},
        {"median_ms_pupil", med_pupil},
        {"median_ms_total", med_total},
        {"fps_pupil", med_pupil > 0.0 ? 1000.0 / med_pupil : 0.0},
        {"fps_total", med_total > 0.0 ? 1000.0 / med_total : 0.0},
        {"results", std::move(results)},
    };
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "fuzzquant: cannot write " << out_path << "\n";
            return kExitUsage;
        }
        out << summary.dump(2) << "\n";
    }
    emit(summary, compact);
    return kExitSuccess;
}

// --- synth --------------------------------------------------------------

int cmd_synth(const std::string& spec_path, int n, uint64_t seed,
              std::vector<double> noise, const std::string& out_dir, bool compact) {
    std::vector<fq::SynthEyeSpec> specs;
    try {
        if (!spec_path.empty()) {
            std::ifstream in(spec_path);
            if (!in) {
                std::cerr << "fuzzquant: cannot open " << spec_path << "\n";
                return kExitUsage;
            }
            std::stringstream buffer;
            buffer << in.rdbuf();
            specs.push_back(fq::spec_from_json(buffer.str()));
        } else {
            fq::CorpusOptions options;
            options.count = n;
            options.seed = seed;
            if (!noise.empty())
                options.noise_sigmas = std::move(noise);
            specs = fq::corpus_specs(options);
        }

        fs::create_directories(out_dir);
        json manifest{{"seed", seed}, {"count", static_cast<int>(specs.size())}};
        json images = json::array();
        for (size_t i = 0; i < specs.size(); ++i) {
            char name[32];
            std::snprintf(name, sizeof(name), "eye_%04zu.pgm", i);
            const fq::GrayImage img = fq::generate_eye(specs[i]);
            fq::save_image(img, (fs::path(out_dir) / name).string());
            images.push_back(json{{"file", name}, {"spec", json::parse(fq::spec_to_json(specs[i]))}});
        }
        manifest["images"] = std::move(images);
        std::ofstream out(fs::path(out_dir) / "manifest.json");
        if (!out)
            throw fq::Error(fq::ErrorCode::IoError, "cannot write manifest.json");
        out << manifest.dump(2) << "\n";
        emit(json{{"written", static_cast<int>(specs.size())}, {"dir", out_dir}}, compact);
        return kExitSuccess;
    } catch (const fq::Error& e) {
        std::cerr << "fuzzquant: " << e.what() << "\n";
        return kExitUsage;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-means signal quantization with combined crisp/fuzzy indicators, "
                 "and circular fuzzy iris segmentation"};
    app.require_subcommand(1);
    bool compact = false;
    app.add_flag("--json", compact, "compact single-line JSON output");

    // quantize
    auto* quantize = app.add_subcommand("quantize", "quantize a 1-D signal file");
    quantize->fallthrough();
    std::string q_input;
    int q_k = 3;
    quantize->add_option("file", q_input, "whitespace/CSV separated numbers")->required();
    quantize->add_option("--k", q_k, "cluster count")->check(CLI::PositiveNumber);

    // segment
    auto* segment = app.add_subcommand("segment", "segment a single eye image");
    segment->fallthrough();
    std::string s_image, s_overlay, s_dump;
    fq::CfisConfig s_config;
    segment->add_option("image", s_image, "PGM or PNG eye image")->required();
    segment->add_option("--overlay", s_overlay, "write annotated PNG");
    segment->add_option("--dump", s_dump, "dump UI/RUI/profile/band artifacts to a directory");
    segment->add_option("--rui-width", s_config.rui_width, "RUI width")
        ->check(CLI::Range(2, 1 << 16));
    segment->add_option("--max-radius", s_config.max_radius, "cap the unwrap radius")
        ->check(CLI::PositiveNumber);
    segment->add_option("--min-area", s_config.pupil.min_area_frac,
                        "pupil blob area floor, fraction of the image")
        ->check(CLI::PositiveNumber);
    segment->add_option("--disc-likeness", s_config.pupil.disc_likeness,
                        "pupil fill-ratio threshold")
        ->check(CLI::PositiveNumber);

    // batch
    auto* batch = app.add_subcommand("batch", "segment every image in a directory");
    batch->fallthrough();
    std::string b_dir, b_out;
    int b_jobs = static_cast<int>(std::thread::hardware_concurrency());
    fq::CfisConfig b_config;
    batch->add_option("dir", b_dir, "directory of PGM/PNG images")->required();
    batch->add_option("--jobs", b_jobs, "worker threads")->check(CLI::PositiveNumber);
    batch->add_option("--out", b_out, "also write the report JSON to a file");
    batch->add_option("--rui-width", b_config.rui_width, "RUI width")
        ->check(CLI::Range(2, 1 << 16));
    batch->add_option("--max-radius", b_config.max_radius, "cap the unwrap radius")
        ->check(CLI::PositiveNumber);
    batch->add_option("--min-area", b_config.pupil.min_area_frac,
                      "pupil blob area floor, fraction of the image")
        ->check(CLI::PositiveNumber);
    batch->add_option("--disc-likeness", b_config.pupil.disc_likeness,
                      "pupil fill-ratio threshold")
        ->check(CLI::PositiveNumber);

    // synth
    auto* synth = app.add_subcommand("synth", "generate a synthetic eye corpus");
    synth->fallthrough();
    std::string sy_spec, sy_out = ".";
    int sy_n = 10;
    uint64_t sy_seed = 1;
    std::vector<double> sy_noise;
    synth->add_option("--spec", sy_spec, "generate one image from a spec JSON file");
    synth->add_option("--n", sy_n, "images per noise level")->check(CLI::PositiveNumber);
    synth->add_option("--seed", sy_seed, "corpus seed");
    synth->add_option("--noise", sy_noise, "noise sigma (repeatable for a sweep)");
    synth->add_option("--out", sy_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (quantize->parsed())
            return cmd_quantize(q_input, q_k, compact);
        if (segment->parsed())
            return cmd_segment(s_image, s_config, s_overlay, s_dump, compact);
        if (batch->parsed())
            return cmd_batch(b_dir, b_jobs, b_out, b_config, compact);
        if (synth->parsed())
            return cmd_synth(sy_spec, sy_n, sy_seed, sy_noise, sy_out, compact);
    } catch (const std::exception& e) {
        std::cerr << "fuzzquant: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
