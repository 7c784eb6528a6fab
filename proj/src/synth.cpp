#include "fuzzquant/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <json.hpp>

namespace fq {

void validate_spec(const SynthEyeSpec& spec) {
    if (spec.width < 1 || spec.height < 1)
        throw Error(ErrorCode::InvalidSpec, "synth: non-positive image dimensions");
    if (spec.pupil_radius < 5.0)
        throw Error(ErrorCode::InvalidSpec, "synth: pupil radius must be >= 5");
    if (!(spec.iris_radius > spec.pupil_radius))
        throw Error(ErrorCode::InvalidSpec, "synth: iris radius must exceed pupil radius");
    const double border = std::min(std::min(spec.center_x, spec.width - 1 - spec.center_x),
                                   std::min(spec.center_y, spec.height - 1 - spec.center_y));
    if (spec.iris_radius > border)
        throw Error(ErrorCode::InvalidSpec, "synth: iris disc does not fit in the image");
    if (!(spec.pupil < spec.iris && spec.iris < spec.sclera))
        throw Error(ErrorCode::InvalidSpec, "synth: intensities must satisfy pupil < iris < sclera");
    if (spec.pupil < 0 || spec.sclera > 255)
        throw Error(ErrorCode::InvalidSpec, "synth: intensities must lie in 0..255");
    if (spec.noise_sigma < 0.0 || spec.blur_ramp < 0.0)
        throw Error(ErrorCode::InvalidSpec, "synth: negative noise sigma or blur ramp");
}

namespace {

double ramp(double d, double boundary, double width, double inner, double outer) {
    if (width <= 0.0)
        return d <= boundary ? inner : outer;
    const double t = (d - (boundary - 0.5 * width)) / width;
    if (t <= 0.0)
        return inner;
    if (t >= 1.0)
        return outer;
    return inner + t * (outer - inner);
}

} // namespace

GrayImage generate_eye(const SynthEyeSpec& spec) {
    validate_spec(spec);
    GrayImage img(spec.width, spec.height);

    for (int y = 0; y < spec.height; ++y) {
        for (int x = 0; x < spec.width; ++x) {
            const double d = std::hypot(x - spec.center_x, y - spec.center_y);
            double value;
            if (d <= spec.pupil_radius + 0.5 * spec.blur_ramp) {
                value = ramp(d, spec.pupil_radius, spec.blur_ramp, spec.pupil, spec.iris);
            } else {
                value = ramp(d, spec.iris_radius, spec.blur_ramp, spec.iris, spec.sclera);
            }
            img.at(x, y) = static_cast<uint8_t>(std::lround(value));
        }
    }

    if (spec.highlight) {
        const Highlight& h = *spec.highlight;
        const int x0 = h.x - h.size / 2;
        const int y0 = h.y - h.size / 2;
        for (int y = y0; y < y0 + h.size; ++y)
            for (int x = x0; x < x0 + h.size; ++x)
                if (img.in_bounds(x, y))
                    img.at(x, y) = static_cast<uint8_t>(std::clamp(h.value, 0, 255));
    }

    if (spec.noise_sigma > 0.0) {
        std::mt19937_64 rng(spec.rng_seed);
        std::normal_distribution<double> noise(0.0, spec.noise_sigma);
        for (auto& px : img.pixels) {
            const double noisy = px + noise(rng);
            px = static_cast<uint8_t>(std::clamp<long>(std::lround(noisy), 0, 255));
        }
    }
    return img;
}

std::string spec_to_json(const SynthEyeSpec& spec) {
    nlohmann::json j{
        {"width", spec.width},
        {"height", spec.height},
        {"center_x", spec.center_x},
        {"center_y", spec.center_y},
        {"pupil_radius", spec.pupil_radius},
        {"iris_radius", spec.iris_radius},
        {"pupil", spec.pupil},
        {"iris", spec.iris},
        {"sclera", spec.sclera},
        {"noise_sigma", spec.noise_sigma},
        {"blur_ramp", spec.blur_ramp},
        {"rng_seed", spec.rng_seed},
    };
    if (spec.highlight) {
        j["highlight"] = {{"x", spec.highlight->x},
                          {"y", spec.highlight->y},
                          {"size", spec.highlight->size},
                          {"value", spec.highlight->value}};
    } else {
        j["highlight"] = nullptr;
    }
    return j.dump();
}

SynthEyeSpec spec_from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidSpec, std::string("synth: bad spec JSON: ") + e.what());
    }
    SynthEyeSpec spec;
    try {
        spec.width = j.at("width").get<int>();
        spec.height = j.at("height").get<int>();
        spec.center_x = j.at("center_x").get<double>();
        spec.center_y = j.at("center_y").get<double>();
        spec.pupil_radius = j.at("pupil_radius").get<double>();
        spec.iris_radius = j.at("iris_radius").get<double>();
        spec.pupil = j.at("pupil").get<int>();
        spec.iris = j.at("iris").get<int>();
        spec.sclera = j.at("sclera").get<int>();
        spec.noise_sigma = j.value("noise_sigma", 0.0);
        spec.blur_ramp = j.value("blur_ramp", 0.0);
        spec.rng_seed = j.value("rng_seed", uint64_t{0});
        if (j.contains("highlight") && !j["highlight"].is_null()) {
            Highlight h;
            h.x = j["highlight"].at("x").get<int>();
            h.y = j["highlight"].at("y").get<int>();
            h.size = j["highlight"].at("size").get<int>();
            h.value = j["highlight"].at("value").get<int>();
            spec.highlight = h;
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidSpec, std::string("synth: bad spec JSON: ") + e.what());
    }
    validate_spec(spec);
    return spec;
}

std::vector<SynthEyeSpec> corpus_specs(const CorpusOptions& options) {
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> pupil_r(15.0, 40.0);
    std::uniform_real_distribution<double> iris_r(55.0, 90.0);
    std::uniform_real_distribution<double> jitter(-10.0, 10.0);
    std::uniform_int_distribution<int> pupil_v(20, 45);
    std::uniform_int_distribution<int> iris_v(100, 135);
    std::uniform_int_distribution<int> sclera_v(200, 235);

    std::vector<SynthEyeSpec> specs;
    for (double sigma : options.noise_sigmas) {
        for (int i = 0; i < options.count; ++i) {
            SynthEyeSpec spec;
            spec.width = options.width;
            spec.height = options.height;
            spec.center_x = options.width / 2.0 + jitter(rng);
            spec.center_y = options.height / 2.0 + jitter(rng);
            spec.pupil_radius = pupil_r(rng);
            spec.iris_radius = iris_r(rng);
            spec.pupil = pupil_v(rng);
            spec.iris = iris_v(rng);
            spec.sclera = sclera_v(rng);
            spec.noise_sigma = sigma;
            spec.rng_seed = rng();
            if (options.highlights && i % 2 == 1) {
                Highlight h;
                h.x = static_cast<int>(spec.center_x + spec.pupil_radius / 2.0);
                h.y = static_cast<int>(spec.center_y);
                h.size = 5;
                h.value = 255;
                spec.highlight = h;
            }
            specs.push_back(spec);
        }
    }
    return specs;
}

} // namespace fq
