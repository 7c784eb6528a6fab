#ifndef FUZZQUANT_SYNTH_HPP
#define FUZZQUANT_SYNTH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fuzzquant/raster.hpp"

namespace fq {

struct Highlight {
    int x = 0; // square center
    int y = 0;
    int size = 5;
    int value = 255;
};

/// Ground-truth description of a synthetic eye: concentric pupil/iris discs
/// on a sclera background, optional specular highlight, additive Gaussian
/// noise. Same seed, same image.
struct SynthEyeSpec {
    int width = 320;
    int height = 240;
    double center_x = 160.0;
    double center_y = 120.0;
    double pupil_radius = 30.0;
    double iris_radius = 75.0;
    int pupil = 30;
    int iris = 110;
    int sclera = 220;
    double noise_sigma = 0.0;
    double blur_ramp = 0.0; // linear transition width across each boundary, px
    std::optional<Highlight> highlight;
    uint64_t rng_seed = 0;
};

/// Validates spec invariants (radii ordering, intensity ordering, fit within
/// the image); throws InvalidSpec.
void validate_spec(const SynthEyeSpec& spec);

GrayImage generate_eye(const SynthEyeSpec& spec);

std::string spec_to_json(const SynthEyeSpec& spec);
SynthEyeSpec spec_from_json(const std::string& json_text);

struct CorpusOptions {
    int count = 10;
    uint64_t seed = 1;
    std::vector<double> noise_sigmas = {4.0};
    int width = 320;
    int height = 240;
    bool highlights = true;
};

/// Deterministic batch of plausible eye specs (count per noise level):
/// pupil radius 15..40, iris radius 55..90, centers jittered around the
/// image center, highlight inside the pupil on every other image.
std::vector<SynthEyeSpec> corpus_specs(const CorpusOptions& options);

} // namespace fq

#endif
