#include <doctest.h>

#include <cmath>

#include "fuzzquant/synth.hpp"

using namespace fq;

namespace {

SynthEyeSpec clean_spec() {
    SynthEyeSpec spec;
    spec.width = 320;
    spec.height = 240;
    spec.center_x = 160.0;
    spec.center_y = 120.0;
    spec.pupil_radius = 30.0;
    spec.iris_radius = 75.0;
    spec.pupil = 30;
    spec.iris = 110;
    spec.sclera = 220;
    spec.rng_seed = 99;
    return spec;
}

} // namespace

TEST_CASE("noise-free intensities are exact per region") {
    const auto spec = clean_spec();
    const GrayImage img = generate_eye(spec);
    CHECK(img.at(160, 120) == spec.pupil);
    // a point at distance (r_p + r_i)/2 from the center, straight right
    const int mid = static_cast<int>((spec.pupil_radius + spec.iris_radius) / 2.0);
    CHECK(img.at(160 + mid, 120) == spec.iris);
    CHECK(img.at(5, 5) == spec.sclera);
}

TEST_CASE("noisy region means obey the law-of-large-numbers bound") {
    auto spec = clean_spec();
    spec.noise_sigma = 8.0;
    const GrayImage img = generate_eye(spec);

    double sums[3] = {0, 0, 0};
    long counts[3] = {0, 0, 0};
    for (int y = 0; y < spec.height; ++y)
        for (int x = 0; x < spec.width; ++x) {
            const double d = std::hypot(x - spec.center_x, y - spec.center_y);
            int region;
            if (d <= spec.pupil_radius - 1.0)
                region = 0;
            else if (d > spec.pupil_radius + 1.0 && d <= spec.iris_radius - 1.0)
                region = 1;
            else if (d > spec.iris_radius + 1.0)
                region = 2;
            else
                continue;
            sums[region] += img.at(x, y);
            ++counts[region];
        }
    const double expected[3] = {30.0, 110.0, 220.0};
    for (int r = 0; r < 3; ++r) {
        const double mean = sums[r] / counts[r];
        REQUIRE(std::fabs(mean - expected[r]) <=
                3.0 * spec.noise_sigma / std::sqrt(static_cast<double>(counts[r])));
    }
}

TEST_CASE("same seed, same image") {
    auto spec = clean_spec();
    spec.noise_sigma = 6.0;
    const GrayImage a = generate_eye(spec);
    const GrayImage b = generate_eye(spec);
    CHECK(a.pixels == b.pixels);

    spec.rng_seed = 100;
    const GrayImage c = generate_eye(spec);
    CHECK(a.pixels != c.pixels);
}

TEST_CASE("highlight paints a filled square before noise") {
    auto spec = clean_spec();
    spec.highlight = Highlight{160, 120, 5, 255};
    const GrayImage img = generate_eye(spec);
    for (int y = 118; y <= 122; ++y)
        for (int x = 158; x <= 162; ++x)
            REQUIRE(img.at(x, y) == 255);
    CHECK(img.at(157, 120) == spec.pupil);
}

TEST_CASE("blur ramp interpolates across the boundaries") {
    auto spec = clean_spec();
    spec.blur_ramp = 4.0;
    const GrayImage img = generate_eye(spec);
    // halfway across the pupillary boundary the value is halfway between
    const int at_boundary = img.at(160 + 30, 120);
    CHECK(at_boundary > spec.pupil);
    CHECK(at_boundary < spec.iris);
}

TEST_CASE("regions form three separated intensity modes when gaps exceed 6 sigma") {
    auto spec = clean_spec();
    spec.noise_sigma = 8.0; // gaps are 80 and 110, both > 48
    const GrayImage img = generate_eye(spec);
    long hist[256] = {};
    for (uint8_t px : img.pixels)
        ++hist[px];
    auto mass = [&](int lo, int hi) {
        long total = 0;
        for (int v = lo; v <= hi; ++v)
            total += hist[v];
        return total;
    };
    // heavy modes within 2 sigma of each region intensity...
    CHECK(mass(14, 46) > 1000);
    CHECK(mass(94, 126) > 1000);
    CHECK(mass(204, 236) > 1000);
    // ...and next to nothing in the valleys between them
    CHECK(mass(66, 74) <= 10);
    CHECK(mass(160, 170) <= 10);
}

TEST_CASE("invalid specs are rejected") {
    auto spec = clean_spec();
    spec.iris_radius = spec.pupil_radius;
    CHECK_THROWS_AS(generate_eye(spec), Error);

    spec = clean_spec();
    spec.iris_radius = 200.0; // cannot fit
    CHECK_THROWS_AS(generate_eye(spec), Error);

    spec = clean_spec();
    spec.pupil = 200; // ordering violated
    CHECK_THROWS_AS(generate_eye(spec), Error);

    spec = clean_spec();
    spec.pupil_radius = 2.0;
    CHECK_THROWS_AS(generate_eye(spec), Error);
}

TEST_CASE("spec survives a JSON round-trip") {
    auto spec = clean_spec();
    spec.noise_sigma = 3.5;
    spec.highlight = Highlight{150, 118, 7, 250};
    spec.rng_seed = 123456789;
    const SynthEyeSpec back = spec_from_json(spec_to_json(spec));
    CHECK(back.width == spec.width);
    CHECK(back.height == spec.height);
    CHECK(back.center_x == spec.center_x);
    CHECK(back.center_y == spec.center_y);
    CHECK(back.pupil_radius == spec.pupil_radius);
    CHECK(back.iris_radius == spec.iris_radius);
    CHECK(back.pupil == spec.pupil);
    CHECK(back.iris == spec.iris);
    CHECK(back.sclera == spec.sclera);
    CHECK(back.noise_sigma == spec.noise_sigma);
    CHECK(back.rng_seed == spec.rng_seed);
    REQUIRE(back.highlight.has_value());
    CHECK(back.highlight->x == 150);
    CHECK(back.highlight->size == 7);
    // and the images agree bit for bit
    CHECK(generate_eye(spec).pixels == generate_eye(back).pixels);

    CHECK_THROWS_AS(spec_from_json("{ not valid"), Error);
    CHECK_THROWS_AS(spec_from_json("{\"width\": 4}"), Error);
}

TEST_CASE("corpus specs are deterministic and well formed") {
    CorpusOptions options;
    options.count = 8;
    options.seed = 42;
    options.noise_sigmas = {0.0, 4.0, 8.0};
    const auto specs = corpus_specs(options);
    REQUIRE(specs.size() == 24);
    for (const auto& spec : specs)
        CHECK_NOTHROW(validate_spec(spec));

    const auto again = corpus_specs(options);
    for (size_t i = 0; i < specs.size(); ++i) {
        CHECK(specs[i].rng_seed == again[i].rng_seed);
        CHECK(specs[i].pupil_radius == again[i].pupil_radius);
    }
}
