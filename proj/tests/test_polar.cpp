#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fuzzquant/polar.hpp"

using namespace fq;

namespace {

std::mt19937_64 rng(31337);

GrayImage coordinate_encoded(int w, int h) {
    GrayImage img(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            img.at(x, y) = static_cast<uint8_t>((x + y) % 256);
    return img;
}

} // namespace

TEST_CASE("map construction") {
    SUBCASE("radius 1 has a single ring of round(2*pi) samples") {
        const PolarMap map = build_polar_map(10, 10, 1, 21, 21);
        CHECK(map.rows() == 1);
        CHECK(map.row_samples(1) == 6);
        CHECK(map.width() == 6);
    }
    SUBCASE("radius 112 unwraps 112 rings") {
        const PolarMap map = build_polar_map(120, 120, 112, 241, 241);
        CHECK(map.rows() == 112);
        CHECK(map.width() == static_cast<int>(std::lround(2.0 * std::numbers::pi * 112)));
        for (int r = 2; r <= 112; ++r)
            REQUIRE(map.row_samples(r) >= map.row_samples(r - 1));
    }
    SUBCASE("disc must fit") {
        try {
            build_polar_map(5, 50, 10, 100, 100);
            FAIL("expected DiscOutOfBounds");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::DiscOutOfBounds);
        }
        try {
            build_polar_map(50, 50, 0, 100, 100);
            FAIL("expected ZeroRadius");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ZeroRadius);
        }
    }
    SUBCASE("every stored coordinate lies inside the image") {
        const PolarMap map = build_polar_map(40, 41, 30, 100, 90);
        for (int r = 1; r <= map.rows(); ++r)
            for (int t = 0; t < map.row_samples(r); ++t) {
                const auto [x, y] = map.source(r, t);
                REQUIRE(x >= 0);
                REQUIRE(x < 100);
                REQUIRE(y >= 0);
                REQUIRE(y < 90);
            }
    }
}

TEST_CASE("unwrap transcribes bit-exactly with black padding") {
    GrayImage img(64, 64, 100);
    const PolarMap map = build_polar_map(32, 32, 20, 64, 64);
    const UnwrappedImage ui = unwrap(img, map);
    CHECK(ui.rows == 20);
    CHECK(ui.width == map.width());
    for (int r = 1; r <= ui.rows; ++r)
        for (int t = 0; t < ui.width; ++t) {
            if (ui.valid(r, t))
                REQUIRE(ui.at(r, t) == 100);
            else
                REQUIRE(ui.at(r, t) == 0);
        }
}

TEST_CASE("trace_back identity over every valid cell") {
    const GrayImage img = coordinate_encoded(90, 80);
    const PolarMap map = build_polar_map(45, 40, 33, 90, 80);
    const UnwrappedImage ui = unwrap(img, map);
    for (int r = 1; r <= ui.rows; ++r)
        for (int t = 0; t < ui.row_valid[r - 1]; ++t) {
            const auto [x, y] = trace_back(map, r, t);
            REQUIRE(ui.at(r, t) == img.at(x, y));
            REQUIRE(ui.at(r, t) == static_cast<uint8_t>((x + y) % 256));
        }
}

TEST_CASE("trace_back geometry") {
    const PolarMap map = build_polar_map(50, 50, 25, 101, 101);
    SUBCASE("theta = 0 lands one pixel to the right of the center") {
        const auto [x, y] = trace_back(map, 1, 0);
        CHECK(x == 51);
        CHECK(y == 50);
    }
    SUBCASE("per-axis rounding stays within half a diagonal of the ideal ring") {
        for (int r = 1; r <= map.rows(); ++r)
            for (int t = 0; t < map.row_samples(r); ++t) {
                const auto [x, y] = trace_back(map, r, t);
                const double d = std::hypot(x - 50.0, y - 50.0);
                REQUIRE(std::fabs(d - r) <= 0.71);
            }
    }
    SUBCASE("padding and out-of-range positions are rejected") {
        try {
            trace_back(map, 1, map.row_samples(1));
            FAIL("expected InvalidPosition");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::InvalidPosition);
        }
        CHECK_THROWS_AS(trace_back(map, 0, 0), Error);
        CHECK_THROWS_AS(trace_back(map, 26, 0), Error);
    }
}

TEST_CASE("one map serves any image with the same geometry") {
    const PolarMap map = build_polar_map(32, 32, 12, 64, 64);
    const GrayImage a = coordinate_encoded(64, 64);
    GrayImage b(64, 64, 7);
    const UnwrappedImage ua = unwrap(a, map);
    const UnwrappedImage ub = unwrap(b, map);
    CHECK(ua.row_valid == ub.row_valid);
    for (int r = 1; r <= ua.rows; ++r)
        for (int t = 0; t < ua.row_valid[r - 1]; ++t) {
            const auto [x, y] = trace_back(map, r, t);
            REQUIRE(ua.at(r, t) == a.at(x, y));
            REQUIRE(ub.at(r, t) == 7);
        }

    GrayImage wrong(65, 64, 0);
    try {
        unwrap(wrong, map);
        FAIL("expected DimensionMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DimensionMismatch);
    }
}

TEST_CASE("stretch_rows") {
    SUBCASE("constant rows stay constant") {
        GrayImage img(64, 64, 42);
        const PolarMap map = build_polar_map(32, 32, 10, 64, 64);
        const UnwrappedImage ui = unwrap(img, map);
        for (int w_out : {2, 7, 512}) {
            const RectUnwrapped rui = stretch_rows(ui, w_out);
            for (uint8_t px : rui.pixels)
                REQUIRE(px == 42);
        }
    }

    SUBCASE("linear midpoint example") {
        UnwrappedImage ui;
        ui.rows = 1;
        ui.width = 2;
        ui.pixels = {0, 10};
        ui.row_valid = {2};
        const RectUnwrapped rui = stretch_rows(ui, 3);
        CHECK(rui.pixels == std::vector<uint8_t>{0, 5, 10});
    }

    SUBCASE("a one-pixel row replicates its value") {
        UnwrappedImage ui;
        ui.rows = 1;
        ui.width = 4;
        ui.pixels = {9, 0, 0, 0};
        ui.row_valid = {1};
        const RectUnwrapped rui = stretch_rows(ui, 5);
        CHECK(rui.pixels == std::vector<uint8_t>(5, 9));
    }

    SUBCASE("resampling never leaves the source range") {
        std::uniform_int_distribution<int> d(0, 255);
        for (int round = 0; round < 50; ++round) {
            UnwrappedImage ui;
            ui.rows = 1;
            std::uniform_int_distribution<int> len(2, 100);
            ui.width = len(rng);
            ui.row_valid = {ui.width};
            ui.pixels.resize(ui.width);
            uint8_t lo = 255, hi = 0;
            for (auto& px : ui.pixels) {
                px = static_cast<uint8_t>(d(rng));
                lo = std::min(lo, px);
                hi = std::max(hi, px);
            }
            std::uniform_int_distribution<int> out_len(2, 700);
            const RectUnwrapped rui = stretch_rows(ui, out_len(rng));
            for (uint8_t px : rui.pixels) {
                REQUIRE(px >= lo);
                REQUIRE(px <= hi);
            }
        }
    }

    SUBCASE("output width below 2 is rejected") {
        UnwrappedImage ui;
        ui.rows = 1;
        ui.width = 2;
        ui.pixels = {1, 2};
        ui.row_valid = {2};
        CHECK_THROWS_AS(stretch_rows(ui, 1), std::invalid_argument);
    }

    SUBCASE("rows without valid pixels are rejected") {
        UnwrappedImage ui;
        ui.rows = 1;
        ui.width = 2;
        ui.pixels = {0, 0};
        ui.row_valid = {0};
        try {
            stretch_rows(ui, 4);
            FAIL("expected EmptyRow");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::EmptyRow);
        }
    }
}

TEST_CASE("random-geometry losslessness sweep") {
    for (int round = 0; round < 10; ++round) {
        std::uniform_int_distribution<int> rad(1, 60);
        const int radius = rad(rng);
        std::uniform_int_distribution<int> margin(0, 20);
        const int cx = radius + margin(rng);
        const int cy = radius + margin(rng);
        const int w = cx + radius + 1 + margin(rng);
        const int h = cy + radius + 1 + margin(rng);
        const GrayImage img = coordinate_encoded(w, h);
        const PolarMap map = build_polar_map(cx, cy, radius, w, h);
        const UnwrappedImage ui = unwrap(img, map);
        for (int r = 1; r <= ui.rows; ++r)
            for (int t = 0; t < ui.row_valid[r - 1]; ++t) {
                const auto [x, y] = trace_back(map, r, t);
                REQUIRE(ui.at(r, t) == img.at(x, y));
            }
    }
}
