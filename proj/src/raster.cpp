#include "fuzzquant/raster.hpp"

#include <png.h>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <memory>

namespace fq {

uint8_t luma_rec601(uint8_t r, uint8_t g, uint8_t b) {
    // round(0.299 R + 0.587 G + 0.114 B) in exact integer form
    const uint32_t y = 299u * r + 587u * g + 114u * b + 500u;
    return static_cast<uint8_t>(y / 1000u);
}

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f)
            std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

std::string lower_extension(const std::string& path) {
    std::string ext = std::filesystem::path(path).extension().string();
    for (char& c : ext)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return ext;
}

// --- PGM ---------------------------------------------------------------

// Reads the next header token, skipping whitespace and '#' comments.
bool pgm_token(std::FILE* f, std::string& token) {
    token.clear();
    int c;
    while ((c = std::fgetc(f)) != EOF) {
        if (c == '#') {
            while ((c = std::fgetc(f)) != EOF && c != '\n') {
            }
            continue;
        }
        if (!std::isspace(c))
            break;
    }
    if (c == EOF)
        return false;
    do {
        token.push_back(static_cast<char>(c));
        c = std::fgetc(f);
    } while (c != EOF && !std::isspace(c) && c != '#');
    if (c == '#')
        std::ungetc(c, f);
    return true;
}

long pgm_int(std::FILE* f, const char* what) {
    std::string token;
    if (!pgm_token(f, token))
        throw Error(ErrorCode::CorruptData, std::string("pgm: missing ") + what);
    char* end = nullptr;
    long value = std::strtol(token.c_str(), &end, 10);
    if (end == token.c_str() || *end != '\0')
        throw Error(ErrorCode::CorruptData, std::string("pgm: malformed ") + what);
    return value;
}

GrayImage load_pgm(std::FILE* f, bool binary) {
    const long w = pgm_int(f, "width");
    const long h = pgm_int(f, "height");
    const long maxval = pgm_int(f, "maxval");
    if (w < 1 || h < 1)
        throw Error(ErrorCode::CorruptData, "pgm: non-positive dimensions");
    if (maxval < 1 || maxval > 255)
        throw Error(ErrorCode::UnsupportedFormat, "pgm: maxval > 255 not supported");
    GrayImage img(static_cast<int>(w), static_cast<int>(h));
    if (binary) {
        if (std::fread(img.pixels.data(), 1, img.pixels.size(), f) != img.pixels.size())
            throw Error(ErrorCode::CorruptData, "pgm: truncated pixel data");
    } else {
        for (auto& px : img.pixels) {
            const long v = pgm_int(f, "pixel");
            if (v < 0 || v > maxval)
                throw Error(ErrorCode::CorruptData, "pgm: pixel out of range");
            px = static_cast<uint8_t>(v);
        }
    }
    return img;
}

// --- PNG ---------------------------------------------------------------

void png_error_fn(png_structp, png_const_charp msg) {
    throw Error(ErrorCode::CorruptData, std::string("png: ") + msg);
}

void png_warn_fn(png_structp, png_const_charp) {}

struct PngReader {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngReader() {
        if (png)
            png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    }
};

struct PngWriter {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngWriter() {
        if (png)
            png_destroy_write_struct(&png, info ? &info : nullptr);
    }
};

GrayImage load_png(std::FILE* f) {
    PngReader r;
    r.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_fn, png_warn_fn);
    if (!r.png)
        throw Error(ErrorCode::IoError, "png: reader allocation failed");
    r.info = png_create_info_struct(r.png);
    if (!r.info)
        throw Error(ErrorCode::IoError, "png: info allocation failed");

    png_init_io(r.png, f);
    png_read_info(r.png, r.info);

    const png_uint_32 w = png_get_image_width(r.png, r.info);
    const png_uint_32 h = png_get_image_height(r.png, r.info);
    const int depth = png_get_bit_depth(r.png, r.info);
    const int color = png_get_color_type(r.png, r.info);

    if (depth != 8)
        throw Error(ErrorCode::UnsupportedFormat, "png: only 8-bit images supported");
    if (color != PNG_COLOR_TYPE_GRAY && color != PNG_COLOR_TYPE_RGB)
        throw Error(ErrorCode::UnsupportedFormat, "png: only 8-bit gray or RGB supported");

    const size_t channels = color == PNG_COLOR_TYPE_RGB ? 3 : 1;
    std::vector<uint8_t> raw(static_cast<size_t>(w) * h * channels);
    std::vector<png_bytep> row_ptrs(h);
    for (png_uint_32 y = 0; y < h; ++y)
        row_ptrs[y] = raw.data() + static_cast<size_t>(y) * w * channels;
    png_read_image(r.png, row_ptrs.data());
    png_read_end(r.png, nullptr);

    GrayImage img(static_cast<int>(w), static_cast<int>(h));
    if (channels == 1) {
        img.pixels = std::move(raw);
    } else {
        for (size_t i = 0; i < img.pixels.size(); ++i)
            img.pixels[i] = luma_rec601(raw[3 * i], raw[3 * i + 1], raw[3 * i + 2]);
    }
    return img;
}

void save_png(const uint8_t* data, int width, int height, int channels,
              const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f)
        throw Error(ErrorCode::IoError, "cannot open for writing: " + path);
    PngWriter w;
    w.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_fn, png_warn_fn);
    if (!w.png)
        throw Error(ErrorCode::IoError, "png: writer allocation failed");
    w.info = png_create_info_struct(w.png);
    if (!w.info)
        throw Error(ErrorCode::IoError, "png: info allocation failed");

    png_init_io(w.png, f.get());
    png_set_IHDR(w.png, w.info, width, height, 8,
                 channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(w.png, w.info);
    std::vector<png_bytep> row_ptrs(height);
    for (int y = 0; y < height; ++y)
        row_ptrs[y] = const_cast<png_bytep>(data + static_cast<size_t>(y) * width * channels);
    png_write_image(w.png, row_ptrs.data());
    png_write_end(w.png, nullptr);
}

} // namespace

GrayImage load_image(const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f)
        throw Error(ErrorCode::FileNotFound, "cannot open: " + path);
    unsigned char magic[8] = {0};
    const size_t got = std::fread(magic, 1, sizeof(magic), f.get());
    std::rewind(f.get());
    if (got >= 2 && magic[0] == 'P' && (magic[1] == '5' || magic[1] == '2')) {
        std::fgetc(f.get());
        std::fgetc(f.get());
        return load_pgm(f.get(), magic[1] == '5');
    }
    static const unsigned char png_sig[8] = {0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};
    if (got == 8 && std::memcmp(magic, png_sig, 8) == 0)
        return load_png(f.get());
    throw Error(ErrorCode::UnsupportedFormat, "unrecognized image format: " + path);
}

void save_image(const GrayImage& img, const std::string& path) {
    if (img.width < 1 || img.height < 1)
        throw std::invalid_argument("save_image: empty image");
    const std::string ext = lower_extension(path);
    if (ext == ".pgm") {
        FilePtr f(std::fopen(path.c_str(), "wb"));
        if (!f)
            throw Error(ErrorCode::IoError, "cannot open for writing: " + path);
        std::fprintf(f.get(), "P5\n%d %d\n255\n", img.width, img.height);
        if (std::fwrite(img.pixels.data(), 1, img.pixels.size(), f.get()) != img.pixels.size())
            throw Error(ErrorCode::IoError, "short write: " + path);
    } else if (ext == ".png") {
        save_png(img.pixels.data(), img.width, img.height, 1, path);
    } else {
        throw Error(ErrorCode::UnsupportedFormat, "unsupported output extension: " + path);
    }
}

void save_rgb(const RgbImage& img, const std::string& path) {
    if (img.width < 1 || img.height < 1)
        throw std::invalid_argument("save_rgb: empty image");
    if (lower_extension(path) != ".png")
        throw Error(ErrorCode::UnsupportedFormat, "RGB output is PNG only: " + path);
    save_png(img.rgb.data(), img.width, img.height, 3, path);
}

namespace {

// Midpoint circle rasterization; radius 0 marks the center pixel.
template <typename Plot>
void midpoint_circle(int cx, int cy, int radius, Plot plot) {
    if (radius == 0) {
        plot(cx, cy);
        return;
    }
    int x = radius;
    int y = 0;
    int err = 1 - radius;
    while (x >= y) {
        plot(cx + x, cy + y);
        plot(cx - x, cy + y);
        plot(cx + x, cy - y);
        plot(cx - x, cy - y);
        plot(cx + y, cy + x);
        plot(cx - y, cy + x);
        plot(cx + y, cy - x);
        plot(cx - y, cy - x);
        ++y;
        if (err < 0) {
            err += 2 * y + 1;
        } else {
            --x;
            err += 2 * (y - x) + 1;
        }
    }
}

} // namespace

RgbImage render_overlay(const GrayImage& img, const PupilCircle& pupil, int limbic_radius) {
    const int cx = static_cast<int>(std::lround(pupil.cx));
    const int cy = static_cast<int>(std::lround(pupil.cy));
    const int pr = static_cast<int>(std::lround(pupil.radius));
    for (int r : {pr, limbic_radius}) {
        if (r < 0 || cx - r < 0 || cx + r >= img.width || cy - r < 0 || cy + r >= img.height)
            throw Error(ErrorCode::CircleOutOfBounds, "render_overlay: circle outside image");
    }
    RgbImage out(img.width, img.height);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            const uint8_t v = img.at(x, y);
            out.set(x, y, v, v, v);
        }
    midpoint_circle(cx, cy, pr, [&](int x, int y) { out.set(x, y, 255, 0, 0); });
    midpoint_circle(cx, cy, limbic_radius, [&](int x, int y) { out.set(x, y, 0, 255, 0); });
    return out;
}

} // namespace fq
