// Copyright 2026 The Elliptica Project Developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
// implied. See the License for the specific language governing
// permissions and limitations under the License.

#include "elliptica/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <png.h>

namespace elliptica {

namespace {

std::uint8_t quantize(double v) {
    const double clipped = std::clamp(v, 0.0, 1.0);
    // round half away from zero; values here are nonnegative
    return static_cast<std::uint8_t>(std::lround(clipped * 255.0));
}

[[noreturn]] void decode_fail(const std::filesystem::path& path,
                              const std::string& why) {
    throw std::runtime_error("load_image: cannot decode '" + path.string() +
                             "': " + why);
}

// --- PNM (binary P5/P6, maxval 255) ---------------------------------------

// Reads one PNM header token, skipping whitespace and '#' comments.
std::string pnm_token(std::istream& in) {
    std::string token;
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (!std::isspace(c)) {
            break;
        }
        c = in.get();
    }
    while (c != EOF && !std::isspace(c)) {
        token.push_back(static_cast<char>(c));
        c = in.get();
    }
    if (c != EOF) in.unget();
    return token;
}

std::size_t pnm_dimension(std::istream& in, const std::filesystem::path& path) {
    const std::string token = pnm_token(in);
    if (token.empty() ||
        !std::all_of(token.begin(), token.end(),
                     [](unsigned char c) { return std::isdigit(c); })) {
        decode_fail(path, "malformed header");
    }
    const unsigned long value = std::stoul(token);
    if (value == 0) decode_fail(path, "zero dimension");
    return static_cast<std::size_t>(value);
}

RGBImage load_pnm(const std::filesystem::path& path, bool color) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("load_image: file not found: " + path.string());
    }
    const std::string magic = pnm_token(in);
    const std::string expected = color ? "P6" : "P5";
    if (magic != expected) {
        decode_fail(path, "expected " + expected + " magic, got '" + magic + "'");
    }
    const std::size_t cols = pnm_dimension(in, path);
    const std::size_t rows = pnm_dimension(in, path);
    const std::size_t maxval = pnm_dimension(in, path);
    if (maxval != 255) decode_fail(path, "only maxval 255 is supported");
    // single whitespace byte between the header and the payload
    const int sep = in.get();
    if (sep == EOF || !std::isspace(sep)) decode_fail(path, "missing payload separator");

    const std::size_t samples = rows * cols * (color ? 3 : 1);
    std::vector<std::uint8_t> raw(samples);
    in.read(reinterpret_cast<char*>(raw.data()),
            static_cast<std::streamsize>(samples));
    if (static_cast<std::size_t>(in.gcount()) != samples) {
        decode_fail(path, "truncated pixel data");
    }

    RGBImage img(rows, cols);
    double* dst = img.data();
    if (color) {
        for (std::size_t s = 0; s < samples; ++s) {
            dst[s] = static_cast<double>(raw[s]) / 255.0;
        }
    } else {
        for (std::size_t p = 0; p < rows * cols; ++p) {
            const double v = static_cast<double>(raw[p]) / 255.0;
            dst[3 * p] = v;
            dst[3 * p + 1] = v;
            dst[3 * p + 2] = v;
        }
    }
    return img;
}

void save_pnm(const RGBImage& img, const std::filesystem::path& path, bool color) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("save_image: cannot open for writing: " +
                                 path.string());
    }
    out << (color ? "P6" : "P5") << "\n"
        << img.cols() << " " << img.rows() << "\n255\n";

    const std::size_t pixels = img.pixels();
    std::vector<std::uint8_t> raw;
    raw.reserve(pixels * (color ? 3 : 1));
    const double* src = img.data();
    if (color) {
        for (std::size_t s = 0; s < pixels * 3; ++s) {
            raw.push_back(quantize(src[s]));
        }
    } else {
        for (std::size_t p = 0; p < pixels; ++p) {
            const double mean =
                (src[3 * p] + src[3 * p + 1] + src[3 * p + 2]) / 3.0;
            raw.push_back(quantize(mean));
        }
    }
    out.write(reinterpret_cast<const char*>(raw.data()),
              static_cast<std::streamsize>(raw.size()));
    if (!out) {
        throw std::runtime_error("save_image: write failed: " + path.string());
    }
}

// --- PNG (8-bit, via libpng) -----------------------------------------------

struct PngReadGuard {
    png_structp png = nullptr;
    png_infop info = nullptr;
    std::FILE* file = nullptr;
    ~PngReadGuard() {
        if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
        if (file) std::fclose(file);
    }
};

struct PngWriteGuard {
    png_structp png = nullptr;
    png_infop info = nullptr;
    std::FILE* file = nullptr;
    ~PngWriteGuard() {
        if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
        if (file) std::fclose(file);
    }
};

RGBImage load_png(const std::filesystem::path& path) {
    PngReadGuard g;
    g.file = std::fopen(path.c_str(), "rb");
    if (!g.file) {
        throw std::runtime_error("load_image: file not found: " + path.string());
    }
    g.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!g.png) decode_fail(path, "libpng init failed");
    g.info = png_create_info_struct(g.png);
    if (!g.info) decode_fail(path, "libpng init failed");
    if (setjmp(png_jmpbuf(g.png))) {
        decode_fail(path, "libpng error");
    }
    png_init_io(g.png, g.file);
    png_read_info(g.png, g.info);

    const png_uint_32 width = png_get_image_width(g.png, g.info);
    const png_uint_32 height = png_get_image_height(g.png, g.info);
    const png_byte color_type = png_get_color_type(g.png, g.info);
    const png_byte bit_depth = png_get_bit_depth(g.png, g.info);

    if (bit_depth == 16) png_set_strip_16(g.png);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(g.png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) {
        png_set_expand_gray_1_2_4_to_8(g.png);
    }
    if (png_get_valid(g.png, g.info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(g.png);
    png_set_strip_alpha(g.png);
    png_read_update_info(g.png, g.info);

    const png_byte channels = png_get_channels(g.png, g.info);
    if (channels != 1 && channels != 3) {
        decode_fail(path, "unsupported channel layout");
    }

    const std::size_t rows = height;
    const std::size_t cols = width;
    const std::size_t stride = png_get_rowbytes(g.png, g.info);
    std::vector<std::uint8_t> raw(rows * stride);
    std::vector<png_bytep> row_ptrs(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        row_ptrs[i] = raw.data() + i * stride;
    }
    png_read_image(g.png, row_ptrs.data());

    RGBImage img(rows, cols);
    double* dst = img.data();
    for (std::size_t i = 0; i < rows; ++i) {
        const std::uint8_t* src = raw.data() + i * stride;
        for (std::size_t j = 0; j < cols; ++j) {
            if (channels == 3) {
                dst[0] = static_cast<double>(src[3 * j]) / 255.0;
                dst[1] = static_cast<double>(src[3 * j + 1]) / 255.0;
                dst[2] = static_cast<double>(src[3 * j + 2]) / 255.0;
            } else {
                const double v = static_cast<double>(src[j]) / 255.0;
                dst[0] = v;
                dst[1] = v;
                dst[2] = v;
            }
            dst += 3;
        }
    }
    return img;
}

void save_png(const RGBImage& img, const std::filesystem::path& path) {
    PngWriteGuard g;
    g.file = std::fopen(path.c_str(), "wb");
    if (!g.file) {
        throw std::runtime_error("save_image: cannot open for writing: " +
                                 path.string());
    }
    g.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!g.png) throw std::runtime_error("save_image: libpng init failed");
    g.info = png_create_info_struct(g.png);
    if (!g.info) throw std::runtime_error("save_image: libpng init failed");
    if (setjmp(png_jmpbuf(g.png))) {
        throw std::runtime_error("save_image: write failed: " + path.string());
    }
    png_init_io(g.png, g.file);
    png_set_IHDR(g.png, g.info, static_cast<png_uint_32>(img.cols()),
                 static_cast<png_uint_32>(img.rows()), 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(g.png, g.info);

    const std::size_t cols = img.cols();
    std::vector<std::uint8_t> row(cols * 3);
    const double* src = img.data();
    for (std::size_t i = 0; i < img.rows(); ++i) {
        for (std::size_t s = 0; s < cols * 3; ++s) {
            row[s] = quantize(src[s]);
        }
        src += cols * 3;
        png_write_row(g.png, row.data());
    }
    png_write_end(g.png, nullptr);
}

} // namespace

ImageFileRef make_image_ref(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    ImageFileRef ref;
    ref.path = path;
    if (ext == ".png") {
        ref.format = ImageFormat::png;
    } else if (ext == ".ppm") {
        ref.format = ImageFormat::ppm;
    } else if (ext == ".pgm") {
        ref.format = ImageFormat::pgm;
    } else {
        throw std::invalid_argument("unsupported image extension '" + ext +
                                    "' (expected .png, .ppm or .pgm): " +
                                    path.string());
    }
    return ref;
}

RGBImage load_image(const ImageFileRef& ref) {
    switch (ref.format) {
    case ImageFormat::png:
        return load_png(ref.path);
    case ImageFormat::ppm:
        return load_pnm(ref.path, true);
    case ImageFormat::pgm:
        return load_pnm(ref.path, false);
    }
    throw std::logic_error("load_image: unreachable");
}

RGBImage load_image(const std::filesystem::path& path) {
    return load_image(make_image_ref(path));
}

void save_image(const RGBImage& img, const ImageFileRef& ref) {
    if (img.empty()) {
        throw std::invalid_argument("save_image: empty image");
    }
    switch (ref.format) {
    case ImageFormat::png:
        save_png(img, ref.path);
        return;
    case ImageFormat::ppm:
        save_pnm(img, ref.path, true);
        return;
    case ImageFormat::pgm:
        save_pnm(img, ref.path, false);
        return;
    }
    throw std::logic_error("save_image: unreachable");
}

void save_image(const RGBImage& img, const std::filesystem::path& path) {
    save_image(img, make_image_ref(path));
}

void write_field_csv(const Field2D& u, const std::filesystem::path& path) {
    std::FILE* out = std::fopen(path.c_str(), "wb");
    if (!out) {
        throw std::runtime_error("write_field_csv: cannot open for writing: " +
                                 path.string());
    }
    bool ok = std::fputs("row,col,value\n", out) >= 0;
    for (std::size_t i = 0; ok && i < u.rows(); ++i) {
        for (std::size_t j = 0; ok && j < u.cols(); ++j) {
            ok = std::fprintf(out, "%zu,%zu,%.17g\n", i, j, u(i, j)) > 0;
        }
    }
    ok = std::fclose(out) == 0 && ok;
    if (!ok) {
        throw std::runtime_error("write_field_csv: write failed: " + path.string());
    }
}

} // namespace elliptica
