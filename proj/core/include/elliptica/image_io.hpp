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

#pragma once

#include <filesystem>

#include "elliptica/field.hpp"
#include "elliptica/image.hpp"

namespace elliptica {

enum class ImageFormat { png, ppm, pgm };

/// A path plus the format inferred from its extension.
struct ImageFileRef {
    std::filesystem::path path;
    ImageFormat format = ImageFormat::ppm;
};

/// Infers the format from the extension (.png/.ppm/.pgm, case-insensitive).
/// Throws std::invalid_argument for anything else.
ImageFileRef make_image_ref(const std::filesystem::path& path);

/// Decodes an 8-bit image and maps samples to [0, 1] by dividing by 255.
/// Grayscale inputs are replicated across the three channels. PPM/PGM are
/// the binary P6/P5 forms with maximum value 255. Throws std::runtime_error
/// on a missing file or malformed data.
RGBImage load_image(const ImageFileRef& ref);
RGBImage load_image(const std::filesystem::path& path);

/// Clips to [0, 1], quantizes each value as round(v*255) with halves rounded
/// away from zero, and encodes in the requested format. Saving to PGM writes
/// the per-pixel channel mean (lossless for images with identical channels).
void save_image(const RGBImage& img, const ImageFileRef& ref);
void save_image(const RGBImage& img, const std::filesystem::path& path);

/// CSV dump of a grid function: header "row,col,value", one line per site in
/// row-major order, values at full round-trip precision, LF line endings.
void write_field_csv(const Field2D& u, const std::filesystem::path& path);

} // namespace elliptica
