#pragma once

#include <filesystem>
#include <variant>

#include "vesselkit/errors.hpp"
#include "vesselkit/raster.hpp"

namespace vesselkit {

using AnyImage = std::variant<GrayImage, ColorImage>;

/// Decodes PNG (gray, gray+alpha, RGB, RGBA, palette; 1-16 bit) or binary
/// PGM/PPM (P5/P6). Format is sniffed from the leading bytes, not the
/// extension. Alpha is dropped; 16-bit samples are divided by 257; PNM files
/// with a maxval other than 255 are rescaled with v * 255 / maxval.
///
/// Throws IoError when the file cannot be opened and FormatError for an
/// unsupported or corrupt file. Messages carry the path.
AnyImage load_image(const std::filesystem::path& path);

/// Gray images pass through unchanged; color images yield their green channel.
GrayImage to_gray(const AnyImage& image);

GrayImage load_gray(const std::filesystem::path& path);

/// Strict mask loader: every pixel must be 0 or 255 (or 0/1 in a gray file
/// whose largest value is 1). Anything else is a TypeMismatchError.
BinaryMask load_mask(const std::filesystem::path& path);

/// Lenient loader for annotation and FOV files: gray value > 127 is white.
BinaryMask load_annotation(const std::filesystem::path& path);

/// Writes PNG or PGM, chosen by the extension (.png, .pgm). Other
/// extensions raise FormatError; write failures raise IoError.
void save_gray(const GrayImage& image, const std::filesystem::path& path);

/// Masks are written as 0/255.
void save_mask(const BinaryMask& mask, const std::filesystem::path& path);

/// Raw score container (".vks"): ASCII header "VKS1 <width> <height>\n"
/// followed by width*height little-endian uint32 values, row-major.
void save_scores(const ScoreMap& scores, const std::filesystem::path& path);
ScoreMap load_scores(const std::filesystem::path& path);

}  // namespace vesselkit
