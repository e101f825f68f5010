#include "vesselkit/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cerrno>
#include <csetjmp>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

namespace vesselkit {
namespace fs = std::filesystem;

namespace {

std::string quoted(const fs::path& path) { return "'" + path.string() + "'"; }

std::vector<std::uint8_t> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + quoted(path) + ": " +
                  (fs::exists(path) ? std::strerror(errno) : "no such file"));
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot write " + quoted(path) + ": " + std::strerror(errno));
  }
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw IoError("write failed for " + quoted(path));
  }
}

// ---------------------------------------------------------------------------
// PNG

struct PngDecoded {
  int width = 0;
  int height = 0;
  int channels = 0;  // 1 or 3 after transforms
  int bit_depth = 0;  // 8 or 16 after transforms
  std::vector<std::uint8_t> bytes;
  std::vector<png_bytep> rows;
};

struct MemoryReader {
  std::span<const std::uint8_t> data;
  std::size_t offset = 0;
};

void png_read_from_memory(png_structp png, png_bytep out, png_size_t count) {
  auto* reader = static_cast<MemoryReader*>(png_get_io_ptr(png));
  if (reader->offset + count > reader->data.size()) {
    png_error(png, "unexpected end of data");
  }
  std::memcpy(out, reader->data.data() + reader->offset, count);
  reader->offset += count;
}

struct PngErrorSink {
  std::string message;
};

void png_on_error(png_structp png, png_const_charp msg) {
  auto* sink = static_cast<PngErrorSink*>(png_get_error_ptr(png));
  if (sink != nullptr) sink->message = msg;
  png_longjmp(png, 1);
}

void png_on_warning(png_structp, png_const_charp) {}

// Everything touched after setjmp lives in caller-owned storage.
bool decode_png(std::span<const std::uint8_t> data, PngDecoded& out, PngErrorSink& sink) {
  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, &sink, png_on_error, png_on_warning);
  if (png == nullptr) {
    sink.message = "cannot allocate decoder";
    return false;
  }
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    sink.message = "cannot allocate decoder";
    return false;
  }
  MemoryReader reader{data, 0};

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    return false;
  }

  png_set_read_fn(png, &reader, png_read_from_memory);
  png_read_info(png, info);

  const png_byte color_type = png_get_color_type(png, info);
  const png_byte depth = png_get_bit_depth(png, info);
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  png_set_interlace_handling(png);
  png_read_update_info(png, info);

  out.width = static_cast<int>(png_get_image_width(png, info));
  out.height = static_cast<int>(png_get_image_height(png, info));
  out.channels = png_get_channels(png, info);
  out.bit_depth = png_get_bit_depth(png, info);
  const std::size_t stride = png_get_rowbytes(png, info);
  out.bytes.resize(stride * static_cast<std::size_t>(out.height));
  out.rows.resize(static_cast<std::size_t>(out.height));
  for (std::size_t r = 0; r < out.rows.size(); ++r) out.rows[r] = out.bytes.data() + r * stride;
  png_read_image(png, out.rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return true;
}

AnyImage load_png(std::span<const std::uint8_t> data, const fs::path& path) {
  PngDecoded decoded;
  PngErrorSink sink;
  if (!decode_png(data, decoded, sink)) {
    throw FormatError("corrupt PNG " + quoted(path) + ": " + sink.message);
  }
  if (decoded.channels != 1 && decoded.channels != 3) {
    throw FormatError("unsupported PNG channel layout in " + quoted(path));
  }
  const std::size_t n = static_cast<std::size_t>(decoded.width) * decoded.height;
  const std::size_t samples = n * static_cast<std::size_t>(decoded.channels);
  std::vector<std::uint8_t> eight(samples);
  if (decoded.bit_depth == 16) {
    for (std::size_t i = 0; i < samples; ++i) {
      const unsigned v = (unsigned{decoded.bytes[2 * i]} << 8) | decoded.bytes[2 * i + 1];
      eight[i] = static_cast<std::uint8_t>(v / 257);
    }
  } else {
    std::copy_n(decoded.bytes.begin(), samples, eight.begin());
  }
  if (decoded.channels == 1) return GrayImage(decoded.width, decoded.height, std::move(eight));
  std::vector<Rgb> rgb(n);
  for (std::size_t i = 0; i < n; ++i) rgb[i] = {eight[3 * i], eight[3 * i + 1], eight[3 * i + 2]};
  return ColorImage(decoded.width, decoded.height, std::move(rgb));
}

void png_write_to_memory(png_structp png, png_bytep data, png_size_t length) {
  auto* buffer = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  buffer->insert(buffer->end(), data, data + length);
}

void png_flush_noop(png_structp) {}

struct PngEncoded {
  std::vector<std::uint8_t> bytes;
  std::vector<png_bytep> rows;
};

bool encode_png(const GrayImage& image, PngEncoded& out, PngErrorSink& sink) {
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, &sink, png_on_error, png_on_warning);
  if (png == nullptr) return false;
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    return false;
  }
  out.rows.resize(static_cast<std::size_t>(image.height()));
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    return false;
  }
  png_set_write_fn(png, &out.bytes, png_write_to_memory, png_flush_noop);
  png_set_IHDR(png, info, static_cast<png_uint_32>(image.width()),
               static_cast<png_uint_32>(image.height()), 8, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  // libpng takes non-const row pointers but does not modify them when writing.
  auto* base = const_cast<std::uint8_t*>(image.pixels().data());
  for (std::size_t r = 0; r < out.rows.size(); ++r) {
    out.rows[r] = base + r * static_cast<std::size_t>(image.width());
  }
  png_write_image(png, out.rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

// ---------------------------------------------------------------------------
// PNM (P5 / P6)

class PnmHeaderReader {
 public:
  PnmHeaderReader(std::span<const std::uint8_t> data, const fs::path& path)
      : data_(data), path_(path) {}

  long next_int() {
    skip_space_and_comments();
    if (pos_ >= data_.size() || !std::isdigit(data_[pos_])) {
      throw FormatError("corrupt PNM header in " + quoted(path_));
    }
    long v = 0;
    while (pos_ < data_.size() && std::isdigit(data_[pos_])) {
      v = v * 10 + (data_[pos_++] - '0');
      if (v > 1'000'000'000) throw FormatError("corrupt PNM header in " + quoted(path_));
    }
    return v;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_offset() {
    if (pos_ >= data_.size() || !std::isspace(data_[pos_])) {
      throw FormatError("corrupt PNM header in " + quoted(path_));
    }
    return pos_ + 1;
  }

  void skip(std::size_t n) { pos_ += n; }

 private:
  void skip_space_and_comments() {
    while (pos_ < data_.size()) {
      if (std::isspace(data_[pos_])) {
        ++pos_;
      } else if (data_[pos_] == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> data_;
  const fs::path& path_;
  std::size_t pos_ = 0;
};

AnyImage load_pnm(std::span<const std::uint8_t> data, const fs::path& path) {
  const bool color = data[1] == '6';
  PnmHeaderReader header(data, path);
  header.skip(2);
  const long width = header.next_int();
  const long height = header.next_int();
  const long maxval = header.next_int();
  if (width < 1 || height < 1 || maxval < 1 || maxval > 65535) {
    throw FormatError("corrupt PNM header in " + quoted(path));
  }
  const std::size_t offset = header.raster_offset();
  const std::size_t channels = color ? 3 : 1;
  const std::size_t bytes_per_sample = maxval > 255 ? 2 : 1;
  const std::size_t samples = static_cast<std::size_t>(width) * height * channels;
  if (data.size() < offset + samples * bytes_per_sample) {
    throw FormatError("truncated PNM raster in " + quoted(path));
  }
  std::vector<std::uint8_t> eight(samples);
  const auto* raster = data.data() + offset;
  for (std::size_t i = 0; i < samples; ++i) {
    unsigned long v = bytes_per_sample == 2
                          ? (static_cast<unsigned long>(raster[2 * i]) << 8) | raster[2 * i + 1]
                          : raster[i];
    if (v > static_cast<unsigned long>(maxval)) {
      throw FormatError("PNM sample exceeds maxval in " + quoted(path));
    }
    eight[i] = static_cast<std::uint8_t>(maxval == 255 ? v : v * 255 / maxval);
  }
  if (!color) return GrayImage(static_cast<int>(width), static_cast<int>(height), std::move(eight));
  std::vector<Rgb> rgb(samples / 3);
  for (std::size_t i = 0; i < rgb.size(); ++i) rgb[i] = {eight[3 * i], eight[3 * i + 1], eight[3 * i + 2]};
  return ColorImage(static_cast<int>(width), static_cast<int>(height), std::move(rgb));
}

std::vector<std::uint8_t> encode_pgm(const GrayImage& image) {
  std::string header =
      "P5\n" + std::to_string(image.width()) + " " + std::to_string(image.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), image.pixels().begin(), image.pixels().end());
  return out;
}

std::string lower_extension(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

constexpr std::array<std::uint8_t, 8> kPngSignature = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

}  // namespace

AnyImage load_image(const fs::path& path) {
  const auto data = read_file(path);
  if (data.size() >= kPngSignature.size() &&
      std::equal(kPngSignature.begin(), kPngSignature.end(), data.begin())) {
    return load_png(data, path);
  }
  if (data.size() >= 2 && data[0] == 'P' && (data[1] == '5' || data[1] == '6')) {
    return load_pnm(data, path);
  }
  throw FormatError("unsupported image format in " + quoted(path) +
                    " (expected PNG or binary PGM/PPM)");
}

GrayImage to_gray(const AnyImage& image) {
  if (const auto* gray = std::get_if<GrayImage>(&image)) return *gray;
  return green_channel(std::get<ColorImage>(image));
}

GrayImage load_gray(const fs::path& path) { return to_gray(load_image(path)); }

BinaryMask load_mask(const fs::path& path) {
  const auto image = load_image(path);
  const auto* gray = std::get_if<GrayImage>(&image);
  if (gray == nullptr) {
    throw TypeMismatchError(quoted(path) + " is a color image, expected a binary mask");
  }
  const auto px = gray->pixels();
  const bool unit = std::all_of(px.begin(), px.end(), [](std::uint8_t v) { return v <= 1; });
  std::vector<std::uint8_t> bits(px.size());
  for (std::size_t i = 0; i < px.size(); ++i) {
    if (unit) {
      bits[i] = px[i];
    } else if (px[i] == 0 || px[i] == 255) {
      bits[i] = px[i] ? 1 : 0;
    } else {
      throw TypeMismatchError(quoted(path) + " is not binary (found gray level " +
                              std::to_string(px[i]) + ")");
    }
  }
  return BinaryMask(gray->width(), gray->height(), std::move(bits));
}

BinaryMask load_annotation(const fs::path& path) { return threshold(load_gray(path), 127); }

void save_gray(const GrayImage& image, const fs::path& path) {
  const auto ext = lower_extension(path);
  if (ext == ".pgm") {
    write_file(path, encode_pgm(image));
  } else if (ext == ".png") {
    PngEncoded encoded;
    PngErrorSink sink;
    if (!encode_png(image, encoded, sink)) {
      throw IoError("PNG encoding failed for " + quoted(path) + ": " + sink.message);
    }
    write_file(path, encoded.bytes);
  } else {
    throw FormatError("unsupported output extension for " + quoted(path) + " (use .png or .pgm)");
  }
}

void save_mask(const BinaryMask& mask, const fs::path& path) { save_gray(mask_to_gray(mask), path); }

void save_scores(const ScoreMap& scores, const fs::path& path) {
  const std::string header =
      "VKS1 " + std::to_string(scores.width()) + " " + std::to_string(scores.height()) + "\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + scores.size() * 4);
  for (std::uint32_t v : scores.pixels()) {
    for (int shift = 0; shift < 32; shift += 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
  }
  write_file(path, out);
}

ScoreMap load_scores(const fs::path& path) {
  const auto data = read_file(path);
  const auto newline = std::find(data.begin(), data.end(), std::uint8_t{'\n'});
  if (newline == data.end()) throw FormatError("corrupt score file " + quoted(path));
  std::istringstream header(std::string(data.begin(), newline));
  std::string magic;
  int width = 0;
  int height = 0;
  if (!(header >> magic >> width >> height) || magic != "VKS1" || width < 1 || height < 1) {
    throw FormatError("corrupt score file header in " + quoted(path));
  }
  const std::size_t offset = static_cast<std::size_t>(newline - data.begin()) + 1;
  const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (data.size() != offset + 4 * n) throw FormatError("truncated score file " + quoted(path));
  std::vector<std::uint32_t> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto* b = data.data() + offset + 4 * i;
    values[i] = std::uint32_t{b[0]} | std::uint32_t{b[1]} << 8 | std::uint32_t{b[2]} << 16 |
                std::uint32_t{b[3]} << 24;
  }
  return ScoreMap(width, height, std::move(values));
}

}  // namespace vesselkit
