#include "gaseg/image.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <csetjmp>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "gaseg/error.hpp"

namespace gaseg {

namespace {

constexpr std::uint8_t kPngSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

bool has_png_signature(std::span<const std::uint8_t> bytes) {
  return bytes.size() >= 8 && std::equal(bytes.begin(), bytes.begin() + 8, kPngSignature);
}

// Netpbm header tokenizer: whitespace separated, '#' starts a comment.
class PnmHeader {
 public:
  explicit PnmHeader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::string token() {
    skip_space_and_comments();
    std::string out;
    while (pos_ < bytes_.size() && !std::isspace(bytes_[pos_]) && bytes_[pos_] != '#') {
      out.push_back(static_cast<char>(bytes_[pos_++]));
    }
    return out;
  }

  std::size_t number(const char* what) {
    const std::string t = token();
    if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      throw DecodeError(std::string("PPM: malformed ") + what);
    }
    if (t.size() > 9) throw DecodeError(std::string("PPM: ") + what + " too large");
    return std::stoul(t);
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_offset() const { return pos_ + 1; }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

struct ReadCursor {
  std::span<const std::uint8_t> bytes;
  std::size_t offset = 0;
};

void png_read_from_span(png_structp png, png_bytep out, png_size_t length) {
  auto* cursor = static_cast<ReadCursor*>(png_get_io_ptr(png));
  if (cursor->offset + length > cursor->bytes.size()) {
    png_error(png, "unexpected end of data");
  }
  std::memcpy(out, cursor->bytes.data() + cursor->offset, length);
  cursor->offset += length;
}

void png_write_to_vector(png_structp png, png_bytep data, png_size_t length) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + length);
}

void png_flush_noop(png_structp) {}

void png_error_longjmp(png_structp png, png_const_charp msg) {
  auto* message = static_cast<std::string*>(png_get_error_ptr(png));
  if (message != nullptr) *message = msg;
  png_longjmp(png, 1);
}

void png_warning_ignore(png_structp, png_const_charp) {}

std::vector<std::uint8_t> encode_png(std::size_t width, std::size_t height, int colour_type,
                                     std::size_t channels, std::span<const std::uint8_t> data) {
  if (width == 0 || height == 0) throw ConfigError("PNG: cannot encode an empty image");
  std::vector<std::uint8_t> out;
  std::vector<png_bytep> rows(height);
  for (std::size_t y = 0; y < height; ++y) {
    rows[y] = const_cast<png_bytep>(data.data() + y * width * channels);
  }
  std::string message;

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &message, png_error_longjmp,
                                            png_warning_ignore);
  if (png == nullptr) throw IoError("PNG: cannot allocate writer");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("PNG: encode failed: " + message);
  }
  png_set_write_fn(png, &out, png_write_to_vector, png_flush_noop);
  png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 8,
               colour_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_set_compression_level(png, 6);
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

}  // namespace

PixelGrid decode_ppm(std::span<const std::uint8_t> bytes) {
  PnmHeader header(bytes);
  const std::string magic = header.token();
  if (magic != "P6") throw DecodeError("PPM: unsupported magic '" + magic + "' (only P6)");
  const std::size_t width = header.number("width");
  const std::size_t height = header.number("height");
  const std::size_t maxval = header.number("maxval");
  if (width == 0 || height == 0) throw DecodeError("PPM: zero width or height");
  if (maxval != 255) {
    throw DecodeError("PPM: unsupported bit depth (maxval " + std::to_string(maxval) +
                      ", only 255)");
  }
  const std::size_t offset = header.raster_offset();
  const std::size_t needed = width * height * 3;
  if (offset > bytes.size() || bytes.size() - offset < needed) {
    throw DecodeError("PPM: truncated payload (expected " + std::to_string(needed) + " bytes)");
  }
  PixelGrid grid(width, height);
  const std::uint8_t* p = bytes.data() + offset;
  for (auto& px : grid.pixels) {
    px = {p[0], p[1], p[2]};
    p += 3;
  }
  return grid;
}

PixelGrid decode_png(std::span<const std::uint8_t> bytes) {
  if (!has_png_signature(bytes)) throw DecodeError("PNG: bad signature");
  ReadCursor cursor{bytes, 0};
  std::string message;
  std::vector<std::uint8_t> raster;
  std::vector<png_bytep> rows;
  png_uint_32 width = 0;
  png_uint_32 height = 0;
  int bit_depth = 0;
  int colour_type = 0;

  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, &message, png_error_longjmp, png_warning_ignore);
  if (png == nullptr) throw DecodeError("PNG: cannot allocate reader");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr || setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw DecodeError("PNG: " + message);
  }
  png_set_read_fn(png, &cursor, png_read_from_span);
  png_read_info(png, info);
  png_get_IHDR(png, info, &width, &height, &bit_depth, &colour_type, nullptr, nullptr, nullptr);

  if (bit_depth != 8) {
    message = "unsupported bit depth " + std::to_string(bit_depth) + " (only 8)";
    png_longjmp(png, 1);
  }
  if (colour_type == PNG_COLOR_TYPE_PALETTE) {
    message = "unsupported colour type (palette)";
    png_longjmp(png, 1);
  }
  if (colour_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  if (colour_type == PNG_COLOR_TYPE_GRAY || colour_type == PNG_COLOR_TYPE_GRAY_ALPHA) {
    png_set_gray_to_rgb(png);
  }
  png_set_interlace_handling(png);
  png_read_update_info(png, info);
  if (png_get_rowbytes(png, info) != static_cast<png_size_t>(width) * 3) {
    message = "unexpected row layout after conversion";
    png_longjmp(png, 1);
  }
  raster.resize(static_cast<std::size_t>(width) * height * 3);
  rows.resize(height);
  for (png_uint_32 y = 0; y < height; ++y) rows[y] = raster.data() + std::size_t{y} * width * 3;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  PixelGrid grid(width, height);
  for (std::size_t i = 0; i < grid.pixels.size(); ++i) {
    grid.pixels[i] = {raster[3 * i], raster[3 * i + 1], raster[3 * i + 2]};
  }
  return grid;
}

PixelGrid load_image(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  if (has_png_signature(bytes)) return decode_png(bytes);
  if (bytes.size() >= 2 && bytes[0] == 'P') return decode_ppm(bytes);
  throw DecodeError("unsupported image format in " + path.string() + " (expected PNG or P6 PPM)");
}

std::vector<std::uint8_t> encode_ppm(const PixelGrid& grid) {
  const std::string header =
      "P6\n" + std::to_string(grid.width) + " " + std::to_string(grid.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + grid.pixels.size() * 3);
  for (const auto& px : grid.pixels) {
    out.push_back(px.r);
    out.push_back(px.g);
    out.push_back(px.b);
  }
  return out;
}

std::vector<std::uint8_t> encode_png_rgb(const PixelGrid& grid) {
  std::vector<std::uint8_t> data;
  data.reserve(grid.pixels.size() * 3);
  for (const auto& px : grid.pixels) {
    data.push_back(px.r);
    data.push_back(px.g);
    data.push_back(px.b);
  }
  return encode_png(grid.width, grid.height, PNG_COLOR_TYPE_RGB, 3, data);
}

std::vector<std::uint8_t> encode_png_gray(std::size_t width, std::size_t height,
                                          std::span<const std::uint8_t> gray) {
  if (gray.size() != width * height) throw ConsistencyError("PNG: gray buffer size mismatch");
  return encode_png(width, height, PNG_COLOR_TYPE_GRAY, 1, gray);
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed: " + path.string());
  return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace gaseg
