#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace gaseg {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend auto operator<=>(const Rgb&, const Rgb&) = default;
};

/// Row-major 8-bit RGB raster.
struct PixelGrid {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<Rgb> pixels;

  PixelGrid() = default;
  PixelGrid(std::size_t w, std::size_t h, Rgb fill = {})
      : width(w), height(h), pixels(w * h, fill) {}

  bool empty() const { return pixels.empty(); }
  Rgb& at(std::size_t x, std::size_t y) { return pixels[y * width + x]; }
  const Rgb& at(std::size_t x, std::size_t y) const { return pixels[y * width + x]; }
};

/// Decodes a PNG (8-bit gray, gray+alpha, RGB, RGBA) or a binary PPM (P6,
/// maxval 255). Gray is replicated to RGB and alpha is dropped. The format is
/// chosen by file signature, not extension.
PixelGrid load_image(const std::filesystem::path& path);

PixelGrid decode_ppm(std::span<const std::uint8_t> bytes);
PixelGrid decode_png(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> encode_ppm(const PixelGrid& grid);
std::vector<std::uint8_t> encode_png_rgb(const PixelGrid& grid);
std::vector<std::uint8_t> encode_png_gray(std::size_t width, std::size_t height,
                                          std::span<const std::uint8_t> gray);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace gaseg
