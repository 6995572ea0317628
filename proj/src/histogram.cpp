#include "gaseg/histogram.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "gaseg/error.hpp"

namespace gaseg {

namespace {

std::uint32_t pack(Rgb c) {
  return (std::uint32_t{c.r} << 16) | (std::uint32_t{c.g} << 8) | std::uint32_t{c.b};
}

Rgb unpack(std::uint32_t key) {
  return {static_cast<std::uint8_t>(key >> 16), static_cast<std::uint8_t>(key >> 8),
          static_cast<std::uint8_t>(key)};
}

}  // namespace

void validate_side(int side) {
  if (side < 1 || side > 256 || !std::has_single_bit(static_cast<unsigned>(side))) {
    throw ConfigError("cube side must be a power of two dividing 256, got " + std::to_string(side));
  }
}

int grid_size(int side) {
  validate_side(side);
  return 256 / side;
}

std::uint32_t voxel_index(Rgb colour, int side) {
  const auto g = static_cast<std::uint32_t>(grid_size(side));
  const auto s = static_cast<std::uint32_t>(side);
  return (colour.r / s) * g * g + (colour.g / s) * g + colour.b / s;
}

Vec3 voxel_centre(std::uint32_t index, int side) {
  const auto g = static_cast<std::uint32_t>(grid_size(side));
  const double offset = (side - 1) / 2.0;
  const std::uint32_t r = index / (g * g);
  const std::uint32_t gr = (index / g) % g;
  const std::uint32_t b = index % g;
  return {static_cast<double>(r * side) + offset, static_cast<double>(gr * side) + offset,
          static_cast<double>(b * side) + offset};
}

ColourHistogram build_histogram(const PixelGrid& grid) {
  if (grid.empty()) throw EmptyInputError("cannot build a histogram of an empty image");
  if (grid.pixels.size() != grid.width * grid.height) {
    throw ConsistencyError("pixel count does not match width x height");
  }
  std::vector<std::uint32_t> keys;
  keys.reserve(grid.pixels.size());
  for (const auto& px : grid.pixels) keys.push_back(pack(px));
  std::sort(keys.begin(), keys.end());

  ColourHistogram hist;
  hist.total = keys.size();
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    hist.entries.push_back({unpack(keys[i]), j - i});
    i = j;
  }
  return hist;
}

BinnedHistogram voxelize(const ColourHistogram& hist, int side) {
  validate_side(side);
  std::vector<std::pair<std::uint32_t, std::uint64_t>> keyed;
  keyed.reserve(hist.entries.size());
  std::uint64_t total = 0;
  for (const auto& e : hist.entries) {
    keyed.emplace_back(voxel_index(e.colour, side), e.count);
    total += e.count;
  }
  if (total != hist.total) throw ConsistencyError("histogram counts do not sum to its total");
  std::sort(keyed.begin(), keyed.end());

  BinnedHistogram out;
  out.side = side;
  out.total = total;
  for (const auto& [index, count] : keyed) {
    if (!out.bins.empty() && out.bins.back().index == index) {
      out.bins.back().frequency += count;
    } else {
      out.bins.push_back({index, voxel_centre(index, side), count});
    }
  }
  return out;
}

}  // namespace gaseg
