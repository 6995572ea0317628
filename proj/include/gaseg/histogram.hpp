#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "gaseg/image.hpp"

namespace gaseg {

using Vec3 = std::array<double, 3>;

struct ColourCount {
  Rgb colour;
  std::uint64_t count = 0;
};

/// Exact colour histogram. Entries are sorted by colour (R, then G, then B)
/// and every count is at least one.
struct ColourHistogram {
  std::vector<ColourCount> entries;
  std::uint64_t total = 0;
};

/// One occupied voxel of the RGB cube.
struct ColourBin {
  std::uint32_t index = 0;
  Vec3 centre{};
  std::uint64_t frequency = 0;
};

/// The pre-partitioned histogram: occupied voxels sorted by index.
struct BinnedHistogram {
  std::vector<ColourBin> bins;
  int side = 32;
  std::uint64_t total = 0;

  std::size_t size() const { return bins.size(); }
};

constexpr int kDefaultSide = 32;

/// Voxels per axis for a given side, i.e. 256 / side.
int grid_size(int side);

/// Throws ConfigError unless side is a power of two in [1, 256].
void validate_side(int side);

/// Linear voxel index of a colour: R-major, then G, then B.
std::uint32_t voxel_index(Rgb colour, int side);

/// Midpoint of a voxel: low corner + (side - 1) / 2 per channel.
Vec3 voxel_centre(std::uint32_t index, int side);

ColourHistogram build_histogram(const PixelGrid& grid);

BinnedHistogram voxelize(const ColourHistogram& hist, int side = kDefaultSide);

}  // namespace gaseg
