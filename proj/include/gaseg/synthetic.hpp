#pragma once

#include <cstdint>
#include <vector>

#include "gaseg/histogram.hpp"
#include "gaseg/image.hpp"

namespace gaseg {

/// Test-image generator: `groups` colour groups, each confined to one voxel
/// of the given side, placed on a voxel lattice `separation` voxels apart.
struct SyntheticSpec {
  int groups = 2;
  int points_per_group = 64;
  int separation = 2;
  int side = kDefaultSide;
  std::uint64_t seed = 1;
  /// When false every pixel of a group is the voxel's low corner colour.
  bool jitter = true;
};

struct SyntheticImage {
  /// One row per group, `points_per_group` pixels wide.
  PixelGrid grid;
  /// Ground-truth group of every pixel.
  std::vector<int> truth;
};

SyntheticImage make_synthetic(const SyntheticSpec& spec);

/// Desk-scale stand-ins for the three field scenarios.
/// Three-mineral granite texture: whiter, greyer and darker grains.
PixelGrid granite_like(std::uint64_t seed = 7, std::size_t size = 200);
/// Dark mark with soft rim and flash highlights on a skin-tone background.
PixelGrid skin_mark(std::uint64_t seed = 11, std::size_t size = 160);
/// Six-colour map: paper, roads, black and brown names, parks, water.
PixelGrid colour_map(std::uint64_t seed = 13, std::size_t size = 240);

}  // namespace gaseg
