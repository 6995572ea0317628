#include "gaseg/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "gaseg/error.hpp"
#include "gaseg/random.hpp"

namespace gaseg {

namespace {

std::uint8_t clamp_channel(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

Rgb noisy(const Vec3& base, double sigma, Rng& rng) {
  return {clamp_channel(base[0] + sigma * rng.normal()), clamp_channel(base[1] + sigma * rng.normal()),
          clamp_channel(base[2] + sigma * rng.normal())};
}

Vec3 mix(const Vec3& a, const Vec3& b, double t) {
  return {a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t, a[2] + (b[2] - a[2]) * t};
}

}  // namespace

SyntheticImage make_synthetic(const SyntheticSpec& spec) {
  validate_side(spec.side);
  if (spec.groups < 1) throw ConfigError("synthetic image needs at least one group");
  if (spec.points_per_group < 1) throw ConfigError("synthetic image needs points per group >= 1");
  if (spec.separation < 1) throw ConfigError("group separation must be at least one voxel");
  const int g = grid_size(spec.side);
  const int per_axis = (g - 1) / spec.separation + 1;
  if (static_cast<long>(per_axis) * per_axis * per_axis < spec.groups) {
    throw ConfigError("out of gamut: " + std::to_string(spec.groups) + " groups at separation " +
                      std::to_string(spec.separation) + " do not fit in the colour cube");
  }

  Rng rng(spec.seed);
  SyntheticImage out;
  out.grid = PixelGrid(static_cast<std::size_t>(spec.points_per_group),
                       static_cast<std::size_t>(spec.groups));
  out.truth.resize(out.grid.pixels.size());
  for (int grp = 0; grp < spec.groups; ++grp) {
    const int vr = grp / (per_axis * per_axis) * spec.separation;
    const int vg = grp / per_axis % per_axis * spec.separation;
    const int vb = grp % per_axis * spec.separation;
    for (int p = 0; p < spec.points_per_group; ++p) {
      auto offset = [&] {
        return spec.jitter ? static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.side))) : 0;
      };
      const int r = vr * spec.side + offset();
      const int gg = vg * spec.side + offset();
      const int b = vb * spec.side + offset();
      const auto at = static_cast<std::size_t>(grp) * out.grid.width + static_cast<std::size_t>(p);
      out.grid.pixels[at] = {static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(gg),
                             static_cast<std::uint8_t>(b)};
      out.truth[at] = grp;
    }
  }
  return out;
}

PixelGrid granite_like(std::uint64_t seed, std::size_t size) {
  constexpr std::array<Vec3, 3> phases = {{{222, 214, 205}, {140, 138, 142}, {55, 50, 58}}};
  Rng rng(seed);
  struct Grain {
    double x, y;
    Vec3 tint;
  };
  std::vector<Grain> grains(90);
  for (auto& grain : grains) {
    grain.x = rng.unit() * static_cast<double>(size);
    grain.y = rng.unit() * static_cast<double>(size);
    const double u = rng.unit();
    const std::size_t phase = u < 0.45 ? 0 : (u < 0.8 ? 1 : 2);
    grain.tint = phases[phase];
    for (auto& ch : grain.tint) ch += 6.0 * rng.normal();
  }
  PixelGrid grid(size, size);
  for (std::size_t y = 0; y < size; ++y) {
    for (std::size_t x = 0; x < size; ++x) {
      const Grain* nearest = &grains.front();
      double best = 1e300;
      for (const auto& grain : grains) {
        const double dx = grain.x - static_cast<double>(x);
        const double dy = grain.y - static_cast<double>(y);
        const double d = dx * dx + dy * dy;
        if (d < best) {
          best = d;
          nearest = &grain;
        }
      }
      grid.at(x, y) = noisy(nearest->tint, 10.0, rng);
    }
  }
  return grid;
}

PixelGrid skin_mark(std::uint64_t seed, std::size_t size) {
  const Vec3 skin{224, 172, 140};
  const Vec3 mark{95, 58, 40};
  const Vec3 flash{250, 246, 240};
  Rng rng(seed);
  const double s = static_cast<double>(size);
  const double cx = s * (0.45 + 0.1 * rng.unit());
  const double cy = s * (0.45 + 0.1 * rng.unit());
  const double rx = s * 0.28;
  const double ry = s * 0.22;
  std::array<double, 4> wobble{};
  for (auto& w : wobble) w = 0.08 * rng.normal();
  struct Spot {
    double x, y, r;
  };
  std::vector<Spot> spots(3);
  for (auto& sp : spots) sp = {cx + (rng.unit() - 0.5) * rx, cy + (rng.unit() - 0.5) * ry, 2.0 + 2.0 * rng.unit()};

  PixelGrid grid(size, size);
  for (std::size_t y = 0; y < size; ++y) {
    for (std::size_t x = 0; x < size; ++x) {
      const double dx = (static_cast<double>(x) - cx) / rx;
      const double dy = (static_cast<double>(y) - cy) / ry;
      const double angle = std::atan2(dy, dx);
      const double radius = 1.0 + wobble[0] * std::cos(angle) + wobble[1] * std::sin(2 * angle) +
                            wobble[2] * std::cos(3 * angle) + wobble[3] * std::sin(5 * angle);
      // Signed distance to the rim in pixels, roughly.
      const double rim = (std::sqrt(dx * dx + dy * dy) - radius) * std::min(rx, ry);
      const double inside = std::clamp(0.5 - rim / 6.0, 0.0, 1.0);
      Vec3 base = mix(skin, mark, inside);
      for (const auto& sp : spots) {
        const double d = std::hypot(static_cast<double>(x) - sp.x, static_cast<double>(y) - sp.y);
        if (d < sp.r) base = mix(base, flash, 1.0 - d / sp.r * 0.5);
      }
      grid.at(x, y) = noisy(base, 7.0, rng);
    }
  }
  return grid;
}

PixelGrid colour_map(std::uint64_t seed, std::size_t size) {
  enum Ink { paper, road, black, brown, park, water };
  constexpr std::array<Vec3, 6> inks = {
      {{238, 230, 205}, {205, 40, 40}, {25, 25, 25}, {140, 90, 50}, {40, 110, 50}, {70, 130, 200}}};
  Rng rng(seed);
  const auto n = size;
  std::vector<int> ink(n * n, paper);
  auto fill = [&](std::size_t x0, std::size_t y0, std::size_t w, std::size_t h, int colour) {
    for (std::size_t y = y0; y < std::min(n, y0 + h); ++y) {
      for (std::size_t x = x0; x < std::min(n, x0 + w); ++x) ink[y * n + x] = colour;
    }
  };
  auto pick = [&](std::size_t lo, std::size_t span) {
    return lo + static_cast<std::size_t>(rng.below(std::max<std::size_t>(span, 1)));
  };

  // Water along one edge, parks as blocks.
  fill(0, n - n / 6, n, n / 6, water);
  for (int k = 0; k < 5; ++k) fill(pick(0, n - 40), pick(0, n - n / 6 - 40), pick(15, 25), pick(15, 25), park);
  // Road grid.
  for (int k = 0; k < 4; ++k) {
    fill(pick(0, n - 4), 0, 4, n - n / 6, road);
    fill(0, pick(0, n - n / 6 - 4), n, 4, road);
  }
  // Names: short runs of glyph blocks.
  for (int k = 0; k < 30; ++k) {
    const int colour = k % 3 == 0 ? brown : black;
    const std::size_t x0 = pick(0, n - 30);
    const std::size_t y0 = pick(0, n - n / 6 - 8);
    for (int c = 0; c < 5; ++c) fill(x0 + static_cast<std::size_t>(c) * 5, y0, 3, 5, colour);
  }

  // Low-resolution acquisition: boundary pixels blend with a neighbour.
  PixelGrid grid(n, n);
  for (std::size_t y = 0; y < n; ++y) {
    for (std::size_t x = 0; x < n; ++x) {
      Vec3 base = inks[static_cast<std::size_t>(ink[y * n + x])];
      if (x + 1 < n && ink[y * n + x + 1] != ink[y * n + x] && rng.chance(0.5)) {
        base = mix(base, inks[static_cast<std::size_t>(ink[y * n + x + 1])], 0.5);
      }
      grid.at(x, y) = noisy(base, 4.0, rng);
    }
  }
  return grid;
}

}  // namespace gaseg
