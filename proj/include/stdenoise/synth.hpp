#pragma once

// Synthetic ground-truth scenes and seeded Gaussian noise.

#include <cstddef>
#include <cstdint>

#include "stdenoise/core.hpp"

namespace stdenoise {

enum class ObjectShape { Square, Disk };

struct SceneSpec {
  std::size_t width = 64;
  std::size_t height = 64;
  std::size_t frames = 10;
  double background = 0.25;
  ObjectShape object = ObjectShape::Square;
  /// Side length for squares, diameter for disks.
  std::size_t object_size = 12;
  double object_intensity = 0.75;
  int velocity_x = 1;
  int velocity_y = 0;
  /// Top-left corner for squares, centre for disks.
  int start_x = 4;
  int start_y = 26;
};

struct NoiseSpec {
  double sigma = 0.1;
  std::uint64_t seed = 42;
};

/// Renders the scene; throws ParameterError if the object leaves the frame
/// at any time step or an intensity is outside [0,1].
Sequence generate(const SceneSpec& spec);

/// Adds N(0, sigma^2) to every pixel and clamps to [0,1]. The sample for
/// pixel i of frame n depends only on (seed, n, i).
Sequence add_gaussian_noise(const Sequence& seq, const NoiseSpec& noise);

/// SplitMix64 output number `counter + 1` of a generator seeded with `seed`.
std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t counter) noexcept;

/// Standard normal deviate keyed on (seed, counter).
double gaussian_at(std::uint64_t seed, std::uint64_t counter) noexcept;

}  // namespace stdenoise
