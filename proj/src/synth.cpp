#include "stdenoise/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "stdenoise/errors.hpp"

namespace stdenoise {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

// Uniform in (0, 1] from the top 53 bits.
double unit_open_closed(std::uint64_t bits) noexcept {
  return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

bool covers(const SceneSpec& spec, long cx, long cy, long x, long y) {
  if (spec.object == ObjectShape::Square) {
    const auto s = static_cast<long>(spec.object_size);
    return x >= cx && x < cx + s && y >= cy && y < cy + s;
  }
  const double r = static_cast<double>(spec.object_size) / 2.0;
  const auto dx = static_cast<double>(x - cx);
  const auto dy = static_cast<double>(y - cy);
  return dx * dx + dy * dy <= r * r;
}

void check_fits(const SceneSpec& spec, long ox, long oy, std::size_t t) {
  const auto w = static_cast<long>(spec.width);
  const auto h = static_cast<long>(spec.height);
  long x0, x1, y0, y1;  // inclusive bounding box
  if (spec.object == ObjectShape::Square) {
    const auto s = static_cast<long>(spec.object_size);
    x0 = ox, x1 = ox + s - 1, y0 = oy, y1 = oy + s - 1;
  } else {
    const auto r = static_cast<long>(spec.object_size / 2);
    x0 = ox - r, x1 = ox + r, y0 = oy - r, y1 = oy + r;
  }
  if (x0 < 0 || y0 < 0 || x1 >= w || y1 >= h) {
    throw ParameterError("object leaves the " + std::to_string(w) + "x" + std::to_string(h) +
                         " frame at t=" + std::to_string(t));
  }
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t counter) noexcept {
  std::uint64_t z = seed + (counter + 1) * kGoldenGamma;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double gaussian_at(std::uint64_t seed, std::uint64_t counter) noexcept {
  // Box-Muller on two position-keyed uniforms.
  const double u1 = unit_open_closed(splitmix64(seed, 2 * counter));
  const double u2 = unit_open_closed(splitmix64(seed, 2 * counter + 1));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Sequence generate(const SceneSpec& spec) {
  if (spec.width == 0 || spec.height == 0 || spec.frames == 0) {
    throw ParameterError("scene dimensions and frame count must be >= 1");
  }
  if (spec.object_size == 0) throw ParameterError("object size must be >= 1");
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(spec.background) || !in_unit(spec.object_intensity)) {
    throw ParameterError("scene intensities must lie in [0,1]");
  }

  std::vector<Frame> frames;
  frames.reserve(spec.frames);
  for (std::size_t t = 0; t < spec.frames; ++t) {
    const long ox = spec.start_x + static_cast<long>(t) * spec.velocity_x;
    const long oy = spec.start_y + static_cast<long>(t) * spec.velocity_y;
    check_fits(spec, ox, oy, t);
    std::vector<double> data(spec.width * spec.height, spec.background);
    for (std::size_t y = 0; y < spec.height; ++y) {
      for (std::size_t x = 0; x < spec.width; ++x) {
        if (covers(spec, ox, oy, static_cast<long>(x), static_cast<long>(y))) {
          data[y * spec.width + x] = spec.object_intensity;
        }
      }
    }
    frames.emplace_back(spec.width, spec.height, std::move(data));
  }
  return Sequence(std::move(frames));
}

Sequence add_gaussian_noise(const Sequence& seq, const NoiseSpec& noise) {
  if (!(noise.sigma >= 0.0)) throw ParameterError("noise sigma must be >= 0");
  if (noise.sigma == 0.0) return seq;
  const std::size_t plane = seq.width() * seq.height();
  std::vector<Frame> frames;
  frames.reserve(seq.length());
  for (std::size_t n = 0; n < seq.length(); ++n) {
    const auto src = seq[n].values();
    std::vector<double> data(src.size());
    for (std::size_t i = 0; i < src.size(); ++i) {
      const double z = gaussian_at(noise.seed, n * plane + i);
      data[i] = std::clamp(src[i] + noise.sigma * z, 0.0, 1.0);
    }
    frames.emplace_back(seq.width(), seq.height(), std::move(data));
  }
  return Sequence(std::move(frames));
}

}  // namespace stdenoise
