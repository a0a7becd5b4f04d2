#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace stdenoise {

/// One grayscale image, row-major, intensities normalized to [0,1].
class Frame {
 public:
  /// Constant frame. Throws DimensionError on zero size and
  /// ParameterError if `fill` is outside [0,1].
  Frame(std::size_t width, std::size_t height, double fill = 0.0);

  /// Takes ownership of `data`; validates size and range.
  Frame(std::size_t width, std::size_t height, std::vector<double> data);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }

  std::span<const double> values() const noexcept { return data_; }

  /// Unchecked in-range access.
  double at(std::size_t x, std::size_t y) const noexcept { return data_[y * width_ + x]; }

  /// Boundary-replicating access: out-of-range coordinates are clamped
  /// to the nearest edge pixel.
  double sample(std::ptrdiff_t x, std::ptrdiff_t y) const noexcept;

  bool same_shape(const Frame& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const Frame&, const Frame&) = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<double> data_;
};

/// Ordered, non-empty list of equally sized frames.
class Sequence {
 public:
  explicit Sequence(std::vector<Frame> frames);

  std::size_t length() const noexcept { return frames_.size(); }
  std::size_t width() const noexcept { return frames_.front().width(); }
  std::size_t height() const noexcept { return frames_.front().height(); }

  const Frame& operator[](std::size_t n) const noexcept { return frames_[n]; }
  const Frame& frame(std::size_t n) const;  // throws IndexError

  auto begin() const noexcept { return frames_.begin(); }
  auto end() const noexcept { return frames_.end(); }

  bool same_shape(const Sequence& other) const noexcept {
    return length() == other.length() && frames_.front().same_shape(other.frames_.front());
  }

  friend bool operator==(const Sequence&, const Sequence&) = default;

 private:
  std::vector<Frame> frames_;
};

/// Builds a frame from 8-bit samples; each intensity is sample / maxval.
Frame frame_from_bytes(std::size_t width, std::size_t height,
                       std::span<const std::uint8_t> bytes, int maxval = 255);

/// Quantizes to 8 bits: round(v * 255), halves away from zero.
std::vector<std::uint8_t> frame_to_bytes(const Frame& f);

/// Single intensity to an 8-bit level using the frame_to_bytes rule.
std::uint8_t quantize(double v) noexcept;

/// Differences g_p - g_s from pixel s = (x, y, n) to its six neighbours.
/// Temporal neighbours that do not exist (first/last frame) are empty.
struct NeighborDifferences {
  double north = 0.0;  // (x, y-1)
  double south = 0.0;  // (x, y+1)
  double east = 0.0;   // (x+1, y)
  double west = 0.0;   // (x-1, y)
  std::optional<double> prev;
  std::optional<double> next;
};

NeighborDifferences neighbor_differences(const Sequence& seq, std::size_t n,
                                         std::ptrdiff_t x, std::ptrdiff_t y);

}  // namespace stdenoise
