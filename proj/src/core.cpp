#include "stdenoise/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stdenoise/errors.hpp"

namespace stdenoise {

namespace {

void check_shape(std::size_t width, std::size_t height) {
  if (width == 0 || height == 0) {
    throw DimensionError("frame dimensions must be at least 1x1, got " + std::to_string(width) +
                         "x" + std::to_string(height));
  }
}

}  // namespace

Frame::Frame(std::size_t width, std::size_t height, double fill)
    : width_(width), height_(height) {
  check_shape(width, height);
  if (!(fill >= 0.0 && fill <= 1.0)) throw ParameterError("frame fill value outside [0,1]");
  data_.assign(width * height, fill);
}

Frame::Frame(std::size_t width, std::size_t height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
  check_shape(width, height);
  if (data_.size() != width * height) {
    throw DimensionError("frame data has " + std::to_string(data_.size()) + " values, expected " +
                         std::to_string(width * height));
  }
  // Negated comparison so NaN is rejected as well.
  if (!std::all_of(data_.begin(), data_.end(), [](double v) { return v >= 0.0 && v <= 1.0; })) {
    throw ParameterError("frame intensity outside [0,1]");
  }
}

double Frame::sample(std::ptrdiff_t x, std::ptrdiff_t y) const noexcept {
  const auto cx = std::clamp<std::ptrdiff_t>(x, 0, static_cast<std::ptrdiff_t>(width_) - 1);
  const auto cy = std::clamp<std::ptrdiff_t>(y, 0, static_cast<std::ptrdiff_t>(height_) - 1);
  return data_[static_cast<std::size_t>(cy) * width_ + static_cast<std::size_t>(cx)];
}

Sequence::Sequence(std::vector<Frame> frames) : frames_(std::move(frames)) {
  if (frames_.empty()) throw DimensionError("sequence must contain at least one frame");
  for (std::size_t n = 1; n < frames_.size(); ++n) {
    if (!frames_[n].same_shape(frames_[0])) {
      throw DimensionError("frame " + std::to_string(n) + " is " +
                           std::to_string(frames_[n].width()) + "x" +
                           std::to_string(frames_[n].height()) + ", sequence is " +
                           std::to_string(width()) + "x" + std::to_string(height()));
    }
  }
}

const Frame& Sequence::frame(std::size_t n) const {
  if (n >= frames_.size()) {
    throw IndexError("frame index " + std::to_string(n) + " out of range for sequence of length " +
                     std::to_string(frames_.size()));
  }
  return frames_[n];
}

Frame frame_from_bytes(std::size_t width, std::size_t height,
                       std::span<const std::uint8_t> bytes, int maxval) {
  if (maxval < 1 || maxval > 255) {
    throw FormatError("maxval " + std::to_string(maxval) + " outside [1,255]");
  }
  check_shape(width, height);
  if (bytes.size() != width * height) {
    throw DimensionError("got " + std::to_string(bytes.size()) + " samples for a " +
                         std::to_string(width) + "x" + std::to_string(height) + " frame");
  }
  std::vector<double> data(bytes.size());
  const double denom = static_cast<double>(maxval);
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    if (bytes[i] > maxval) throw FormatError("sample exceeds maxval");
    data[i] = static_cast<double>(bytes[i]) / denom;
  }
  return Frame(width, height, std::move(data));
}

std::uint8_t quantize(double v) noexcept {
  // std::round rounds halfway cases away from zero.
  return static_cast<std::uint8_t>(std::clamp(std::round(v * 255.0), 0.0, 255.0));
}

std::vector<std::uint8_t> frame_to_bytes(const Frame& f) {
  std::vector<std::uint8_t> out;
  out.reserve(f.size());
  for (double v : f.values()) out.push_back(quantize(v));
  return out;
}

NeighborDifferences neighbor_differences(const Sequence& seq, std::size_t n, std::ptrdiff_t x,
                                         std::ptrdiff_t y) {
  const Frame& cur = seq.frame(n);
  const double s = cur.sample(x, y);
  NeighborDifferences d;
  d.north = cur.sample(x, y - 1) - s;
  d.south = cur.sample(x, y + 1) - s;
  d.east = cur.sample(x + 1, y) - s;
  d.west = cur.sample(x - 1, y) - s;
  if (n > 0) d.prev = seq[n - 1].sample(x, y) - s;
  if (n + 1 < seq.length()) d.next = seq[n + 1].sample(x, y) - s;
  return d;
}

}  // namespace stdenoise
