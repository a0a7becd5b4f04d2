#include "stdenoise/sigma_delta.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "stdenoise/errors.hpp"

namespace stdenoise {

namespace {

int sign(int v) { return (v > 0) - (v < 0); }

}  // namespace

void SigmaDeltaParams::validate() const {
  if (amplification < 1) throw ParameterError("sigma-delta amplification N must be >= 1");
  if (v_min < 1 || v_min > v_max || v_max > 255) {
    throw ParameterError("sigma-delta variance bounds must satisfy 1 <= v_min <= v_max <= 255, got [" +
                         std::to_string(v_min) + "," + std::to_string(v_max) + "]");
  }
}

MotionFrame MotionFrame::zeros(std::size_t width, std::size_t height) {
  return MotionFrame{width, height, std::vector<std::uint8_t>(width * height, 0),
                     std::vector<std::uint8_t>(width * height, 0)};
}

SigmaDeltaState::SigmaDeltaState(const Frame& first, SigmaDeltaParams params)
    : width_(first.width()), height_(first.height()), params_(params) {
  params_.validate();
  mean_ = frame_to_bytes(first);
  variance_.assign(first.size(), static_cast<std::uint8_t>(params_.v_min));
}

MotionFrame SigmaDeltaState::update(const Frame& frame) {
  if (frame.width() != width_ || frame.height() != height_) {
    throw DimensionError("sigma-delta state is " + std::to_string(width_) + "x" +
                         std::to_string(height_) + ", frame is " + std::to_string(frame.width()) +
                         "x" + std::to_string(frame.height()));
  }
  MotionFrame out = MotionFrame::zeros(width_, height_);
  const auto values = frame.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const int sample = quantize(values[i]);
    int m = mean_[i];
    m += sign(sample - m);
    const int o = std::abs(sample - m);
    int v = variance_[i];
    if (o != 0) {
      v += sign(params_.amplification * o - v);
      v = std::clamp(v, params_.v_min, params_.v_max);
    }
    mean_[i] = static_cast<std::uint8_t>(m);
    variance_[i] = static_cast<std::uint8_t>(v);
    out.difference[i] = static_cast<std::uint8_t>(o);
    out.label[i] = o < v ? 0 : 1;
  }
  return out;
}

std::vector<MotionFrame> sd_run(const Sequence& seq, const SigmaDeltaParams& params) {
  std::vector<MotionFrame> out;
  out.reserve(seq.length());
  SigmaDeltaState state(seq[0], params);
  out.push_back(MotionFrame::zeros(seq.width(), seq.height()));
  for (std::size_t n = 1; n < seq.length(); ++n) out.push_back(state.update(seq[n]));
  return out;
}

Frame motion_mask(const MotionFrame& m) {
  std::vector<double> data(m.label.size());
  std::transform(m.label.begin(), m.label.end(), data.begin(),
                 [](std::uint8_t e) { return e ? 1.0 : 0.0; });
  return Frame(m.width, m.height, std::move(data));
}

}  // namespace stdenoise
