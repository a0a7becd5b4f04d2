#pragma once

// Sigma-delta background estimation and motion labelling.
//
// Runs on the 8-bit lattice: every frame entering the detector is quantized
// with quantize() first, and the background estimate moves by at most one
// level per frame.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "stdenoise/core.hpp"

namespace stdenoise {

struct SigmaDeltaParams {
  int amplification = 2;  // N: variance tracks N * |I - M|
  int v_min = 2;
  int v_max = 255;

  void validate() const;  // throws ParameterError
};

/// Per-pixel difference magnitude O and motion label E for one frame.
struct MotionFrame {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> difference;  // O, levels in [0,255]
  std::vector<std::uint8_t> label;       // E, 0 static / 1 moving

  static MotionFrame zeros(std::size_t width, std::size_t height);

  friend bool operator==(const MotionFrame&, const MotionFrame&) = default;
};

class SigmaDeltaState {
 public:
  /// Background initialised to the quantized first frame, variance to v_min.
  SigmaDeltaState(const Frame& first, SigmaDeltaParams params);

  /// Advances the recurrence by one frame and returns its motion output.
  /// Throws DimensionError when `frame` does not match the state.
  MotionFrame update(const Frame& frame);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  const std::vector<std::uint8_t>& mean() const noexcept { return mean_; }
  const std::vector<std::uint8_t>& variance() const noexcept { return variance_; }
  const SigmaDeltaParams& params() const noexcept { return params_; }

 private:
  std::size_t width_;
  std::size_t height_;
  SigmaDeltaParams params_;
  std::vector<std::uint8_t> mean_;      // M
  std::vector<std::uint8_t> variance_;  // V
};

inline SigmaDeltaState sd_init(const Frame& first, const SigmaDeltaParams& params) {
  return SigmaDeltaState(first, params);
}

inline MotionFrame sd_update(SigmaDeltaState& state, const Frame& frame) {
  return state.update(frame);
}

/// One MotionFrame per input frame; frame 0 is all zero by convention.
std::vector<MotionFrame> sd_run(const Sequence& seq, const SigmaDeltaParams& params);

/// Label mask as a displayable frame (E scaled to {0,1}).
Frame motion_mask(const MotionFrame& m);

}  // namespace stdenoise
