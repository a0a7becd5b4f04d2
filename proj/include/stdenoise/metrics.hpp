#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "stdenoise/core.hpp"

namespace stdenoise {

/// Returned by psnr() for identical frames.
inline constexpr double kInfinitePsnr = std::numeric_limits<double>::infinity();

double mse(const Frame& reference, const Frame& estimate);

/// 10 * log10(d^2 / mse); kInfinitePsnr when mse == 0.
double psnr(double mse_value, double d = 1.0);

struct FrameMetrics {
  std::size_t frame = 0;
  double mse = 0.0;
  double psnr = 0.0;
};

struct MetricsReport {
  std::string method;
  std::vector<FrameMetrics> per_frame;
  double mean_mse = 0.0;
  /// Mean over finite per-frame values; infinite when every frame is exact.
  double mean_psnr = 0.0;
  std::size_t infinite_frames = 0;
};

MetricsReport evaluate(const Sequence& reference, const Sequence& estimate, double d = 1.0,
                       std::string label = {});

}  // namespace stdenoise
