#include "stdenoise/metrics.hpp"

#include <cmath>

#include "stdenoise/errors.hpp"

namespace stdenoise {

double mse(const Frame& reference, const Frame& estimate) {
  if (!reference.same_shape(estimate)) throw DimensionError("mse: frame dimensions differ");
  const auto a = reference.values();
  const auto b = estimate.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum / static_cast<double>(a.size());
}

double psnr(double mse_value, double d) {
  if (mse_value == 0.0) return kInfinitePsnr;
  return 10.0 * std::log10(d * d / mse_value);
}

MetricsReport evaluate(const Sequence& reference, const Sequence& estimate, double d,
                       std::string label) {
  if (!reference.same_shape(estimate)) {
    throw DimensionError("evaluate: reference and estimate sequences differ in length or size");
  }
  MetricsReport report;
  report.method = std::move(label);
  double mse_sum = 0.0;
  double psnr_sum = 0.0;
  for (std::size_t n = 0; n < reference.length(); ++n) {
    const double e = mse(reference[n], estimate[n]);
    const double p = psnr(e, d);
    report.per_frame.push_back({n, e, p});
    mse_sum += e;
    if (std::isinf(p)) {
      ++report.infinite_frames;
    } else {
      psnr_sum += p;
    }
  }
  const auto count = static_cast<double>(reference.length());
  report.mean_mse = mse_sum / count;
  const std::size_t finite = reference.length() - report.infinite_frames;
  report.mean_psnr = finite == 0 ? kInfinitePsnr : psnr_sum / static_cast<double>(finite);
  return report;
}

}  // namespace stdenoise
