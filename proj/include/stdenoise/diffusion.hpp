#pragma once

// Diffusivity functions and the four sequence filters:
//
//   denoise_coupled      spatial Perona-Malik diffusion coupled with temporal
//                        diffusion gated by sigma-delta motion, plus a data
//                        fidelity term
//   denoise_diffusion3d  single 3D gradient norm drives one coefficient
//   denoise_pm2d         frame-by-frame Perona-Malik (or heat equation)
//   denoise_median3d     (2r+1)^3 spatio-temporal median
//
// All explicit schemes are Jacobi updates with replicated spatial borders;
// missing temporal neighbours at the sequence ends are skipped.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "stdenoise/core.hpp"
#include "stdenoise/sigma_delta.hpp"

namespace stdenoise {

/// How the temporal coefficient c_t is derived from sigma-delta output.
enum class TemporalMode {
  Gate,  // c_t = 1 - E
  Soft,  // c_t = exp(-(O / 255 / k_t)^2)
};

/// Sign of the data term. AsPrinted adds +(g - f), which pushes the iterate
/// away from the data; it exists only to demonstrate that divergence.
enum class FidelitySign { Restoring, AsPrinted };

struct DiffusionParams {
  double k_s = 0.21;
  double k_t = 0.21;
  double lambda = 0.53;
  double dt = 0.24;
  int iterations = 450;
  double fidelity_weight = 1.0;
  TemporalMode temporal_mode = TemporalMode::Gate;
  bool recompute_motion = false;
  FidelitySign fidelity_sign = FidelitySign::Restoring;

  /// Throws ParameterError. Besides the per-field ranges this enforces
  /// dt * lambda * 6 <= 1, the explicit-scheme bound for six neighbours.
  void validate() const;
};

/// c(u) = exp(-(u/k)^2).
double diffusivity_perona(double u, double k);

/// Phi(u) = k^2/2 * (1 - exp(-(u/k)^2)); Phi'(u) = u * c(u).
double phi_potential(double u, double k);

/// Per-pixel temporal coefficient in [0,1].
Frame temporal_diffusivity(const MotionFrame& motion, double k_t, TemporalMode mode);

enum Direction : std::size_t { North = 0, South, East, West, Prev, Next };

/// Edge coefficients of one coupled step, indexed [direction][n * w * h + y * w + x].
/// Absent temporal neighbours carry a zero coefficient.
struct DiffusivityField {
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t length = 0;
  std::array<std::vector<double>, 6> coefficient;
};

DiffusivityField coupled_diffusivity(const Sequence& current, std::span<const MotionFrame> motion,
                                     const DiffusionParams& p);

/// One explicit update of every pixel of every frame, clamped to [0,1].
Sequence coupled_step(const Sequence& current, const Sequence& noisy,
                      std::span<const MotionFrame> motion, const DiffusionParams& p);

Sequence denoise_coupled(const Sequence& noisy, const DiffusionParams& p,
                         const SigmaDeltaParams& sd);

/// Uses lambda * dt as the step so all diffusion baselines share the
/// coupled solver's time scale. No fidelity term.
Sequence denoise_diffusion3d(const Sequence& noisy, const DiffusionParams& p);

Sequence denoise_pm2d(const Sequence& noisy, const DiffusionParams& p, bool isotropic = false);

Sequence denoise_median3d(const Sequence& noisy, int radius = 1);

}  // namespace stdenoise
