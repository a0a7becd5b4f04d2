#include "stdenoise/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stdenoise/errors.hpp"

namespace stdenoise {

namespace {

// Flat (n, y, x) copy of a sequence for the stencil loops.
struct Volume {
  std::size_t w, h, len;
  std::vector<double> v;

  explicit Volume(const Sequence& seq)
      : w(seq.width()), h(seq.height()), len(seq.length()) {
    v.reserve(w * h * len);
    for (const Frame& f : seq) v.insert(v.end(), f.values().begin(), f.values().end());
  }

  std::size_t plane() const { return w * h; }
  std::size_t index(std::size_t n, std::size_t y, std::size_t x) const {
    return n * plane() + y * w + x;
  }

  Sequence to_sequence() const {
    std::vector<Frame> frames;
    frames.reserve(len);
    for (std::size_t n = 0; n < len; ++n) {
      frames.emplace_back(w, h,
                          std::vector<double>(v.begin() + static_cast<std::ptrdiff_t>(n * plane()),
                                              v.begin() + static_cast<std::ptrdiff_t>((n + 1) * plane())));
    }
    return Sequence(std::move(frames));
  }
};

// Neighbour indices with replicated spatial borders. Temporal entries are
// only meaningful when the corresponding has_* flag is set.
struct Stencil {
  std::size_t self, north, south, east, west, prev, next;
  bool has_prev, has_next;
};

Stencil stencil(const Volume& g, std::size_t n, std::size_t y, std::size_t x) {
  Stencil s{};
  s.self = g.index(n, y, x);
  s.north = g.index(n, y == 0 ? 0 : y - 1, x);
  s.south = g.index(n, y + 1 == g.h ? y : y + 1, x);
  s.east = g.index(n, y, x + 1 == g.w ? x : x + 1);
  s.west = g.index(n, y, x == 0 ? 0 : x - 1);
  s.has_prev = n > 0;
  s.has_next = n + 1 < g.len;
  s.prev = s.has_prev ? s.self - g.plane() : s.self;
  s.next = s.has_next ? s.self + g.plane() : s.self;
  return s;
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

void check_k(double k) {
  if (!(k > 0.0)) throw ParameterError("diffusivity threshold k must be > 0");
}

void check_motion(const Sequence& seq, std::span<const MotionFrame> motion) {
  if (motion.size() != seq.length()) {
    throw DimensionError("motion has " + std::to_string(motion.size()) + " frames, sequence has " +
                         std::to_string(seq.length()));
  }
  for (const MotionFrame& m : motion) {
    if (m.width != seq.width() || m.height != seq.height() ||
        m.label.size() != m.width * m.height || m.difference.size() != m.width * m.height) {
      throw DimensionError("motion frame dimensions do not match the sequence");
    }
  }
}

}  // namespace

void DiffusionParams::validate() const {
  if (!(k_s > 0.0) || !(k_t > 0.0)) throw ParameterError("k_s and k_t must be > 0");
  if (!(lambda >= 0.0)) throw ParameterError("lambda must be >= 0");
  if (!(dt > 0.0 && dt <= 0.24)) throw ParameterError("dt must lie in (0, 0.24]");
  if (iterations < 1) throw ParameterError("iterations must be >= 1");
  if (!(fidelity_weight >= 0.0)) throw ParameterError("fidelity weight must be >= 0");
  if (dt * lambda * 6.0 > 1.0) {
    throw ParameterError("dt * lambda * 6 = " + std::to_string(dt * lambda * 6.0) +
                         " exceeds the explicit stability bound 1");
  }
}

double diffusivity_perona(double u, double k) {
  check_k(k);
  const double r = u / k;
  return std::exp(-r * r);
}

double phi_potential(double u, double k) {
  check_k(k);
  const double r = u / k;
  return 0.5 * k * k * -std::expm1(-r * r);
}

Frame temporal_diffusivity(const MotionFrame& motion, double k_t, TemporalMode mode) {
  check_k(k_t);
  std::vector<double> c(motion.label.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (mode == TemporalMode::Gate) {
      c[i] = motion.label[i] ? 0.0 : 1.0;
    } else {
      const double r = static_cast<double>(motion.difference[i]) / 255.0 / k_t;
      c[i] = std::exp(-r * r);
    }
  }
  return Frame(motion.width, motion.height, std::move(c));
}

DiffusivityField coupled_diffusivity(const Sequence& current, std::span<const MotionFrame> motion,
                                     const DiffusionParams& p) {
  check_motion(current, motion);
  const Volume g(current);
  DiffusivityField field{g.w, g.h, g.len, {}};
  for (auto& c : field.coefficient) c.assign(g.v.size(), 0.0);

  for (std::size_t n = 0; n < g.len; ++n) {
    const Frame ct = temporal_diffusivity(motion[n], p.k_t, p.temporal_mode);
    for (std::size_t y = 0; y < g.h; ++y) {
      for (std::size_t x = 0; x < g.w; ++x) {
        const Stencil s = stencil(g, n, y, x);
        const double gs = g.v[s.self];
        field.coefficient[North][s.self] = diffusivity_perona(std::abs(g.v[s.north] - gs), p.k_s);
        field.coefficient[South][s.self] = diffusivity_perona(std::abs(g.v[s.south] - gs), p.k_s);
        field.coefficient[East][s.self] = diffusivity_perona(std::abs(g.v[s.east] - gs), p.k_s);
        field.coefficient[West][s.self] = diffusivity_perona(std::abs(g.v[s.west] - gs), p.k_s);
        const double c_t = ct.at(x, y);
        if (s.has_prev) field.coefficient[Prev][s.self] = c_t;
        if (s.has_next) field.coefficient[Next][s.self] = c_t;
      }
    }
  }
  return field;
}

Sequence coupled_step(const Sequence& current, const Sequence& noisy,
                      std::span<const MotionFrame> motion, const DiffusionParams& p) {
  if (!current.same_shape(noisy)) throw DimensionError("current and noisy sequences differ in shape");
  const DiffusivityField field = coupled_diffusivity(current, motion, p);
  const Volume g(current);
  const Volume f(noisy);
  const double fid_sign = p.fidelity_sign == FidelitySign::Restoring ? 1.0 : -1.0;
  const auto& c = field.coefficient;

  Volume out = g;
  for (std::size_t n = 0; n < g.len; ++n) {
    for (std::size_t y = 0; y < g.h; ++y) {
      for (std::size_t x = 0; x < g.w; ++x) {
        const Stencil s = stencil(g, n, y, x);
        const std::size_t i = s.self;
        const double gs = g.v[i];
        double flux = c[North][i] * (g.v[s.north] - gs) + c[South][i] * (g.v[s.south] - gs) +
                      c[East][i] * (g.v[s.east] - gs) + c[West][i] * (g.v[s.west] - gs);
        if (s.has_prev) flux += c[Prev][i] * (g.v[s.prev] - gs);
        if (s.has_next) flux += c[Next][i] * (g.v[s.next] - gs);
        const double fidelity = fid_sign * p.fidelity_weight * (f.v[i] - gs);
        out.v[i] = clamp01(gs + p.dt * (fidelity + p.lambda * flux));
      }
    }
  }
  return out.to_sequence();
}

Sequence denoise_coupled(const Sequence& noisy, const DiffusionParams& p,
                         const SigmaDeltaParams& sd) {
  p.validate();
  sd.validate();
  std::vector<MotionFrame> motion = sd_run(noisy, sd);
  Sequence g = noisy;
  for (int it = 0; it < p.iterations; ++it) {
    if (p.recompute_motion && it > 0) motion = sd_run(g, sd);
    g = coupled_step(g, noisy, motion, p);
  }
  return g;
}

Sequence denoise_diffusion3d(const Sequence& noisy, const DiffusionParams& p) {
  p.validate();
  const double tau = p.dt * p.lambda;
  Volume g(noisy);
  Volume next = g;
  for (int it = 0; it < p.iterations; ++it) {
    for (std::size_t n = 0; n < g.len; ++n) {
      for (std::size_t y = 0; y < g.h; ++y) {
        for (std::size_t x = 0; x < g.w; ++x) {
          const Stencil s = stencil(g, n, y, x);
          const double gs = g.v[s.self];
          // Central differences; replicated borders in space and time.
          const double gx = 0.5 * (g.v[s.east] - g.v[s.west]);
          const double gy = 0.5 * (g.v[s.south] - g.v[s.north]);
          const double gz = 0.5 * (g.v[s.next] - g.v[s.prev]);
          const double c = diffusivity_perona(std::sqrt(gx * gx + gy * gy + gz * gz), p.k_s);
          double sum = (g.v[s.north] - gs) + (g.v[s.south] - gs) + (g.v[s.east] - gs) +
                       (g.v[s.west] - gs);
          if (s.has_prev) sum += g.v[s.prev] - gs;
          if (s.has_next) sum += g.v[s.next] - gs;
          next.v[s.self] = clamp01(gs + tau * c * sum);
        }
      }
    }
    std::swap(g.v, next.v);
  }
  return g.to_sequence();
}

Sequence denoise_pm2d(const Sequence& noisy, const DiffusionParams& p, bool isotropic) {
  p.validate();
  const double tau = p.dt * p.lambda;
  Volume g(noisy);
  Volume next = g;
  auto edge = [&](double d) { return (isotropic ? 1.0 : diffusivity_perona(std::abs(d), p.k_s)) * d; };
  for (int it = 0; it < p.iterations; ++it) {
    for (std::size_t n = 0; n < g.len; ++n) {
      for (std::size_t y = 0; y < g.h; ++y) {
        for (std::size_t x = 0; x < g.w; ++x) {
          const Stencil s = stencil(g, n, y, x);
          const double gs = g.v[s.self];
          const double flux = edge(g.v[s.north] - gs) + edge(g.v[s.south] - gs) +
                              edge(g.v[s.east] - gs) + edge(g.v[s.west] - gs);
          next.v[s.self] = clamp01(gs + tau * flux);
        }
      }
    }
    std::swap(g.v, next.v);
  }
  return g.to_sequence();
}

Sequence denoise_median3d(const Sequence& noisy, int radius) {
  if (radius < 1) throw ParameterError("median radius must be >= 1");
  const Volume g(noisy);
  Volume out = g;
  const auto r = static_cast<std::ptrdiff_t>(radius);
  const auto w = static_cast<std::ptrdiff_t>(g.w);
  const auto h = static_cast<std::ptrdiff_t>(g.h);
  const auto len = static_cast<std::ptrdiff_t>(g.len);
  const std::size_t side = 2 * static_cast<std::size_t>(radius) + 1;
  std::vector<double> window;
  window.reserve(side * side * side);

  for (std::ptrdiff_t n = 0; n < len; ++n) {
    for (std::ptrdiff_t y = 0; y < h; ++y) {
      for (std::ptrdiff_t x = 0; x < w; ++x) {
        window.clear();
        for (std::ptrdiff_t dn = -r; dn <= r; ++dn) {
          const auto nn = static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(n + dn, 0, len - 1));
          for (std::ptrdiff_t dy = -r; dy <= r; ++dy) {
            const auto yy = static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(y + dy, 0, h - 1));
            for (std::ptrdiff_t dx = -r; dx <= r; ++dx) {
              const auto xx = static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(x + dx, 0, w - 1));
              window.push_back(g.v[g.index(nn, yy, xx)]);
            }
          }
        }
        const auto mid = window.begin() + static_cast<std::ptrdiff_t>(window.size() / 2);
        std::nth_element(window.begin(), mid, window.end());
        out.v[g.index(static_cast<std::size_t>(n), static_cast<std::size_t>(y),
                      static_cast<std::size_t>(x))] = *mid;
      }
    }
  }
  return out.to_sequence();
}

}  // namespace stdenoise
