#include "maxbloch/pulse.hpp"

#include <cmath>
#include <string>

#include "maxbloch/physics.hpp"
#include "maxbloch/rng.hpp"

namespace maxbloch {

namespace {

// Rotator recurrences drift by ~eps per step; refresh the exact phase often
// enough to keep the accumulated error below 1e-13.
constexpr int kResyncStride = 256;

}  // namespace

SynthesisRecord synthesize_pump(const PumpSpec& spec, const GridSpec& grid) {
  require_valid(spec, "pump");
  require_valid(grid, "grid");

  const int n = grid.n_t;
  const double dt = grid.dt();
  const double w_max = std::abs(spec.delta0) + spec.n_modes * spec.delta_mode;
  if (w_max > 0.0 && dt * w_max > kTwoPi / 10.0) {
    const int k_lim = (spec.n_modes * spec.delta_mode >= std::abs(spec.delta0))
                          ? spec.n_modes
                          : 0;
    throw ConfigError(
        "grid too coarse for the synthesized spectrum: mode k=" +
        std::to_string(k_lim) + " beats at " + std::to_string(angular_to_ghz(w_max)) +
        " GHz; need dt <= " + std::to_string(s_to_ns(kTwoPi / (10.0 * w_max))) +
        " ns for 10 samples per period (have " + std::to_string(s_to_ns(dt)) + " ns)");
  }

  SynthesisRecord rec;
  rec.spec = spec;
  rec.phases = (spec.phase_mode == PhaseMode::kZero)
                   ? std::vector<double>(2 * spec.n_modes + 1, 0.0)
                   : draw_phases(spec.seed, spec.n_modes);
  rec.envelope.t_start = 0.0;
  rec.envelope.dt = dt;
  rec.envelope.samples.assign(n, cplx{0.0, 0.0});

  auto& samples = rec.envelope.samples;
  for (int k = -spec.n_modes; k <= spec.n_modes; ++k) {
    const double w_k = k * spec.delta_mode;
    const double x = (spec.gamma_pump > 0.0) ? w_k / spec.gamma_pump : 0.0;
    const double weight = spec.omega_00 * std::exp(-4.0 * std::numbers::ln2 * x * x);
    const double w_tot = spec.delta0 + w_k;
    const double alpha = rec.phases[k + spec.n_modes];

    const cplx rot = std::polar(1.0, w_tot * dt);
    cplx cur = std::polar(weight, alpha);
    for (int i = 0; i < n; ++i) {
      samples[i] += cur;
      if ((i + 1) % kResyncStride == 0) {
        cur = std::polar(weight, w_tot * (dt * (i + 1)) + alpha);
      } else {
        cur *= rot;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    samples[i] *= envelope_c(rec.envelope.time(i), spec.t0, spec.a, spec.b);
  }
  return rec;
}

ComplexEnvelope synthesize_probe(const SynthesisRecord& pump, const ProbeSpec& probe,
                                 const GridSpec& grid) {
  require_valid(probe, "probe");
  if (!(probe.tau0 < grid.t_window)) {
    throw ConfigError("probe tau0 must be smaller than the time window");
  }

  const auto& src = pump.envelope.samples;
  const int n = static_cast<int>(src.size());
  const double dt = pump.envelope.dt;

  double x = probe.tau0 / dt;
  // Snap near-integer delays so an on-grid tau0 is an exact sample shift.
  const double xr = std::round(x);
  if (std::abs(x - xr) < 1e-9) x = xr;
  const int shift = static_cast<int>(std::floor(x));
  const double frac = x - shift;

  ComplexEnvelope out;
  out.t_start = pump.envelope.t_start;
  out.dt = dt;
  out.samples.assign(n, cplx{0.0, 0.0});
  const double g = probe.g_ratio;
  for (int i = 0; i < n; ++i) {
    const int j = i - shift;
    cplx v{0.0, 0.0};
    if (frac == 0.0) {
      if (j >= 0) v = src[j];
    } else {
      const cplx hi = (j >= 0) ? src[j] : cplx{0.0, 0.0};
      const cplx lo = (j - 1 >= 0) ? src[j - 1] : cplx{0.0, 0.0};
      v = (1.0 - frac) * hi + frac * lo;
    }
    out.samples[i] = v / g;
  }
  return out;
}

}  // namespace maxbloch
