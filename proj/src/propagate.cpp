#include "maxbloch/propagate.hpp"

#include <cmath>
#include <span>
#include <string>

#include "maxbloch/bloch.hpp"

namespace maxbloch {

namespace {

constexpr double kStabilityBudget = 0.1;   // dtau * max(|Omega|, gamma1, gamma2)
constexpr double kSliceBudget = 0.05;      // max per-slice relative field change

double max_abs(std::span<const cplx> v) {
  double m = 0.0;
  for (const cplx& x : v) m = std::max(m, std::abs(x));
  return m;
}

// Sweep the Bloch state over tau at one slice, recording the polarization
// history P[i] = p0(tau_i) (and Q[i] = p1(tau_i) when a probe is present).
// Returns D0 at the window end and tracks the worst deviation of
// |p0|^2 + D0^2 from d_eq^2 (conserved when gamma1 = gamma2 = 0).
double sweep_slice(std::span<const cplx> field_pump, std::span<cplx> pol_pump,
                   std::span<const cplx> field_probe, std::span<cplx> pol_probe,
                   const MediumParams& med, double t_start, double dtau, double z_cm,
                   double& norm_dev) {
  const int n = static_cast<int>(field_pump.size());
  const bool with_probe = !field_probe.empty();
  const double norm0 = med.d_eq * med.d_eq;

  AtomState atom{cplx{0.0, 0.0}, med.d_eq};
  ProbeMediumState probe{};
  PumpStages stages;

  for (int i = 0; i < n - 1; ++i) {
    pol_pump[i] = atom.p0;
    if (with_probe) pol_probe[i] = probe.p1;

    const AtomState next = step_bloch(atom, field_pump[i], field_pump[i + 1], med, dtau,
                                      with_probe ? &stages : nullptr);
    if (with_probe) {
      probe = step_bloch_probe(probe, stages, field_pump[i], field_pump[i + 1],
                               field_probe[i], field_probe[i + 1], med, dtau);
      if (!std::isfinite(probe.d1.real())) {
        throw IntegrationError("non-finite probe medium state", z_cm,
                               t_start + (i + 1) * dtau);
      }
    }
    atom = next;
    if (!std::isfinite(atom.d0)) {
      throw IntegrationError("non-finite medium state", z_cm, t_start + (i + 1) * dtau);
    }
    norm_dev = std::max(norm_dev,
                        std::abs(std::norm(atom.p0) + atom.d0 * atom.d0 - norm0));
  }
  pol_pump[n - 1] = atom.p0;
  if (with_probe) pol_probe[n - 1] = probe.p1;
  return atom.d0;
}

void check_on_grid(const ComplexEnvelope& env, const GridSpec& grid, const char* name) {
  if (env.size() != grid.n_t) {
    throw ConfigError(std::string(name) + ": envelope length does not match grid n_t");
  }
  const double dt = grid.dt();
  if (std::abs(env.dt - dt) > 1e-12 * dt) {
    throw ConfigError(std::string(name) + ": envelope spacing does not match grid");
  }
}

PropagationResult propagate_core(const ComplexEnvelope& pump_in,
                                 const ComplexEnvelope* probe_in,
                                 const MediumParams& medium, const GridSpec& grid,
                                 const PropagationOptions& opts) {
  require_valid(medium, "medium");
  require_valid(grid, "grid");
  check_on_grid(pump_in, grid, "pump input");
  if (probe_in) check_on_grid(*probe_in, grid, "probe input");

  const int n = grid.n_t;
  const int nz = grid.n_z;
  const double dt = grid.dt();
  const double dz = grid.dz(medium.length);
  const double wc = medium.effective_omega_c();

  {
    double fast = std::max(medium.gamma1, medium.gamma2);
    fast = std::max(fast, max_abs(pump_in.samples));
    if (probe_in) fast = std::max(fast, max_abs(probe_in->samples));
    if (dt * fast > kStabilityBudget) {
      throw ConfigError("time step too coarse: dt*max(|Omega|,gamma) = " +
                        std::to_string(dt * fast) + " exceeds " +
                        std::to_string(kStabilityBudget) + "; increase n_t");
    }
  }

  const double kappa_pump = dz * wc * wc / kSpeedOfLight;
  const double kappa_probe = kappa_pump / std::cos(grid.phi);

  PropagationResult res;
  res.pump_in = pump_in;
  if (probe_in) res.probe_in = *probe_in;
  res.z.resize(nz);
  res.area.resize(nz);
  res.d0_final.resize(nz);
  res.energy.resize(nz);

  std::vector<cplx> field_p = pump_in.samples;
  std::vector<cplx> field_q = probe_in ? probe_in->samples : std::vector<cplx>{};
  std::vector<cplx> pred_p(n), pred_q(probe_in ? n : 0);
  std::vector<cplx> pol_p(n), pol_p2(n);
  std::vector<cplx> pol_q(probe_in ? n : 0), pol_q2(probe_in ? n : 0);

  const int hist_stride =
      opts.record_history ? std::max(1, (nz - 1) / std::max(1, opts.history_slices - 1))
                          : 0;
  auto capture = [&](int j) {
    if (!opts.record_history) return;
    if (j % hist_stride != 0 && j != nz - 1) return;
    res.history_z.push_back(j * dz);
    res.history_pump.push_back(
        ComplexEnvelope{pump_in.t_start, dt, field_p});
    if (probe_in) {
      res.history_probe.push_back(ComplexEnvelope{pump_in.t_start, dt, field_q});
    }
  };

  for (int j = 0; j < nz; ++j) {
    const double z = j * dz;
    res.z[j] = z;
    res.d0_final[j] = sweep_slice(field_p, pol_p, field_q, pol_q, medium,
                                  pump_in.t_start, dt, z, res.bloch_norm_max_dev);
    cplx area_acc{0.0, 0.0};
    double energy_acc = 0.0;
    for (const cplx& v : field_p) {
      area_acc += v;
      energy_acc += std::norm(v);
    }
    res.area[j] = std::abs(area_acc) * dt;
    res.energy[j] = energy_acc * dt;
    capture(j);
    if (j == nz - 1) break;

    // Predictor: Euler step to z+dz, re-sweep, then trapezoidal correction.
    for (int i = 0; i < n; ++i) pred_p[i] = field_p[i] - kappa_pump * pol_p[i];
    if (probe_in) {
      for (int i = 0; i < n; ++i) pred_q[i] = field_q[i] - kappa_probe * pol_q[i];
    }
    sweep_slice(pred_p, pol_p2, pred_q, pol_q2, medium, pump_in.t_start, dt, z + dz,
                res.bloch_norm_max_dev);

    double ratio = 0.0;
    {
      const double scale = max_abs(field_p);
      double max_change = 0.0;
      for (int i = 0; i < n; ++i) {
        const cplx next = field_p[i] - kappa_pump * 0.5 * (pol_p[i] + pol_p2[i]);
        max_change = std::max(max_change, std::abs(next - field_p[i]));
        field_p[i] = next;
      }
      if (scale > 0.0) ratio = max_change / scale;
    }
    if (probe_in) {
      const double scale = max_abs(field_q);
      double max_change = 0.0;
      for (int i = 0; i < n; ++i) {
        const cplx next = field_q[i] - kappa_probe * 0.5 * (pol_q[i] + pol_q2[i]);
        max_change = std::max(max_change, std::abs(next - field_q[i]));
        field_q[i] = next;
      }
      if (scale > 0.0) ratio = std::max(ratio, max_change / scale);
    }
    if (ratio > kSliceBudget) {
      const int suggested =
          static_cast<int>(std::ceil((nz - 1) * ratio / kSliceBudget)) + 1;
      throw GridBudgetError(
          "per-slice field change " + std::to_string(100.0 * ratio) + "% at z = " +
              std::to_string(z) + " cm exceeds " +
              std::to_string(100.0 * kSliceBudget) + "%; increase n_z to about " +
              std::to_string(suggested),
          suggested);
    }
  }

  res.pump_out = ComplexEnvelope{pump_in.t_start, dt, std::move(field_p)};
  if (probe_in) {
    res.probe_out = ComplexEnvelope{pump_in.t_start, dt, std::move(field_q)};
  }
  return res;
}

}  // namespace

PropagationResult propagate_pump(const ComplexEnvelope& input, const MediumParams& medium,
                                 const GridSpec& grid, const PropagationOptions& opts) {
  return propagate_core(input, nullptr, medium, grid, opts);
}

PropagationResult propagate_pair(const ComplexEnvelope& pump_in,
                                 const ComplexEnvelope& probe_in,
                                 const MediumParams& medium, const GridSpec& grid,
                                 const PropagationOptions& opts) {
  return propagate_core(pump_in, &probe_in, medium, grid, opts);
}

}  // namespace maxbloch
