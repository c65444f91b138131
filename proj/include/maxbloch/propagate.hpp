#pragma once

#include "maxbloch/types.hpp"

namespace maxbloch {

// Grid budget violation: the z step is too coarse for the medium response.
class GridBudgetError : public ConfigError {
 public:
  GridBudgetError(const std::string& msg, int suggested_n_z)
      : ConfigError(msg), suggested_n_z(suggested_n_z) {}
  int suggested_n_z;
};

struct PropagationOptions {
  bool record_history = false;
  int history_slices = 65;  // max z slices kept when recording history
};

struct PropagationResult {
  ComplexEnvelope pump_in, pump_out;
  std::optional<ComplexEnvelope> probe_in, probe_out;

  std::vector<double> z;         // cm, n_z entries
  std::vector<double> area;      // pulse area per slice, rad
  std::vector<double> d0_final;  // D0 at the window end per slice
  std::vector<double> energy;    // integral |Omega0|^2 dtau per slice, rad^2/s

  // Worst deviation of |p0|^2 + D0^2 from d_eq^2 over the whole (tau, z)
  // sweep; an exact invariant of the pump Bloch equations when gamma1 =
  // gamma2 = 0.
  double bloch_norm_max_dev = 0.0;

  // Present when PropagationOptions::record_history is set.
  std::vector<double> history_z;
  std::vector<ComplexEnvelope> history_pump;
  std::vector<ComplexEnvelope> history_probe;  // pair runs only
};

// March Eq-of-motion of the strong field through the medium in retarded time
// tau = t - z/c, where the transport equation becomes d(Omega0)/dz =
// -(omega_c^2/c) p0 per tau sample.  Slices advance with a second-order
// predictor-corrector (two Bloch sweeps per step, trapezoidal polarization
// average).  Atoms start unpolarized at equilibrium: p0 = 0, D0 = d_eq.
PropagationResult propagate_pump(const ComplexEnvelope& input, const MediumParams& medium,
                                 const GridSpec& grid, const PropagationOptions& opts = {});

// Same march applied jointly to the pump and the linearized probe.  The probe
// advances by d(Omega1)/dz = -(omega_c^2/(c cos phi)) p1 in the pump's
// retarded frame (the residual (1 - cos phi) drift term is dropped; at
// phi ~ 1 deg the walk-off is far below one tau sample).  Probe medium
// variables start at zero.  The pump arithmetic is identical to
// propagate_pump, so a pair run reproduces the pump-only outputs bit for bit.
PropagationResult propagate_pair(const ComplexEnvelope& pump_in,
                                 const ComplexEnvelope& probe_in,
                                 const MediumParams& medium, const GridSpec& grid,
                                 const PropagationOptions& opts = {});

}  // namespace maxbloch
