#pragma once

#include "maxbloch/types.hpp"

namespace maxbloch {

struct SynthesisRecord {
  PumpSpec spec;
  std::vector<double> phases;  // alpha_k for k = -N..N
  ComplexEnvelope envelope;
};

// Polychromatic quasistochastic pump
//   Omega0(t) = C(t) * sum_k Omega_0k * exp(i((delta0 + k*dmode)*t + alpha_k))
// with Gaussian mode weights Omega_0k = omega_00 * exp(-4 ln2 (k*dmode/gamma_pump)^2)
// on the grid's time axis starting at t = 0.  The grid must resolve the
// fastest envelope beat with at least 10 samples per period; a too-coarse grid
// raises ConfigError naming the limiting mode.
SynthesisRecord synthesize_pump(const PumpSpec& spec, const GridSpec& grid);

// Probe copy Omega1(t) = Omega0(t - tau0) / g with linear interpolation for
// off-grid tau0; samples before t_start + tau0 are zero.  Requires
// tau0 < grid.t_window.
ComplexEnvelope synthesize_probe(const SynthesisRecord& pump, const ProbeSpec& probe,
                                 const GridSpec& grid);

}  // namespace maxbloch
