#pragma once

#include "maxbloch/types.hpp"

namespace maxbloch {

struct SpectrumTable {
  std::vector<double> delta;      // detuning from resonance, rad/s, ascending
  std::vector<cplx> amp;          // complex amplitudes (empty after smoothing)
  std::vector<double> intensity;  // |amp|^2

  int size() const { return static_cast<int>(delta.size()); }
};

struct TransmissionTable {
  std::vector<double> delta;    // rad/s
  std::vector<double> k_ratio;  // NaN where invalid
  std::vector<std::uint8_t> valid;

  int size() const { return static_cast<int>(delta.size()); }
};

// Discrete spectrum on the natural frequency grid of the window (spacing
// 2pi/(n*dt), no zero padding):
//   amp(delta) = dt * sum_i Omega(t_i) * exp(+i*delta*t_i)
// so an envelope component exp(+i*delta*t) registers at detuning delta
// (blue = positive).  Runs the frequency bins in parallel; each bin is an
// independent serial sum, so results do not depend on the thread count.
SpectrumTable spectrum(const ComplexEnvelope& env);

// Exact inverse of `spectrum` for a table on the natural grid; used by tests
// and round-trip checks.
ComplexEnvelope inverse_spectrum(const SpectrumTable& table, double t_start);

// Intensity convolved with a unit-mass Gaussian of the given FWHM (discrete
// normalization, kernel truncated at 8 sigma).  amp is left empty: the result
// is intensity-only.  fwhm = 0 returns the intensity unchanged.
SpectrumTable instrument_convolve(const SpectrumTable& table, double fwhm);

// K(delta) = j_out/j_in per bin; bins where j_in < floor*max(j_in) are flagged
// invalid and carry NaN.  The tables must share the same delta grid.
TransmissionTable transmission(const SpectrumTable& j_in, const SpectrumTable& j_out,
                               double floor);

// |sum_i Omega(t_i) * dt| — magnitude of the resonant (delta = 0) spectral
// component, same quadrature as `spectrum`.
double pulse_area(const ComplexEnvelope& env);

// Frequency-domain transfer factor of the medium linearized at D0 = d_eq:
//   H(delta) = exp(-(omega_c^2 L / c) * d_eq / (gamma2 + i*delta))
// under the exp(+i*delta*t) convention.  |H|^2 is the Beer-law intensity
// factor with resonant absorption coefficient alpha0 = 2 omega_c^2 d_eq /
// (c gamma2).  Raises std::domain_error at the gamma2 = 0, delta = 0 pole.
cplx linear_transfer(double delta, const MediumParams& medium);

}  // namespace maxbloch
