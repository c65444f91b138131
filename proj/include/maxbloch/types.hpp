#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "maxbloch/units.hpp"

namespace maxbloch {

using cplx = std::complex<double>;

// Configuration / input validation problem.  CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical failure during integration.  CLI maps this to exit code 1.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& msg, double z_cm, double tau_s)
      : std::runtime_error(msg), z_cm(z_cm), tau_s(tau_s) {}
  double z_cm;
  double tau_s;
};

// Dipole/density/transition-frequency microscopic parameters from which the
// field-matter coupling rate can be computed.
struct MicroParams {
  double dipole = 0.0;   // esu*cm
  double density = 0.0;  // cm^-3
  double omega0 = 0.0;   // rad/s
};

struct MediumParams {
  double omega_c = 0.0;   // field-matter coupling (cooperative) rate, rad/s
  double gamma1 = 0.0;    // population relaxation, rad/s
  double gamma2 = 0.0;    // polarization relaxation, rad/s
  double d_eq = 1.0;      // equilibrium population difference; 1 = ground state
  double length = 0.0;    // medium length, cm
  std::optional<MicroParams> micro;

  // Coupling rate actually used: a directly specified omega_c wins over the
  // microscopic parameters.
  double effective_omega_c() const;
};

struct GridSpec {
  double t_window = 0.0;  // retarded-time span, s
  int n_t = 0;            // time samples
  int n_z = 0;            // z slices (including both ends)
  double phi = 0.0;       // probe crossing angle, rad

  double dt() const { return t_window / (n_t - 1); }
  double dz(double length) const { return length / (n_z - 1); }
};

enum class PhaseMode : std::uint8_t {
  kRandom,  // alpha_k i.i.d. uniform on [0, 2pi) from the seeded generator
  kZero,    // all alpha_k forced to 0 (test/override mode)
};

struct PumpSpec {
  double omega_00 = 0.0;    // peak single-mode Rabi amplitude, rad/s
  double gamma_pump = 0.0;  // Gaussian FWHM of mode weights, rad/s
  double delta_mode = 0.0;  // intermode spacing, rad/s
  int n_modes = 0;          // modes k = -N..N
  double delta0 = 0.0;      // pump detuning from resonance, rad/s
  double t0 = 0.0;          // envelope onset parameter, s
  double a = 0.0;           // envelope decay time, s
  double b = 0.0;           // envelope rise time, s
  std::uint64_t seed = 0;   // phase stream seed
  PhaseMode phase_mode = PhaseMode::kRandom;
};

struct ProbeSpec {
  double g_ratio = 1.0;  // probe amplitude divisor, dimensionless
  double tau0 = 0.0;     // probe delay, s
};

// Uniformly sampled complex slowly-varying amplitude in the rotating frame at
// the atomic resonance: a spectral component exp(+i*delta*t) sits at physical
// detuning delta (blue positive).
struct ComplexEnvelope {
  double t_start = 0.0;  // s
  double dt = 0.0;       // s
  std::vector<cplx> samples;

  int size() const { return static_cast<int>(samples.size()); }
  double time(int i) const { return t_start + i * dt; }
};

struct AtomState {
  cplx p0{0.0, 0.0};  // complex polarization
  double d0 = 1.0;    // population difference
};

// First-order probe medium variables; D_{-1} = conj(D_1) is implicit and never
// stored.
struct ProbeMediumState {
  cplx p1{0.0, 0.0};
  cplx pm1_conj{0.0, 0.0};  // the variable conj(p_{-1})
  cplx d1{0.0, 0.0};
};

std::vector<std::string> validation_issues(const MediumParams& m);
std::vector<std::string> validation_issues(const GridSpec& g);
std::vector<std::string> validation_issues(const PumpSpec& p);
std::vector<std::string> validation_issues(const ProbeSpec& p);

// Throws ConfigError listing every issue, prefixed with `what`.
template <typename T>
void require_valid(const T& value, const char* what) {
  const auto issues = validation_issues(value);
  if (issues.empty()) return;
  std::string msg = std::string(what) + ":";
  for (const auto& s : issues) msg += "\n  " + s;
  throw ConfigError(msg);
}

}  // namespace maxbloch
