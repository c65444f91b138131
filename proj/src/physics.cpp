#include "maxbloch/physics.hpp"

#include <cmath>
#include <numbers>

namespace maxbloch {

double cooperative_frequency(double dipole, double density, double omega0) {
  if (dipole < 0.0 || density < 0.0 || omega0 < 0.0) {
    throw std::domain_error("cooperative_frequency: inputs must be >= 0");
  }
  return std::sqrt(2.0 * std::numbers::pi * dipole * dipole * omega0 * density / kHbar);
}

double envelope_c(double t, double t0, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::domain_error("envelope_c: requires a > 0 and b > 0");
  }
  if (t < 0.0) return 0.0;
  const double u = t - t0;
  return (2.0 / std::numbers::pi) * std::exp(-u / a) *
         (std::numbers::pi / 2.0 + std::atan(u / b));
}

double MediumParams::effective_omega_c() const {
  if (omega_c > 0.0 || !micro) return omega_c;
  return cooperative_frequency(micro->dipole, micro->density, micro->omega0);
}

std::vector<std::string> validation_issues(const MediumParams& m) {
  std::vector<std::string> out;
  if (m.gamma1 < 0.0) out.push_back("gamma1 must be >= 0");
  if (m.gamma2 < 0.0) out.push_back("gamma2 must be >= 0");
  if (m.omega_c < 0.0) out.push_back("omega_c must be >= 0");
  if (!(m.length > 0.0)) out.push_back("length must be > 0");
  if (m.d_eq < -1.0 || m.d_eq > 1.0) out.push_back("d_eq must lie in [-1, 1]");
  if (m.micro) {
    if (m.micro->dipole < 0.0) out.push_back("dipole must be >= 0");
    if (m.micro->density < 0.0) out.push_back("density must be >= 0");
    if (m.micro->omega0 < 0.0) out.push_back("omega0 must be >= 0");
  }
  return out;
}

std::vector<std::string> validation_issues(const GridSpec& g) {
  std::vector<std::string> out;
  if (g.n_t < 16) out.push_back("n_t must be >= 16");
  if (g.n_z < 2) out.push_back("n_z must be >= 2");
  if (!(g.t_window > 0.0)) out.push_back("t_window must be > 0");
  if (g.phi < 0.0 || g.phi >= std::numbers::pi / 2.0)
    out.push_back("phi must lie in [0, pi/2)");
  return out;
}

std::vector<std::string> validation_issues(const PumpSpec& p) {
  std::vector<std::string> out;
  if (p.n_modes < 0) out.push_back("n_modes must be >= 0");
  if (p.n_modes > 0 && !(p.gamma_pump > 0.0))
    out.push_back("gamma_pump must be > 0 when n_modes > 0");
  if (!(p.a > 0.0)) out.push_back("envelope parameter a must be > 0");
  if (!(p.b > 0.0)) out.push_back("envelope parameter b must be > 0");
  if (p.omega_00 < 0.0) out.push_back("omega_00 must be >= 0");
  if (p.delta_mode < 0.0) out.push_back("delta_mode must be >= 0");
  // The envelope is truncated to 0 for t < 0; keeping the onset at least 5b
  // into the window bounds the jump at t = 0 (its value is reported in the
  // run manifest).
  if (p.b > 0.0 && p.t0 < 5.0 * p.b) out.push_back("t0 must be >= 5*b");
  return out;
}

std::vector<std::string> validation_issues(const ProbeSpec& p) {
  std::vector<std::string> out;
  if (!(p.g_ratio >= 1.0)) out.push_back("g_ratio must be >= 1");
  if (p.tau0 < 0.0) out.push_back("tau0 must be >= 0");
  return out;
}

}  // namespace maxbloch
