// Classical RK4 steps for the two-level response driven by sampled fields.
// Fields are linearly interpolated at the half-step stage times.
#pragma once

#include "maxbloch/types.hpp"

namespace maxbloch {

// Pump stage states of one RK4 step, exposed so the probe step can evaluate
// its stage derivatives on the same frozen pump trajectory (the split is then
// exactly the classical RK4 of the joint pump+probe system).
struct PumpStages {
  AtomState s1, s2, s3, s4;
};

struct PumpDeriv {
  cplx dp0;
  double dd0;
};

struct ProbeDeriv {
  cplx dp1, dpm1, dd1;
};

// dp0/dt = Omega0*D0 - gamma2*p0
// dD0/dt = -Re(Omega0*conj(p0)) - gamma1*(D0 - d_eq)
inline PumpDeriv pump_rhs(const AtomState& s, cplx omega0, const MediumParams& m) {
  PumpDeriv d;
  d.dp0 = omega0 * s.d0 - m.gamma2 * s.p0;
  d.dd0 = -(omega0.real() * s.p0.real() + omega0.imag() * s.p0.imag()) -
          m.gamma1 * (s.d0 - m.d_eq);
  return d;
}

// dp1/dt    = Omega1*D0 + Omega0*D1 - gamma2*p1
// dD1/dt    = -(Omega1*conj(p0) + conj(Omega0)*p1 + Omega0*conj(p_-1))/2 - gamma1*D1
// dp_-1*/dt = conj(Omega0)*D1 - gamma2*p_-1*
inline ProbeDeriv probe_rhs(const ProbeMediumState& q, const AtomState& s, cplx omega0,
                            cplx omega1, const MediumParams& m) {
  ProbeDeriv d;
  d.dp1 = omega1 * s.d0 + omega0 * q.d1 - m.gamma2 * q.p1;
  d.dd1 = -0.5 * (omega1 * std::conj(s.p0) + std::conj(omega0) * q.p1 +
                  omega0 * q.pm1_conj) -
          m.gamma1 * q.d1;
  d.dpm1 = std::conj(omega0) * q.d1 - m.gamma2 * q.pm1_conj;
  return d;
}

// One RK4 step of (p0, D0) over [tau, tau+dtau] with field endpoint samples
// omega_a, omega_b.  Optionally records the stage states for a matching probe
// step.
inline AtomState step_bloch(const AtomState& state, cplx omega_a, cplx omega_b,
                            const MediumParams& m, double dtau,
                            PumpStages* stages = nullptr) {
  const cplx omega_m = 0.5 * (omega_a + omega_b);
  const double h2 = 0.5 * dtau;

  const PumpDeriv k1 = pump_rhs(state, omega_a, m);
  const AtomState y2{state.p0 + h2 * k1.dp0, state.d0 + h2 * k1.dd0};
  const PumpDeriv k2 = pump_rhs(y2, omega_m, m);
  const AtomState y3{state.p0 + h2 * k2.dp0, state.d0 + h2 * k2.dd0};
  const PumpDeriv k3 = pump_rhs(y3, omega_m, m);
  const AtomState y4{state.p0 + dtau * k3.dp0, state.d0 + dtau * k3.dd0};
  const PumpDeriv k4 = pump_rhs(y4, omega_b, m);

  if (stages) *stages = PumpStages{state, y2, y3, y4};

  const double w = dtau / 6.0;
  return AtomState{
      state.p0 + w * (k1.dp0 + 2.0 * k2.dp0 + 2.0 * k3.dp0 + k4.dp0),
      state.d0 + w * (k1.dd0 + 2.0 * k2.dd0 + 2.0 * k3.dd0 + k4.dd0)};
}

// One RK4 step of the linear probe variables (p1, D1, p_-1*) driven by the
// pump stage trajectory of the same step.
inline ProbeMediumState step_bloch_probe(const ProbeMediumState& q,
                                         const PumpStages& pump, cplx omega0_a,
                                         cplx omega0_b, cplx omega1_a, cplx omega1_b,
                                         const MediumParams& m, double dtau) {
  const cplx w0m = 0.5 * (omega0_a + omega0_b);
  const cplx w1m = 0.5 * (omega1_a + omega1_b);
  const double h2 = 0.5 * dtau;

  const ProbeDeriv l1 = probe_rhs(q, pump.s1, omega0_a, omega1_a, m);
  const ProbeMediumState q2{q.p1 + h2 * l1.dp1, q.pm1_conj + h2 * l1.dpm1,
                            q.d1 + h2 * l1.dd1};
  const ProbeDeriv l2 = probe_rhs(q2, pump.s2, w0m, w1m, m);
  const ProbeMediumState q3{q.p1 + h2 * l2.dp1, q.pm1_conj + h2 * l2.dpm1,
                            q.d1 + h2 * l2.dd1};
  const ProbeDeriv l3 = probe_rhs(q3, pump.s3, w0m, w1m, m);
  const ProbeMediumState q4{q.p1 + dtau * l3.dp1, q.pm1_conj + dtau * l3.dpm1,
                            q.d1 + dtau * l3.dd1};
  const ProbeDeriv l4 = probe_rhs(q4, pump.s4, omega0_b, omega1_b, m);

  const double w = dtau / 6.0;
  return ProbeMediumState{
      q.p1 + w * (l1.dp1 + 2.0 * l2.dp1 + 2.0 * l3.dp1 + l4.dp1),
      q.pm1_conj + w * (l1.dpm1 + 2.0 * l2.dpm1 + 2.0 * l3.dpm1 + l4.dpm1),
      q.d1 + w * (l1.dd1 + 2.0 * l2.dd1 + 2.0 * l3.dd1 + l4.dd1)};
}

}  // namespace maxbloch
