// Test-only oracles, independent of the implementation paths they check:
//  - naive_dft: per-sample cexp discrete transform (no recurrences) for the
//    spectrum kernel;
//  - fourier_quadrature: Simpson quadrature of the continuous transform for
//    analytic pulses;
//  - Rkf45: adaptive Runge-Kutta-Fehlberg dense solve of the joint
//    pump+probe equations written out in plain complex arithmetic.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "maxbloch/types.hpp"

namespace oracles {

using maxbloch::cplx;

// amp(delta) = dt * sum_i s_i exp(-i delta t_i) — the projection onto the
// exp(+i delta t) component — evaluated term by term with cexp.
inline cplx naive_dft_bin(const maxbloch::ComplexEnvelope& env, double delta) {
  cplx acc{0.0, 0.0};
  for (int i = 0; i < env.size(); ++i) {
    acc += env.samples[i] * std::exp(cplx{0.0, -delta * env.time(i)});
  }
  return acc * env.dt;
}

// Simpson quadrature of integral f(t) exp(+i delta t) dt over [t0, t1].
inline cplx fourier_quadrature(const std::function<double(double)>& f, double t0,
                               double t1, double delta, int panels) {
  const int n = 2 * panels;
  const double h = (t1 - t0) / n;
  cplx acc{0.0, 0.0};
  for (int i = 0; i <= n; ++i) {
    const double t = t0 + i * h;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    acc += w * f(t) * std::exp(cplx{0.0, delta * t});
  }
  return acc * (h / 3.0);
}

// Joint pump+probe state for the dense ODE oracle.
struct JointState {
  cplx p0{0.0, 0.0};
  double d0 = 1.0;
  cplx p1{0.0, 0.0};
  cplx d1{0.0, 0.0};
  cplx pm1{0.0, 0.0};  // conj(p_{-1})

  JointState operator+(const JointState& o) const {
    return {p0 + o.p0, d0 + o.d0, p1 + o.p1, d1 + o.d1, pm1 + o.pm1};
  }
  JointState operator*(double s) const {
    return {s * p0, s * d0, s * p1, s * d1, s * pm1};
  }
  double max_abs() const {
    double m = std::abs(p0);
    m = std::max(m, std::abs(d0));
    m = std::max(m, std::abs(p1));
    m = std::max(m, std::abs(d1));
    return std::max(m, std::abs(pm1));
  }
};

inline JointState joint_rhs(const JointState& y, cplx w0, cplx w1, double g1, double g2,
                            double d_eq) {
  JointState d;
  d.p0 = w0 * y.d0 - g2 * y.p0;
  d.d0 = -0.5 * (w0 * std::conj(y.p0) + std::conj(w0) * y.p0).real() -
         g1 * (y.d0 - d_eq);
  d.p1 = w1 * y.d0 + w0 * y.d1 - g2 * y.p1;
  d.d1 = -0.5 * (w1 * std::conj(y.p0) + std::conj(w0) * y.p1 + w0 * y.pm1) - g1 * y.d1;
  d.pm1 = std::conj(w0) * y.d1 - g2 * y.pm1;
  return d;
}

// Adaptive RKF45 over [0, t_end] with constant fields; tolerance on the
// embedded 4th/5th-order difference.
inline JointState rkf45_solve(JointState y, cplx w0, cplx w1, double g1, double g2,
                              double d_eq, double t_end, double tol = 1e-12) {
  auto f = [&](const JointState& s) { return joint_rhs(s, w0, w1, g1, g2, d_eq); };
  double t = 0.0;
  double h = t_end / 64.0;
  while (t < t_end) {
    if (t + h > t_end) h = t_end - t;
    const JointState k1 = f(y);
    const JointState k2 = f(y + k1 * (h / 4.0));
    const JointState k3 = f(y + k1 * (3.0 * h / 32.0) + k2 * (9.0 * h / 32.0));
    const JointState k4 = f(y + k1 * (1932.0 * h / 2197.0) + k2 * (-7200.0 * h / 2197.0) +
                            k3 * (7296.0 * h / 2197.0));
    const JointState k5 = f(y + k1 * (439.0 * h / 216.0) + k2 * (-8.0 * h) +
                            k3 * (3680.0 * h / 513.0) + k4 * (-845.0 * h / 4104.0));
    const JointState k6 = f(y + k1 * (-8.0 * h / 27.0) + k2 * (2.0 * h) +
                            k3 * (-3544.0 * h / 2565.0) + k4 * (1859.0 * h / 4104.0) +
                            k5 * (-11.0 * h / 40.0));
    const JointState y5 = y + k1 * (16.0 * h / 135.0) + k3 * (6656.0 * h / 12825.0) +
                          k4 * (28561.0 * h / 56430.0) + k5 * (-9.0 * h / 50.0) +
                          k6 * (2.0 * h / 55.0);
    const JointState y4 = y + k1 * (25.0 * h / 216.0) + k3 * (1408.0 * h / 2565.0) +
                          k4 * (2197.0 * h / 4104.0) + k5 * (-h / 5.0);
    const double err = (y5 + y4 * -1.0).max_abs();
    if (err <= tol || h <= t_end * 1e-12) {
      t += h;
      y = y5;
    }
    const double shrink =
        (err > 0.0) ? 0.9 * std::pow(tol / err, 0.2) : 2.0;
    h *= std::min(2.0, std::max(0.1, shrink));
  }
  return y;
}

}  // namespace oracles
