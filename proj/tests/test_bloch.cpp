#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "maxbloch/bloch.hpp"
#include "maxbloch/rng.hpp"
#include "oracles.hpp"

using namespace maxbloch;

namespace {

MediumParams coherent_medium() {
  MediumParams m;
  m.length = 1.0;
  m.gamma1 = 0.0;
  m.gamma2 = 0.0;
  m.d_eq = 1.0;
  return m;
}

}  // namespace

TEST_CASE("free polarization decay matches exp(-gamma2 dtau)") {
  MediumParams m = coherent_medium();
  m.gamma2 = 2.0;
  const double dtau = 0.05;  // gamma2*dtau = 0.1
  AtomState s{cplx{0.4, -0.3}, 0.6};
  const AtomState out = step_bloch(s, cplx{0.0, 0.0}, cplx{0.0, 0.0}, m, dtau);
  const cplx exact = s.p0 * std::exp(-m.gamma2 * dtau);
  CHECK(std::abs(out.p0 - exact) <= 1e-7 * std::abs(s.p0));
  CHECK(out.d0 == s.d0);  // gamma1 = 0, no field
}

TEST_CASE("constant resonant drive reproduces the Rabi solution") {
  const MediumParams m = coherent_medium();
  const double omega = 3.0e9;
  const double dtau = 0.001 / omega;
  AtomState s{cplx{0.0, 0.0}, 1.0};
  const cplx w{omega, 0.0};
  const int steps = static_cast<int>(std::round(kTwoPi / (omega * dtau)));
  for (int i = 1; i <= steps; ++i) {
    s = step_bloch(s, w, w, m, dtau);
    if (i % 1000 == 0) {
      const double t = i * dtau;
      CHECK(s.d0 == doctest::Approx(std::cos(omega * t)).epsilon(1e-8));
      CHECK(s.p0.real() == doctest::Approx(std::sin(omega * t)).epsilon(1e-8));
      CHECK(s.p0.imag() == 0.0);
    }
  }
}

TEST_CASE("|p0|^2 + D0^2 is conserved per step without relaxation") {
  const MediumParams m = coherent_medium();
  AtomState s{cplx{0.0, 0.0}, 1.0};
  const double dtau = 1.0;
  // smooth multimode field sampled on the grid, |Omega|*dtau <= ~0.04
  auto field = [&](double t) {
    return cplx{0.02 * std::cos(0.11 * t) + 0.013 * std::sin(0.05 * t + 0.4),
                0.017 * std::sin(0.083 * t + 1.1)};
  };
  for (int i = 0; i < 2000; ++i) {
    const double before = std::norm(s.p0) + s.d0 * s.d0;
    s = step_bloch(s, field(i * dtau), field((i + 1) * dtau), m, dtau);
    const double after = std::norm(s.p0) + s.d0 * s.d0;
    CHECK(std::abs(after - before) <= 1e-10);
  }
}

TEST_CASE("joint probe step agrees with the dense RKF45 oracle") {
  SUBCASE("coherent limit, constant real fields") {
    const MediumParams m = coherent_medium();
    const cplx w0{1.0, 0.0}, w1{0.3, 0.0};
    const double h = 0.05;

    AtomState atom{cplx{0.0, 0.0}, 1.0};
    ProbeMediumState probe{};
    PumpStages stages;
    atom = step_bloch(atom, w0, w0, m, h, &stages);
    probe = step_bloch_probe(probe, stages, w0, w0, w1, w1, m, h);

    oracles::JointState y;
    y.d0 = 1.0;
    y = oracles::rkf45_solve(y, w0, w1, 0.0, 0.0, 1.0, h, 1e-12);

    CHECK(std::abs(atom.p0 - y.p0) <= 1e-8);
    CHECK(std::abs(atom.d0 - y.d0) <= 1e-8);
    CHECK(std::abs(probe.p1 - y.p1) <= 1e-8);
    CHECK(std::abs(probe.d1 - y.d1) <= 1e-8);
    CHECK(std::abs(probe.pm1_conj - y.pm1) <= 1e-8);
  }
  SUBCASE("complex fields with relaxation, multiple steps") {
    MediumParams m = coherent_medium();
    m.gamma1 = 0.21;
    m.gamma2 = 0.13;
    m.d_eq = 0.9;
    const cplx w0{0.8, -0.45}, w1{0.12, 0.2};
    const double h = 0.02;
    const int steps = 50;

    AtomState atom{cplx{0.0, 0.0}, m.d_eq};
    ProbeMediumState probe{};
    PumpStages stages;
    for (int i = 0; i < steps; ++i) {
      const AtomState next = step_bloch(atom, w0, w0, m, h, &stages);
      probe = step_bloch_probe(probe, stages, w0, w0, w1, w1, m, h);
      atom = next;
    }
    oracles::JointState y;
    y.d0 = m.d_eq;
    y = oracles::rkf45_solve(y, w0, w1, m.gamma1, m.gamma2, m.d_eq, steps * h, 1e-12);

    CHECK(std::abs(atom.p0 - y.p0) <= 1e-7);
    CHECK(std::abs(atom.d0 - y.d0) <= 1e-7);
    CHECK(std::abs(probe.p1 - y.p1) <= 1e-7);
    CHECK(std::abs(probe.d1 - y.d1) <= 1e-7);
    CHECK(std::abs(probe.pm1_conj - y.pm1) <= 1e-7);
  }
}

TEST_CASE("zero pump decouples the probe gratings") {
  MediumParams m = coherent_medium();
  m.gamma1 = 0.1;
  m.gamma2 = 0.05;
  m.d_eq = 1.0;
  const cplx zero{0.0, 0.0};
  const double h = 0.02;

  AtomState atom{zero, m.d_eq};
  ProbeMediumState probe{};
  // weak probe so the nonlinear pump-route comparison below holds to cubic order
  const cplx w1{1e-4, 5e-5};

  AtomState weak_as_pump{zero, m.d_eq};
  PumpStages stages;
  for (int i = 0; i < 200; ++i) {
    const AtomState next = step_bloch(atom, zero, zero, m, h, &stages);
    probe = step_bloch_probe(probe, stages, zero, zero, w1, w1, m, h);
    atom = next;
    weak_as_pump = step_bloch(weak_as_pump, w1, w1, m, h);
  }
  // D1 and p_-1* never acquire a value.
  CHECK(probe.d1 == cplx{0.0, 0.0});
  CHECK(probe.pm1_conj == cplx{0.0, 0.0});
  // p1 follows the same linear law as a weak pump held at D0 = d_eq.
  CHECK(std::abs(probe.p1 - weak_as_pump.p0) <= 1e-8 * std::abs(probe.p1));
}

TEST_CASE("probe equations are linear: scaling by powers of two is exact") {
  MediumParams m = coherent_medium();
  m.gamma1 = 0.05;
  m.gamma2 = 0.02;
  const cplx w0{0.7, 0.2};
  const cplx w1{0.1, -0.04};
  const double h = 0.03;
  const double s = 128.0;

  ProbeMediumState a{}, b{};
  AtomState atom{cplx{0.0, 0.0}, 1.0};
  PumpStages stages;
  for (int i = 0; i < 100; ++i) {
    const AtomState next = step_bloch(atom, w0, w0, m, h, &stages);
    a = step_bloch_probe(a, stages, w0, w0, w1, w1, m, h);
    b = step_bloch_probe(b, stages, w0, w0, s * w1, s * w1, m, h);
    atom = next;
  }
  CHECK(b.p1 == s * a.p1);
  CHECK(b.d1 == s * a.d1);
  CHECK(b.pm1_conj == s * a.pm1_conj);
}
