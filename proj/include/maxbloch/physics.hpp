#pragma once

#include "maxbloch/types.hpp"

namespace maxbloch {

// Field-matter coupling rate sqrt(2*pi*d^2*omega0*n0/hbar) in Gaussian-CGS
// units.  Monotone increasing in each argument; zero density decouples field
// and matter.  Negative inputs raise std::domain_error.
double cooperative_frequency(double dipole, double density, double omega0);

// Pulse envelope (2/pi)*exp(-(t-t0)/a)*[pi/2 + arctan((t-t0)/b)], defined as 0
// for t < 0 (the formula grows without bound toward negative times).
// Requires a > 0, b > 0.  C(t0) = 1 exactly.
double envelope_c(double t, double t0, double a, double b);

}  // namespace maxbloch
