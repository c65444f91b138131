#include "maxbloch/spectral.hpp"

#include <cmath>
#include <cstdint>
#include <limits>

namespace maxbloch {

namespace {

// Rotator recurrences drift by ~eps per multiply; restarting each block from
// an exactly reduced phase keeps the n^2 sums accurate to ~1e-12 relative
// even for strongly cancelling (comb) spectra.
constexpr int kBlock = 256;

// 2*pi*((j*i) mod n)/n with exact integer reduction.
double grid_phase(std::int64_t j, std::int64_t i, int n) {
  const std::int64_t jj = ((j % n) + n) % n;
  const std::int64_t r = (jj * (i % n)) % n;
  return kTwoPi * static_cast<double>(r) / static_cast<double>(n);
}

}  // namespace

SpectrumTable spectrum(const ComplexEnvelope& env) {
  const int n = env.size();
  const double dt = env.dt;
  const double d_delta = kTwoPi / (n * dt);
  const int j_lo = -(n / 2);  // bins j_lo .. j_lo + n - 1, ascending

  SpectrumTable table;
  table.delta.resize(n);
  table.amp.resize(n);
  table.intensity.resize(n);

  const cplx* s = env.samples.data();
#pragma omp parallel for schedule(static)
  for (int b = 0; b < n; ++b) {
    const int j = j_lo + b;
    const double delta = j * d_delta;
    // amp(delta) = dt * sum_i s_i exp(-i delta t_i): projection onto the
    // exp(+i delta t) component, so blue-shifted content lands at delta > 0.
    const cplx z = std::polar(1.0, -grid_phase(j, 1, n));
    cplx acc{0.0, 0.0};
    for (int m0 = 0; m0 < n; m0 += kBlock) {
      const int m1 = std::min(n, m0 + kBlock);
      cplx block{0.0, 0.0};
      for (int i = m1 - 1; i >= m0; --i) block = block * z + s[i];
      acc += block * std::polar(1.0, -grid_phase(j, m0, n));
    }
    const cplx amp = acc * std::polar(dt, -delta * env.t_start);
    table.delta[b] = delta;
    table.amp[b] = amp;
    table.intensity[b] = std::norm(amp);
  }
  return table;
}

ComplexEnvelope inverse_spectrum(const SpectrumTable& table, double t_start) {
  const int n = table.size();
  const double d_delta = table.delta[1] - table.delta[0];
  const double dt = kTwoPi / (n * d_delta);
  const int j_lo = -(n / 2);

  ComplexEnvelope env;
  env.t_start = t_start;
  env.dt = dt;
  env.samples.resize(n);

  const cplx* a = table.amp.data();
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    // Omega_i = (1/(n dt)) * sum_b amp_b exp(+i delta_b t_i).
    const cplx z = std::polar(1.0, d_delta * t_start + grid_phase(1, i, n));
    cplx acc{0.0, 0.0};
    for (int b0 = 0; b0 < n; b0 += kBlock) {
      const int b1 = std::min(n, b0 + kBlock);
      cplx block{0.0, 0.0};
      for (int b = b1 - 1; b >= b0; --b) block = block * z + a[b];
      const double start_phase =
          (j_lo + b0) * d_delta * t_start + grid_phase(j_lo + b0, i, n);
      acc += block * std::polar(1.0, start_phase);
    }
    env.samples[i] = acc / (n * dt);
  }
  return env;
}

SpectrumTable instrument_convolve(const SpectrumTable& table, double fwhm) {
  if (fwhm < 0.0) throw std::domain_error("instrument_convolve: fwhm must be >= 0");
  SpectrumTable out;
  out.delta = table.delta;
  out.intensity = table.intensity;
  if (fwhm == 0.0 || table.size() < 2) return out;

  const int n = table.size();
  const double d_delta = table.delta[1] - table.delta[0];
  const double sigma = fwhm / (2.0 * std::sqrt(2.0 * std::numbers::ln2));
  const int half = static_cast<int>(std::ceil(8.0 * sigma / d_delta));

  std::vector<double> w(2 * half + 1);
  double norm = 0.0;
  for (int m = -half; m <= half; ++m) {
    const double x = m * d_delta / fwhm;
    w[m + half] = std::exp(-4.0 * std::numbers::ln2 * x * x);
    norm += w[m + half];
  }
  for (auto& v : w) v /= norm;

  const double* in = table.intensity.data();
#pragma omp parallel for schedule(static)
  for (int j = 0; j < n; ++j) {
    double acc = 0.0;
    const int m0 = std::max(-half, j - (n - 1));
    const int m1 = std::min(half, j);
    for (int m = m0; m <= m1; ++m) acc += w[m + half] * in[j - m];
    out.intensity[j] = acc;
  }
  return out;
}

TransmissionTable transmission(const SpectrumTable& j_in, const SpectrumTable& j_out,
                               double floor) {
  if (j_in.size() != j_out.size()) {
    throw ConfigError("transmission: spectra have different grid sizes");
  }
  for (int i = 0; i < j_in.size(); ++i) {
    if (j_in.delta[i] != j_out.delta[i]) {
      throw ConfigError("transmission: spectra are on different delta grids");
    }
  }

  double max_in = 0.0;
  for (double v : j_in.intensity) max_in = std::max(max_in, v);
  const double cut = floor * max_in;

  TransmissionTable out;
  out.delta = j_in.delta;
  out.k_ratio.resize(j_in.size());
  out.valid.resize(j_in.size());
  for (int i = 0; i < j_in.size(); ++i) {
    if (j_in.intensity[i] >= cut && j_in.intensity[i] > 0.0) {
      out.k_ratio[i] = j_out.intensity[i] / j_in.intensity[i];
      out.valid[i] = 1;
    } else {
      out.k_ratio[i] = std::numeric_limits<double>::quiet_NaN();
      out.valid[i] = 0;
    }
  }
  return out;
}

double pulse_area(const ComplexEnvelope& env) {
  cplx acc{0.0, 0.0};
  for (const cplx& v : env.samples) acc += v;
  return std::abs(acc) * env.dt;
}

cplx linear_transfer(double delta, const MediumParams& medium) {
  if (medium.gamma2 == 0.0 && delta == 0.0) {
    throw std::domain_error("linear_transfer: pole at gamma2 = 0, delta = 0");
  }
  const double wc = medium.effective_omega_c();
  const cplx denom{medium.gamma2, delta};
  return std::exp(-(wc * wc * medium.length / kSpeedOfLight) * medium.d_eq / denom);
}

}  // namespace maxbloch
