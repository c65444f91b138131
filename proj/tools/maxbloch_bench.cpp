// Benchmark comparing the serial and OpenMP paths of the hot kernels
// (spectrum DFT, instrument convolution, ensemble propagation) and reporting
// the core propagation throughput.  The parallel paths must reproduce the
// serial results exactly; any mismatch is reported and fails the run.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "maxbloch/propagate.hpp"
#include "maxbloch/pulse.hpp"
#include "maxbloch/scenario.hpp"
#include "maxbloch/spectral.hpp"

using namespace maxbloch;

namespace {

double now_s() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

int g_failures = 0;

void check_equal(const std::vector<double>& a, const std::vector<double>& b,
                 const char* what) {
  double max_diff = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    max_diff = std::max(max_diff, std::abs(a[i] - b[i]));
  if (max_diff != 0.0) {
    std::printf("  MISMATCH %s: serial vs parallel max |diff| = %g\n", what, max_diff);
    ++g_failures;
  }
}

int g_available_threads = 1;

int max_threads() { return g_available_threads; }

void set_threads(int n) {
#ifdef _OPENMP
  omp_set_num_threads(n);
#else
  (void)n;
#endif
}

ComplexEnvelope make_signal(int n) {
  GridSpec grid{ns_to_s(0.001 * (n - 1)), n, 2, 0.0};  // 1 ps sampling
  PumpSpec pump;
  pump.omega_00 = ghz_to_angular(0.2);
  pump.gamma_pump = ghz_to_angular(20.0);
  pump.delta_mode = ghz_to_angular(0.37);
  pump.n_modes = 50;
  pump.t0 = ns_to_s(1.5);
  pump.a = ns_to_s(2.4);
  pump.b = ns_to_s(0.3);
  pump.seed = 42;
  return synthesize_pump(pump, grid).envelope;
}

void bench_spectrum(int n) {
  const ComplexEnvelope env = make_signal(n);
  set_threads(1);
  double t0 = now_s();
  const SpectrumTable serial = spectrum(env);
  const double t_serial = now_s() - t0;

  set_threads(max_threads());
  t0 = now_s();
  const SpectrumTable parallel = spectrum(env);
  const double t_parallel = now_s() - t0;

  check_equal(serial.intensity, parallel.intensity, "spectrum");
  std::printf("spectrum DFT       n=%6d   serial %8.3f s   omp(%d) %8.3f s   x%.2f\n",
              n, t_serial, max_threads(), t_parallel, t_serial / t_parallel);
}

void bench_convolve(int n) {
  const ComplexEnvelope env = make_signal(n);
  const SpectrumTable table = spectrum(env);
  const double fwhm = ghz_to_angular(1.5);

  set_threads(1);
  double t0 = now_s();
  const SpectrumTable serial = instrument_convolve(table, fwhm);
  const double t_serial = now_s() - t0;

  set_threads(max_threads());
  t0 = now_s();
  const SpectrumTable parallel = instrument_convolve(table, fwhm);
  const double t_parallel = now_s() - t0;

  check_equal(serial.intensity, parallel.intensity, "instrument_convolve");
  std::printf("convolution        n=%6d   serial %8.3f s   omp(%d) %8.3f s   x%.2f\n",
              n, t_serial, max_threads(), t_parallel, t_serial / t_parallel);
}

RunConfig mini_config(int n_t, int n_z) {
  RunConfig cfg;
  cfg.medium.omega_c = ghz_to_angular(0.5);
  cfg.medium.gamma1 = ghz_to_angular(0.0084);
  cfg.medium.gamma2 = ghz_to_angular(0.0054);
  cfg.medium.length = 15.0;
  cfg.grid = GridSpec{ns_to_s(8.0), n_t, n_z, deg_to_rad(1.0)};
  cfg.pump.omega_00 = ghz_to_angular(0.05);
  cfg.pump.gamma_pump = ghz_to_angular(4.0);
  cfg.pump.delta_mode = ghz_to_angular(0.37);
  cfg.pump.n_modes = 12;
  cfg.pump.t0 = ns_to_s(1.5);
  cfg.pump.a = ns_to_s(2.4);
  cfg.pump.b = ns_to_s(0.3);
  cfg.pump.seed = 7;
  cfg.probe = ProbeSpec{100.0, ns_to_s(0.01)};
  return cfg;
}

void bench_ensemble(int n_t, int n_z, int members) {
  const RunConfig cfg = mini_config(n_t, n_z);

  set_threads(max_threads());
  double t0 = now_s();
  const EnsembleSpectra serial = ensemble_average(cfg, members, /*parallel=*/false);
  const double t_serial = now_s() - t0;

  t0 = now_s();
  const EnsembleSpectra parallel = ensemble_average(cfg, members, /*parallel=*/true);
  const double t_parallel = now_s() - t0;

  check_equal(serial.out_avg.intensity, parallel.out_avg.intensity, "ensemble");
  std::printf("ensemble (%d x pair) n_t=%5d n_z=%4d  serial %8.3f s   omp(%d) %8.3f s   x%.2f\n",
              members, n_t, n_z, t_serial, max_threads(), t_parallel,
              t_serial / t_parallel);
}

void bench_kernel(int n_t, int n_z) {
  const RunConfig cfg = mini_config(n_t, n_z);
  const SynthesisRecord rec = synthesize_pump(cfg.pump, cfg.grid);
  const ComplexEnvelope probe = synthesize_probe(rec, *cfg.probe, cfg.grid);

  const double t0 = now_s();
  const PropagationResult res =
      propagate_pair(rec.envelope, probe, cfg.medium, cfg.grid);
  const double dt = now_s() - t0;
  const double sweeps = 2.0 * (n_z - 1) + 1.0;
  std::printf("pair kernel        n_t=%5d n_z=%4d  %8.3f s   %.2f Mstep/s (single thread)\n",
              n_t, n_z, dt, sweeps * (n_t - 1) / dt / 1e6);
  (void)res;
}

}  // namespace

int main(int argc, char** argv) {
  const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
#ifdef _OPENMP
  g_available_threads = omp_get_max_threads();
#endif
  std::printf("maxbloch benchmark (%d threads available)\n", max_threads());

  bench_spectrum(quick ? 2048 : 16001);
  bench_convolve(quick ? 4096 : 16001);
  bench_kernel(quick ? 1001 : 4001, quick ? 101 : 301);
  bench_ensemble(quick ? 501 : 2001, quick ? 101 : 201, quick ? 2 : 4);

  if (g_failures) {
    std::printf("FAILED: %d kernel mismatches\n", g_failures);
    return 1;
  }
  std::printf("all parallel kernels match their serial reference\n");
  return 0;
}
