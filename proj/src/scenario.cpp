#include "maxbloch/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>

#include "maxbloch/config.hpp"
#include "maxbloch/physics.hpp"
#include "maxbloch/pulse.hpp"
#include "maxbloch/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace maxbloch {

namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string iso_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write output file: " + path.string());
  return out;
}

// Flat key = value manifest; enough to reproduce every data file of the run.
class Manifest {
 public:
  void add(const std::string& key, const std::string& value) {
    entries_.emplace_back(key, value);
  }
  void add(const std::string& key, double value) { add(key, fmt(value)); }
  void add(const std::string& key, int value) { add(key, std::to_string(value)); }

  void write(const fs::path& path, const std::string& status) const {
    auto out = open_out(path);
    out << "status = " << status << "\n";
    for (const auto& [k, v] : entries_) out << k << " = " << v << "\n";
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

Manifest base_manifest(const RunConfig& cfg) {
  Manifest m;
  m.add("format", "maxbloch-manifest-1");
  m.add("code_version", kCodeVersion);
  m.add("generator", kGeneratorName);
  m.add("scenario", scenario_name(cfg.scenario));

  m.add("omega_c_ghz", angular_to_ghz(cfg.medium.omega_c));
  if (cfg.medium.micro) {
    m.add("dipole_esu", cfg.medium.micro->dipole);
    m.add("density_cm3", cfg.medium.micro->density);
    m.add("omega0_ghz", angular_to_ghz(cfg.medium.micro->omega0));
  }
  m.add("gamma1_ghz", angular_to_ghz(cfg.medium.gamma1));
  m.add("gamma2_ghz", angular_to_ghz(cfg.medium.gamma2));
  m.add("d_eq", cfg.medium.d_eq);
  m.add("length_cm", cfg.medium.length);

  m.add("t_window_ns", s_to_ns(cfg.grid.t_window));
  m.add("n_t", cfg.grid.n_t);
  m.add("n_z", cfg.grid.n_z);
  m.add("phi_deg", cfg.grid.phi * 180.0 / std::numbers::pi);

  m.add("omega00_ghz", angular_to_ghz(cfg.pump.omega_00));
  m.add("gamma_pump_ghz", angular_to_ghz(cfg.pump.gamma_pump));
  m.add("delta_mode_ghz", angular_to_ghz(cfg.pump.delta_mode));
  m.add("n_modes", cfg.pump.n_modes);
  m.add("delta0_ghz", angular_to_ghz(cfg.pump.delta0));
  m.add("t0_ns", s_to_ns(cfg.pump.t0));
  m.add("a_ns", s_to_ns(cfg.pump.a));
  m.add("b_ns", s_to_ns(cfg.pump.b));
  m.add("seed", std::to_string(cfg.pump.seed));
  m.add("phases", cfg.pump.phase_mode == PhaseMode::kZero ? "zero" : "random");

  if (cfg.probe) {
    m.add("g_ratio", cfg.probe->g_ratio);
    m.add("tau0_ns", s_to_ns(cfg.probe->tau0));
  }

  m.add("ensemble_m", cfg.ensemble_m);
  m.add("instrument_fwhm_ghz", angular_to_ghz(cfg.instrument_fwhm));
  m.add("spectrum_floor", cfg.spectrum_floor);
  m.add("output_dir", cfg.output_dir);
  if (cfg.scenario == Scenario::kSweepEnergy || cfg.scenario == Scenario::kSweepDetuning) {
    m.add("sweep_parameter", sweep_parameter_name(cfg.sweep_parameter));
    std::string vals;
    for (std::size_t i = 0; i < cfg.sweep_values.size(); ++i) {
      if (i) vals += ",";
      vals += fmt(angular_to_ghz(cfg.sweep_values[i]));
    }
    m.add("sweep_values_ghz", vals);
  }
  m.add("keep_member_spectra", cfg.keep_member_spectra ? "true" : "false");
  m.add("full_history", cfg.full_history ? "true" : "false");
  m.add("history_slices", cfg.history_slices);

  const double wc = cfg.medium.effective_omega_c();
  m.add("derived_omega_c_eff_ghz", angular_to_ghz(wc));
  m.add("derived_dt_ns", s_to_ns(cfg.grid.dt()));
  m.add("derived_dz_cm", cfg.grid.dz(cfg.medium.length));
  if (cfg.medium.gamma2 > 0.0) {
    m.add("derived_alpha0_l",
          2.0 * wc * wc * cfg.medium.d_eq * cfg.medium.length /
              (kSpeedOfLight * cfg.medium.gamma2));
  } else {
    m.add("derived_alpha0_l", "inf");
  }
  m.add("derived_envelope_c_at_zero",
        envelope_c(0.0, cfg.pump.t0, cfg.pump.a, cfg.pump.b));
  m.add("approximation_probe_drift",
        "(1-cos(phi))*dOmega1/dtau dropped; probe keeps only the 1/cos(phi) factor");
#ifdef _OPENMP
  m.add("omp_max_threads", omp_get_max_threads());
#else
  m.add("omp_max_threads", 1);
#endif
  return m;
}

void write_trace(const fs::path& path, const ComplexEnvelope& env) {
  auto out = open_out(path);
  out << "t_ns,re_rad_per_s,im_rad_per_s,intensity\n";
  for (int i = 0; i < env.size(); ++i) {
    const cplx v = env.samples[i];
    out << fmt(s_to_ns(env.time(i))) << ',' << fmt(v.real()) << ',' << fmt(v.imag())
        << ',' << fmt(std::norm(v)) << "\n";
  }
}

void write_profile(const fs::path& path, const PropagationResult& res) {
  auto out = open_out(path);
  out << "z_cm,area_rad,d0_final,energy_rad2_per_s\n";
  for (std::size_t j = 0; j < res.z.size(); ++j) {
    out << fmt(res.z[j]) << ',' << fmt(res.area[j]) << ',' << fmt(res.d0_final[j])
        << ',' << fmt(res.energy[j]) << "\n";
  }
}

void write_history(const fs::path& path, const std::vector<double>& z,
                   const std::vector<ComplexEnvelope>& envs) {
  auto out = open_out(path);
  out << "z_cm,t_ns,re_rad_per_s,im_rad_per_s\n";
  for (std::size_t s = 0; s < envs.size(); ++s) {
    for (int i = 0; i < envs[s].size(); ++i) {
      const cplx v = envs[s].samples[i];
      out << fmt(z[s]) << ',' << fmt(s_to_ns(envs[s].time(i))) << ',' << fmt(v.real())
          << ',' << fmt(v.imag()) << "\n";
    }
  }
}

void write_spectrum_pair(const fs::path& path, const SpectrumTable& j_in,
                         const SpectrumTable& j_out, const TransmissionTable* k) {
  auto out = open_out(path);
  out << (k ? "delta_ghz,j_in,j_out,k,valid\n" : "delta_ghz,j_in,j_out\n");
  for (int i = 0; i < j_in.size(); ++i) {
    out << fmt(angular_to_ghz(j_in.delta[i])) << ',' << fmt(j_in.intensity[i]) << ','
        << fmt(j_out.intensity[i]);
    if (k) {
      out << ',' << fmt(k->k_ratio[i]) << ',' << int(k->valid[i]);
    }
    out << "\n";
  }
}

int resonance_bin(const SpectrumTable& t) {
  // The natural grid always contains delta = 0 at index n/2 (j_lo = -(n/2)).
  return t.size() / 2;
}

}  // namespace

MemberSpectra run_pumpprobe_member(const RunConfig& config, std::uint64_t seed) {
  PumpSpec ps = config.pump;
  ps.seed = seed;
  const SynthesisRecord rec = synthesize_pump(ps, config.grid);
  const ComplexEnvelope probe_env = synthesize_probe(rec, *config.probe, config.grid);
  const PropagationResult res =
      propagate_pair(rec.envelope, probe_env, config.medium, config.grid);

  MemberSpectra out;
  out.seed = seed;
  out.probe_in = spectrum(*res.probe_in);
  out.probe_out = spectrum(*res.probe_out);
  out.pump_area = res.area.front();
  return out;
}

EnsembleSpectra ensemble_average(const RunConfig& config, int m, bool parallel,
                                 bool keep_members) {
  if (m < 1) throw ConfigError("ensemble_average: m must be >= 1");
  std::vector<std::uint64_t> seeds(m);
  for (int i = 0; i < m; ++i) seeds[i] = member_seed(config.pump.seed, i);

  std::vector<MemberSpectra> members(m);
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (int i = 0; i < m; ++i) {
    try {
      members[i] = run_pumpprobe_member(config, seeds[i]);
    } catch (...) {
#pragma omp critical(maxbloch_ensemble_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);

  // Reduction in member-index order: averages are independent of scheduling.
  const int nbins = members[0].probe_in.size();
  EnsembleSpectra out;
  out.in_avg.delta = members[0].probe_in.delta;
  out.out_avg.delta = members[0].probe_out.delta;
  out.in_avg.intensity.assign(nbins, 0.0);
  out.out_avg.intensity.assign(nbins, 0.0);
  for (int i = 0; i < m; ++i) {
    for (int b = 0; b < nbins; ++b) {
      out.in_avg.intensity[b] += members[i].probe_in.intensity[b];
      out.out_avg.intensity[b] += members[i].probe_out.intensity[b];
    }
  }
  for (int b = 0; b < nbins; ++b) {
    out.in_avg.intensity[b] /= m;
    out.out_avg.intensity[b] /= m;
  }
  out.seeds = std::move(seeds);
  out.areas.resize(m);
  for (int i = 0; i < m; ++i) out.areas[i] = members[i].pump_area;
  if (keep_members) out.members = std::move(members);
  return out;
}

std::vector<KPeak> k_local_maxima(const TransmissionTable& table) {
  std::vector<KPeak> peaks;
  for (int i = 1; i + 1 < table.size(); ++i) {
    if (!table.valid[i - 1] || !table.valid[i] || !table.valid[i + 1]) continue;
    if (table.k_ratio[i] > table.k_ratio[i - 1] &&
        table.k_ratio[i] > table.k_ratio[i + 1]) {
      peaks.push_back({table.delta[i], table.k_ratio[i]});
    }
  }
  return peaks;
}

std::vector<SweepRow> sweep(const RunConfig& config, SweepParameter parameter,
                            std::span<const double> values) {
  if (values.empty()) throw ConfigError("sweep: empty values list");
  std::vector<SweepRow> rows;
  rows.reserve(values.size());
  for (double v : values) {
    RunConfig point = config;
    switch (parameter) {
      case SweepParameter::kOmega00: point.pump.omega_00 = v; break;
      case SweepParameter::kDelta0: point.pump.delta0 = v; break;
      case SweepParameter::kOmegaC:
        point.medium.omega_c = v;
        point.medium.micro.reset();
        break;
    }
    const EnsembleSpectra ens = ensemble_average(point, point.ensemble_m);
    const SpectrumTable conv_in = instrument_convolve(ens.in_avg, point.instrument_fwhm);
    const SpectrumTable conv_out = instrument_convolve(ens.out_avg, point.instrument_fwhm);
    const TransmissionTable k = transmission(conv_in, conv_out, point.spectrum_floor);

    SweepRow row;
    row.value = v;
    const int b0 = resonance_bin(conv_in);
    row.k0 = k.k_ratio[b0];
    for (int i = 0; i < k.size(); ++i) {
      if (k.valid[i] && k.k_ratio[i] > row.k_max) {
        row.k_max = k.k_ratio[i];
        row.k_max_delta = k.delta[i];
      }
    }
    for (const KPeak& p : k_local_maxima(k)) {
      if (p.delta < 0.0 && p.k > row.k_neg_max) {
        row.k_neg_max = p.k;
        row.k_neg_delta = p.delta;
      }
      if (p.delta > 0.0 && p.k > row.k_pos_max) {
        row.k_pos_max = p.k;
        row.k_pos_delta = p.delta;
      }
    }
    double mean = 0.0;
    for (double a : ens.areas) mean += a;
    row.area_mean = mean / ens.areas.size();
    rows.push_back(row);
  }
  return rows;
}

std::vector<std::string> run_scenario(const RunConfig& config) {
  const auto t_begin = std::chrono::steady_clock::now();
  fs::create_directories(config.output_dir);
  const fs::path dir(config.output_dir);

  Manifest manifest = base_manifest(config);
  manifest.add("timestamp_start", iso_now());
  manifest.write(dir / "manifest.txt", "running");

  std::vector<std::string> files;
  auto emit = [&](const fs::path& p) { files.push_back(p.string()); };

  switch (config.scenario) {
    case Scenario::kSingle: {
      PumpSpec ps = config.pump;
      ps.seed = member_seed(config.pump.seed, 0);
      manifest.add("member_seeds", std::to_string(ps.seed));
      const SynthesisRecord rec = synthesize_pump(ps, config.grid);
      PropagationOptions opts;
      opts.record_history = config.full_history;
      opts.history_slices = config.history_slices;
      const PropagationResult res =
          propagate_pump(rec.envelope, config.medium, config.grid, opts);
      write_trace(dir / "pump_in.csv", res.pump_in);
      emit(dir / "pump_in.csv");
      write_trace(dir / "pump_out.csv", res.pump_out);
      emit(dir / "pump_out.csv");
      write_profile(dir / "profile_z.csv", res);
      emit(dir / "profile_z.csv");
      if (config.full_history) {
        write_history(dir / "history_pump.csv", res.history_z, res.history_pump);
        emit(dir / "history_pump.csv");
      }
      manifest.add("result_area_in_rad", res.area.front());
      manifest.add("result_area_out_rad", res.area.back());
      manifest.add("result_energy_in", res.energy.front());
      manifest.add("result_energy_out", res.energy.back());
      break;
    }
    case Scenario::kPumpProbe: {
      const EnsembleSpectra ens =
          ensemble_average(config, config.ensemble_m, true, config.keep_member_spectra);
      const SpectrumTable conv_in = instrument_convolve(ens.in_avg, config.instrument_fwhm);
      const SpectrumTable conv_out =
          instrument_convolve(ens.out_avg, config.instrument_fwhm);
      const TransmissionTable k = transmission(conv_in, conv_out, config.spectrum_floor);
      write_spectrum_pair(dir / "probe_spectrum.csv", conv_in, conv_out, &k);
      emit(dir / "probe_spectrum.csv");
      write_spectrum_pair(dir / "probe_spectrum_raw.csv", ens.in_avg, ens.out_avg,
                          nullptr);
      emit(dir / "probe_spectrum_raw.csv");
      if (config.keep_member_spectra) {
        for (std::size_t i = 0; i < ens.members.size(); ++i) {
          char name[48];
          std::snprintf(name, sizeof name, "member_%03zu_spectrum.csv", i);
          write_spectrum_pair(dir / name, ens.members[i].probe_in,
                              ens.members[i].probe_out, nullptr);
          emit(dir / name);
        }
      }
      std::string seeds, areas;
      for (std::size_t i = 0; i < ens.seeds.size(); ++i) {
        if (i) {
          seeds += ",";
          areas += ",";
        }
        seeds += std::to_string(ens.seeds[i]);
        areas += fmt(ens.areas[i]);
      }
      manifest.add("member_seeds", seeds);
      manifest.add("member_pump_area_rad", areas);
      break;
    }
    case Scenario::kLinTest: {
      PumpSpec ps = config.pump;
      ps.seed = member_seed(config.pump.seed, 0);
      manifest.add("member_seeds", std::to_string(ps.seed));
      const SynthesisRecord rec = synthesize_pump(ps, config.grid);
      const PropagationResult res = propagate_pump(rec.envelope, config.medium, config.grid);
      const SpectrumTable j_in = spectrum(res.pump_in);
      const SpectrumTable j_out = spectrum(res.pump_out);

      SpectrumTable j_oracle;
      j_oracle.delta = j_in.delta;
      j_oracle.intensity.resize(j_in.size());
      for (int i = 0; i < j_in.size(); ++i) {
        j_oracle.intensity[i] =
            j_in.intensity[i] * std::norm(linear_transfer(j_in.delta[i], config.medium));
      }

      double max_in = 0.0;
      for (double v : j_in.intensity) max_in = std::max(max_in, v);
      const double cut = config.spectrum_floor * max_in;
      double num2 = 0.0, den2 = 0.0, max_abs = 0.0, max_oracle = 0.0;
      int valid_bins = 0;
      for (int i = 0; i < j_in.size(); ++i) {
        if (j_in.intensity[i] < cut) continue;
        ++valid_bins;
        const double d = j_out.intensity[i] - j_oracle.intensity[i];
        num2 += d * d;
        den2 += j_oracle.intensity[i] * j_oracle.intensity[i];
        max_abs = std::max(max_abs, std::abs(d));
        max_oracle = std::max(max_oracle, j_oracle.intensity[i]);
      }
      const double rms = (den2 > 0.0) ? std::sqrt(num2 / den2) : 0.0;
      const double max_rel = (max_oracle > 0.0) ? max_abs / max_oracle : 0.0;

      auto out = open_out(dir / "lintest.csv");
      out << "delta_ghz,j_in,j_out,j_oracle,k,k_oracle,valid\n";
      for (int i = 0; i < j_in.size(); ++i) {
        const bool valid = j_in.intensity[i] >= cut && j_in.intensity[i] > 0.0;
        const double kv = valid ? j_out.intensity[i] / j_in.intensity[i]
                                : std::numeric_limits<double>::quiet_NaN();
        const double ko = valid ? j_oracle.intensity[i] / j_in.intensity[i]
                                : std::numeric_limits<double>::quiet_NaN();
        out << fmt(angular_to_ghz(j_in.delta[i])) << ',' << fmt(j_in.intensity[i]) << ','
            << fmt(j_out.intensity[i]) << ',' << fmt(j_oracle.intensity[i]) << ','
            << fmt(kv) << ',' << fmt(ko) << ',' << int(valid) << "\n";
      }
      out.close();
      emit(dir / "lintest.csv");

      manifest.add("lintest_rms_deviation", rms);
      manifest.add("lintest_max_deviation", max_rel);
      manifest.add("lintest_valid_bins", valid_bins);
      std::printf("lintest: rms deviation %.4g%%, max deviation %.4g%% over %d bins\n",
                  100.0 * rms, 100.0 * max_rel, valid_bins);
      break;
    }
    case Scenario::kSweepEnergy:
    case Scenario::kSweepDetuning: {
      const std::vector<SweepRow> rows =
          sweep(config, config.sweep_parameter, config.sweep_values);
      auto out = open_out(dir / "sweep.csv");
      out << "value_ghz,k_at_0,k_max,k_max_delta_ghz,k_neg_max,k_neg_delta_ghz,"
             "k_pos_max,k_pos_delta_ghz,area_mean_rad\n";
      for (const SweepRow& r : rows) {
        out << fmt(angular_to_ghz(r.value)) << ',' << fmt(r.k0) << ',' << fmt(r.k_max)
            << ',' << fmt(angular_to_ghz(r.k_max_delta)) << ',' << fmt(r.k_neg_max)
            << ',' << fmt(angular_to_ghz(r.k_neg_delta)) << ',' << fmt(r.k_pos_max)
            << ',' << fmt(angular_to_ghz(r.k_pos_delta)) << ','
            << fmt(r.area_mean) << "\n";
      }
      out.close();
      emit(dir / "sweep.csv");
      break;
    }
  }

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin).count();
  manifest.add("timestamp_finish", iso_now());
  manifest.add("wall_time_s", wall);
  manifest.write(dir / "manifest.txt", "complete");
  emit(dir / "manifest.txt");
  return files;
}

}  // namespace maxbloch
