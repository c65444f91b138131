#pragma once

#include <span>
#include <string>

#include "maxbloch/propagate.hpp"
#include "maxbloch/spectral.hpp"

namespace maxbloch {

inline constexpr const char* kCodeVersion = "1.0.0";

enum class Scenario { kSingle, kPumpProbe, kSweepEnergy, kSweepDetuning, kLinTest };
enum class SweepParameter { kOmega00, kDelta0, kOmegaC };

struct RunConfig {
  MediumParams medium;
  GridSpec grid;
  PumpSpec pump;  // pump.seed is the master seed; member seeds derive from it
  std::optional<ProbeSpec> probe;
  Scenario scenario = Scenario::kSingle;
  int ensemble_m = 8;
  double instrument_fwhm = ghz_to_angular(12.0);  // rad/s
  double spectrum_floor = 1e-3;                   // transmission validity floor
  std::string output_dir = "out";
  SweepParameter sweep_parameter = SweepParameter::kOmega00;
  std::vector<double> sweep_values;  // rad/s
  bool keep_member_spectra = false;
  bool full_history = false;
  int history_slices = 65;
};

// Probe spectra of one phase realization plus bookkeeping.
struct MemberSpectra {
  std::uint64_t seed = 0;
  SpectrumTable probe_in;
  SpectrumTable probe_out;
  double pump_area = 0.0;  // input pump pulse area, rad
};

// Ensemble-averaged input/output probe intensity spectra (amplitudes are
// dropped by averaging).  Member seeds derive from the master seed; members
// may run concurrently but are reduced in index order, so the averages do not
// depend on scheduling.
struct EnsembleSpectra {
  SpectrumTable in_avg;
  SpectrumTable out_avg;
  std::vector<std::uint64_t> seeds;
  std::vector<double> areas;  // input pump area per member
  std::vector<MemberSpectra> members;  // retained when requested
};

MemberSpectra run_pumpprobe_member(const RunConfig& config, std::uint64_t seed);

EnsembleSpectra ensemble_average(const RunConfig& config, int m, bool parallel = true,
                                 bool keep_members = false);

// One row of a sweep summary: K at resonance, the global maximum of K, and the
// largest local maxima on the red and blue sides, plus the mean input area.
struct SweepRow {
  double value = 0.0;  // swept parameter, rad/s
  double k0 = 0.0;
  double k_max = 0.0, k_max_delta = 0.0;
  double k_neg_max = 0.0, k_neg_delta = 0.0;  // 0 height when no maximum found
  double k_pos_max = 0.0, k_pos_delta = 0.0;
  double area_mean = 0.0;  // rad
};

std::vector<SweepRow> sweep(const RunConfig& config, SweepParameter parameter,
                            std::span<const double> values);

// Local maxima of K over valid bins (strictly above both neighbours).
struct KPeak {
  double delta = 0.0;
  double k = 0.0;
};
std::vector<KPeak> k_local_maxima(const TransmissionTable& table);

// Executes the configured scenario, writing data files + manifest into
// config.output_dir.  Returns the paths of the files written.
std::vector<std::string> run_scenario(const RunConfig& config);

}  // namespace maxbloch
