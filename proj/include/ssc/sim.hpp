#pragma once

// Seeded Monte Carlo estimation of the decoder error probability and the
// SNR / array-size sweeps behind the toolkit's CSV outputs.  All
// randomness is counter-derived from (seed, trial), so results are
// bit-identical across runs and thread counts.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ssc/channel.hpp"
#include "ssc/codebook.hpp"

namespace ssc::sim {

struct PeEstimate {
  double pe = 0.0;
  double stderr_value = 0.0;  // sqrt(pe (1 - pe) / trials)
  std::int64_t errors = 0;
  std::int64_t trials = 0;
};

// Per trial: draw a grid index uniformly, synthesize an observation at
// the given SNR, decode, count mismatches.  threads <= 0 selects the
// machine's hardware concurrency; the partition never changes results.
PeEstimate estimate_pe(
    const codebook::Codebook& cb, double snr_db, std::int64_t trials,
    std::uint64_t seed, int threads = 1,
    channel::cdouble source =
        channel::source_from_phase_deg(channel::default_source_phase_deg));

enum class Family { bose_chowla, ula, custom };

struct SweepSpec {
  Family family = Family::bose_chowla;

  // Geometry for sweep_snr: q for bose_chowla, sensor count for ula (grid
  // size defaults to M^2 - 1), or an explicit custom ruler.
  std::int64_t m = 0;
  std::optional<std::int64_t> n;
  std::optional<rulers::Ruler> custom;

  // SNR grid for sweep_snr: snr_min, snr_min + step, ..., <= snr_max.
  double snr_min = -10.0, snr_max = 10.0, snr_step = 1.0;

  // Array-size range for sweep_m, evaluated at the fixed snr_db.
  std::int64_t m_min = 2, m_max = 10;
  double snr_db = 0.0;

  std::int64_t trials = 10000;
  std::uint64_t seed = 42;
  int threads = 1;
  double source_phase_deg = channel::default_source_phase_deg;
  bool bound_only = false;  // skip the Monte Carlo, keep dmin and bounds
};

struct SweepRow {
  double snr_db = 0.0;
  std::int64_t m = 0, n = 0;
  double dmin = 0.0;
  double pe = 0.0, stderr_value = 0.0, bound = 0.0;
  std::int64_t errors = 0, trials = 0;
};

enum class SweepKind { snr, m };

struct SweepResult {
  SweepKind kind = SweepKind::snr;
  bool bound_only = false;
  std::vector<SweepRow> rows;
  // sweep_m with Family::bose_chowla: sensor counts that are not prime
  // powers, noted in the CSV as comments.
  std::vector<std::int64_t> skipped_m;
  std::int64_t trials = 0;
};

// Error rate versus SNR for one fixed codebook.
SweepResult sweep_snr(const SweepSpec& spec);
// Distance and error rate versus sensor count M with N = M^2 - 1.
SweepResult sweep_m(const SweepSpec& spec);

// CSV with header, %.12g-formatted reals, and comment lines for skipped
// sensor counts; when a Monte Carlo row has zero errors a trailing
// comment records the one-sided 95% upper bound for its true rate.
std::string to_csv(const SweepResult& res);
void write_csv(const SweepResult& res, std::ostream& out);

// 1 - 0.05^(1/trials): 95% upper confidence bound after zero errors.
double zero_error_upper95(std::int64_t trials);

// Locale-independent %.12g rendering used by every CSV and report writer.
std::string format_sig12(double v);

}  // namespace ssc::sim
