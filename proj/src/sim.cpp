#include "ssc/sim.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ssc/gf.hpp"
#include "ssc/rng.hpp"

namespace ssc::sim {

std::string format_sig12(double v) {
  char buf[64];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, ptr);
}

double zero_error_upper95(std::int64_t trials) {
  if (trials < 1)
    throw std::domain_error("zero_error_upper95: trials must be >= 1");
  return -std::expm1(std::log(0.05) / static_cast<double>(trials));
}

PeEstimate estimate_pe(const codebook::Codebook& cb, double snr_db,
                       std::int64_t trials, std::uint64_t seed, int threads,
                       channel::cdouble source) {
  if (trials < 1) throw std::domain_error("estimate_pe: trials must be >= 1");
  if (std::abs(std::abs(source) - 1.0) > 1e-9)
    throw std::domain_error("estimate_pe: source must have unit modulus");

  const channel::ChannelConfig cfg{source, channel::snr_to_sigma(snr_db), seed};
  int t = threads <= 0
              ? static_cast<int>(std::max(1u, std::thread::hardware_concurrency()))
              : threads;
  t = static_cast<int>(std::min<std::int64_t>(t, trials));

  const std::int64_t n = cb.size();
  const std::int64_t m = cb.sensors();
  std::vector<std::int64_t> errs(t, 0);

  // Trial `trial` behaves identically regardless of which worker runs it:
  // both its index draw and its noise come from streams derived from
  // (seed, trial).
  const auto worker = [&](int w) {
    std::vector<double> yre(m), yim(m), scores(n);
    const std::int64_t lo = trials * w / t;
    const std::int64_t hi = trials * (w + 1) / t;
    std::int64_t e = 0;
    for (std::int64_t trial = lo; trial < hi; ++trial) {
      rng::Stream idx(rng::derive(seed, static_cast<std::uint64_t>(trial), 0));
      const std::int64_t truth =
          static_cast<std::int64_t>(idx.below(static_cast<std::uint64_t>(n)));
      channel::synthesize_planar(cb, truth, cfg,
                                 static_cast<std::uint64_t>(trial), yre.data(),
                                 yim.data());
      if (channel::decode_planar(cb, yre.data(), yim.data(), scores.data()) !=
          truth)
        ++e;
    }
    errs[w] = e;
  };

  if (t == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (int w = 0; w < t; ++w) pool.emplace_back(worker, w);
    for (std::thread& th : pool) th.join();
  }

  PeEstimate r;
  r.trials = trials;
  for (std::int64_t e : errs) r.errors += e;
  r.pe = static_cast<double>(r.errors) / static_cast<double>(trials);
  r.stderr_value = std::sqrt(r.pe * (1.0 - r.pe) / static_cast<double>(trials));
  return r;
}

namespace {

codebook::Codebook sweep_codebook(const SweepSpec& spec) {
  switch (spec.family) {
    case Family::bose_chowla: {
      if (spec.m < 2)
        throw std::domain_error("sweep: q must be >= 2 for bose-chowla");
      const std::int64_t fixed_n = spec.m * spec.m - 1;
      if (spec.n && *spec.n != fixed_n)
        throw std::domain_error(
            "sweep: bose-chowla grid size is fixed at q^2 - 1");
      return codebook::build_codebook(
          rulers::bose_chowla(static_cast<std::uint64_t>(spec.m)));
    }
    case Family::ula: {
      if (spec.m < 2) throw std::domain_error("sweep: M must be >= 2 for ula");
      const std::int64_t n = spec.n.value_or(spec.m * spec.m - 1);
      return codebook::build_codebook(rulers::ula(spec.m, n));
    }
    case Family::custom: {
      if (!spec.custom)
        throw std::domain_error("sweep: custom family requires a ruler");
      return codebook::build_codebook(*spec.custom);
    }
  }
  throw std::domain_error("sweep: unknown family");
}

std::vector<double> snr_grid(const SweepSpec& s) {
  if (!(s.snr_step > 0.0))
    throw std::domain_error("sweep: snr step must be > 0");
  if (s.snr_max < s.snr_min)
    throw std::domain_error("sweep: snr range is empty");
  const std::int64_t count = static_cast<std::int64_t>(std::floor(
                                 (s.snr_max - s.snr_min) / s.snr_step + 1e-9)) +
                             1;
  std::vector<double> g(count);
  for (std::int64_t i = 0; i < count; ++i)
    g[i] = s.snr_min + static_cast<double>(i) * s.snr_step;
  return g;
}

}  // namespace

SweepResult sweep_snr(const SweepSpec& spec) {
  if (spec.trials < 1) throw std::domain_error("sweep: trials must be >= 1");
  const codebook::Codebook cb = sweep_codebook(spec);
  const codebook::DistanceReport rep = codebook::min_distance(cb);
  const channel::cdouble source =
      channel::source_from_phase_deg(spec.source_phase_deg);

  SweepResult res;
  res.kind = SweepKind::snr;
  res.bound_only = spec.bound_only;
  res.trials = spec.trials;
  for (double snr : snr_grid(spec)) {
    SweepRow row;
    row.snr_db = snr;
    row.m = cb.sensors();
    row.n = cb.size();
    row.dmin = rep.dmin;
    row.bound = codebook::pe_upper_bound(cb.sensors(), cb.size(),
                                         channel::snr_to_sigma(snr), rep.dmin);
    if (!spec.bound_only) {
      // Each SNR point owns an independent trial universe keyed by the
      // bit pattern of its SNR value.
      const std::uint64_t row_seed =
          rng::derive(spec.seed, std::bit_cast<std::uint64_t>(snr), 2);
      const PeEstimate e = estimate_pe(cb, snr, spec.trials, row_seed,
                                       spec.threads, source);
      row.pe = e.pe;
      row.stderr_value = e.stderr_value;
      row.errors = e.errors;
      row.trials = e.trials;
    }
    res.rows.push_back(row);
  }
  return res;
}

SweepResult sweep_m(const SweepSpec& spec) {
  if (spec.trials < 1) throw std::domain_error("sweep: trials must be >= 1");
  if (spec.m_min < 2) throw std::domain_error("sweep: m-min must be >= 2");
  if (spec.m_max < spec.m_min)
    throw std::domain_error("sweep: m range is empty");
  if (spec.family == Family::custom)
    throw std::domain_error("sweep_m: family must be bose-chowla or ula");
  const channel::cdouble source =
      channel::source_from_phase_deg(spec.source_phase_deg);
  const double sigma = channel::snr_to_sigma(spec.snr_db);

  SweepResult res;
  res.kind = SweepKind::m;
  res.bound_only = spec.bound_only;
  res.trials = spec.trials;
  for (std::int64_t m = spec.m_min; m <= spec.m_max; ++m) {
    if (spec.family == Family::bose_chowla &&
        !gf::try_prime_power(static_cast<std::uint64_t>(m))) {
      res.skipped_m.push_back(m);
      continue;
    }
    const codebook::Codebook cb = codebook::build_codebook(
        spec.family == Family::bose_chowla
            ? rulers::bose_chowla(static_cast<std::uint64_t>(m))
            : rulers::ula(m, m * m - 1));
    const codebook::DistanceReport rep = codebook::min_distance(cb);

    SweepRow row;
    row.snr_db = spec.snr_db;
    row.m = cb.sensors();
    row.n = cb.size();
    row.dmin = rep.dmin;
    row.bound =
        codebook::pe_upper_bound(cb.sensors(), cb.size(), sigma, rep.dmin);
    if (!spec.bound_only) {
      const std::uint64_t row_seed =
          rng::derive(spec.seed, static_cast<std::uint64_t>(m), 2);
      const PeEstimate e = estimate_pe(cb, spec.snr_db, spec.trials, row_seed,
                                       spec.threads, source);
      row.pe = e.pe;
      row.stderr_value = e.stderr_value;
      row.errors = e.errors;
      row.trials = e.trials;
    }
    res.rows.push_back(row);
  }
  return res;
}

std::string to_csv(const SweepResult& res) {
  std::ostringstream os;
  const auto& f = format_sig12;
  bool zero_error_row = false;

  if (res.kind == SweepKind::snr) {
    os << (res.bound_only ? "snr_db,dmin,bound\n"
                          : "snr_db,dmin,pe,stderr,bound,errors,trials\n");
    for (const SweepRow& r : res.rows) {
      if (res.bound_only) {
        os << f(r.snr_db) << ',' << f(r.dmin) << ',' << f(r.bound) << '\n';
      } else {
        os << f(r.snr_db) << ',' << f(r.dmin) << ',' << f(r.pe) << ','
           << f(r.stderr_value) << ',' << f(r.bound) << ',' << r.errors << ','
           << r.trials << '\n';
        zero_error_row |= r.errors == 0;
      }
    }
  } else {
    os << (res.bound_only ? "M,N,dmin,bound\n"
                          : "M,N,dmin,pe,stderr,bound,errors,trials\n");
    std::size_t ri = 0, si = 0;
    while (ri < res.rows.size() || si < res.skipped_m.size()) {
      if (si < res.skipped_m.size() &&
          (ri == res.rows.size() || res.skipped_m[si] < res.rows[ri].m)) {
        os << "# skipped M=" << res.skipped_m[si] << " (not a prime power)\n";
        ++si;
        continue;
      }
      const SweepRow& r = res.rows[ri++];
      if (res.bound_only) {
        os << r.m << ',' << r.n << ',' << f(r.dmin) << ',' << f(r.bound)
           << '\n';
      } else {
        os << r.m << ',' << r.n << ',' << f(r.dmin) << ',' << f(r.pe) << ','
           << f(r.stderr_value) << ',' << f(r.bound) << ',' << r.errors << ','
           << r.trials << '\n';
        zero_error_row |= r.errors == 0;
      }
    }
  }

  if (zero_error_row)
    os << "# pe_upper95=" << f(zero_error_upper95(res.trials)) << '\n';
  return os.str();
}

void write_csv(const SweepResult& res, std::ostream& out) { out << to_csv(res); }

}  // namespace ssc::sim
