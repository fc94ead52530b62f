#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include "ssc/codebook.hpp"
#include "ssc/rulers.hpp"
#include "ssc/sim.hpp"

using namespace ssc;
using codebook::Codebook;

namespace {

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

std::size_t count_lines(const std::string& s) {
  std::size_t k = 0;
  for (char c : s) k += (c == '\n');
  return k;
}

}  // namespace

TEST_CASE("12-significant-digit formatting") {
  CHECK(sim::format_sig12(2.0 / 3.0) == "0.666666666667");
  CHECK(sim::format_sig12(1.0) == "1");
  CHECK(sim::format_sig12(0.0) == "0");
  CHECK(sim::format_sig12(-10.0) == "-10");
  CHECK(sim::format_sig12(0.75) == "0.75");
  CHECK(sim::format_sig12(357.7130123361967) == "357.713012336");
  CHECK(sim::format_sig12(1.3857890619822674e-07) == "1.38578906198e-07");
  CHECK(sim::format_sig12(3.0000000000000013) == "3");
}

TEST_CASE("zero-error upper bound") {
  CHECK(sim::zero_error_upper95(1) == doctest::Approx(0.95).epsilon(1e-12));
  CHECK(sim::zero_error_upper95(10000) ==
        doctest::Approx(-std::expm1(std::log(0.05) / 1e4)).epsilon(1e-12));
  CHECK(sim::zero_error_upper95(100) > sim::zero_error_upper95(1000));
  CHECK_THROWS_AS(sim::zero_error_upper95(0), std::domain_error);
}

TEST_CASE("noiseless error rate is zero") {
  const Codebook cb(rulers::bose_chowla(3));
  const sim::PeEstimate e = sim::estimate_pe(
      cb, std::numeric_limits<double>::infinity(), 500, 42);
  CHECK(e.errors == 0);
  CHECK(e.pe == 0.0);
  CHECK(e.stderr_value == 0.0);
  CHECK(e.trials == 500);
}

TEST_CASE("deep-noise error rate approaches (N-1)/N") {
  // At sigma = 1000 the decoder output is essentially uniform on the N
  // grid lines, so pe ~ 7/8 for bose_chowla(3).
  const Codebook cb(rulers::bose_chowla(3));
  const sim::PeEstimate e = sim::estimate_pe(cb, -60.0, 10000, 42);
  const double expect = 7.0 / 8.0;
  const double guard =
      3.0 * std::sqrt(expect * (1.0 - expect) / static_cast<double>(e.trials));
  CHECK(std::abs(e.pe - expect) <= guard);
}

TEST_CASE("single-trial estimates are degenerate") {
  const Codebook cb(rulers::bose_chowla(3));
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL}) {
    const sim::PeEstimate e = sim::estimate_pe(cb, -5.0, 1, seed);
    CHECK((e.pe == 0.0 || e.pe == 1.0));
    CHECK(e.stderr_value == 0.0);
  }
}

TEST_CASE("high-snr bose-chowla(19) records no errors") {
  const Codebook cb(rulers::bose_chowla(19));
  const sim::PeEstimate e = sim::estimate_pe(cb, 10.0, 10000, 42);
  CHECK(e.errors == 0);
}

TEST_CASE("estimates are deterministic and thread-invariant") {
  const Codebook cb(rulers::bose_chowla(5));
  const sim::PeEstimate a = sim::estimate_pe(cb, 0.0, 4000, 9, 1);
  const sim::PeEstimate b = sim::estimate_pe(cb, 0.0, 4000, 9, 1);
  CHECK(a.errors == b.errors);
  for (int threads : {2, 3, 4, 7}) {
    const sim::PeEstimate c = sim::estimate_pe(cb, 0.0, 4000, 9, threads);
    CHECK(c.errors == a.errors);
  }
  const sim::PeEstimate d = sim::estimate_pe(cb, 0.0, 4000, 10, 1);
  CHECK(d.errors != a.errors);  // different seed, different universe
}

TEST_CASE("doubling trials moves the estimate less than 4 combined stderr") {
  const Codebook cb(rulers::bose_chowla(5));
  const sim::PeEstimate a = sim::estimate_pe(cb, 0.0, 10000, 77);
  const sim::PeEstimate b = sim::estimate_pe(cb, 0.0, 20000, 78);
  CHECK(std::abs(a.pe - b.pe) < 4.0 * (a.stderr_value + b.stderr_value));
}

TEST_CASE("estimate validation") {
  const Codebook cb(rulers::bose_chowla(3));
  CHECK_THROWS_AS(sim::estimate_pe(cb, 0.0, 0, 1), std::domain_error);
  CHECK_THROWS_AS(
      sim::estimate_pe(cb, 0.0, 10, 1, 1, channel::cdouble(2.0, 0.0)),
      std::domain_error);
}

TEST_CASE("snr sweep") {
  sim::SweepSpec spec;
  spec.family = sim::Family::bose_chowla;
  spec.m = 3;
  spec.snr_min = 0.0;
  spec.snr_max = 5.0;
  spec.snr_step = 2.5;
  spec.trials = 400;
  spec.seed = 11;
  const sim::SweepResult res = sim::sweep_snr(spec);
  REQUIRE(res.rows.size() == 3);
  CHECK(res.rows[0].snr_db == 0.0);
  CHECK(res.rows[1].snr_db == 2.5);
  CHECK(res.rows[2].snr_db == 5.0);
  for (const sim::SweepRow& r : res.rows) {
    CHECK(r.m == 3);
    CHECK(r.n == 8);
    CHECK(r.dmin == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(r.errors >= 0);
    CHECK(r.errors <= r.trials);
    CHECK(r.pe == doctest::Approx(static_cast<double>(r.errors) / r.trials));
  }
  // The union-bound column is nonincreasing in SNR.
  for (std::size_t i = 1; i < res.rows.size(); ++i)
    CHECK(res.rows[i].bound <= res.rows[i - 1].bound + 1e-15);

  const std::string csv = sim::to_csv(res);
  CHECK(contains(csv, "snr_db,dmin,pe,stderr,bound,errors,trials\n"));
  CHECK(count_lines(csv) >= 4);
  CHECK(sim::to_csv(sim::sweep_snr(spec)) == csv);  // reproducible

  sim::SweepSpec threaded = spec;
  threaded.threads = 4;
  CHECK(sim::to_csv(sim::sweep_snr(threaded)) == csv);  // partition-invariant
}

TEST_CASE("snr sweep geometries") {
  sim::SweepSpec spec;
  spec.family = sim::Family::ula;
  spec.m = 4;
  spec.snr_min = 0.0;
  spec.snr_max = 1.0;
  spec.snr_step = 1.0;
  spec.trials = 50;
  CHECK(sim::sweep_snr(spec).rows[0].n == 15);
  spec.n = 20;
  CHECK(sim::sweep_snr(spec).rows[0].n == 20);

  sim::SweepSpec custom;
  custom.family = sim::Family::custom;
  custom.custom = rulers::make_ruler({0, 1, 4}, 9);
  custom.snr_min = 0.0;
  custom.snr_max = 0.0;
  custom.trials = 50;
  const sim::SweepResult res = sim::sweep_snr(custom);
  CHECK(res.rows.size() == 1);
  CHECK(res.rows[0].m == 3);
  CHECK(res.rows[0].n == 9);

  sim::SweepSpec missing;
  missing.family = sim::Family::custom;
  CHECK_THROWS_AS(sim::sweep_snr(missing), std::domain_error);

  sim::SweepSpec bad;
  bad.family = sim::Family::bose_chowla;
  bad.m = 6;  // not a prime power
  CHECK_THROWS_AS(sim::sweep_snr(bad), std::domain_error);
}

TEST_CASE("snr sweep grid validation") {
  sim::SweepSpec spec;
  spec.family = sim::Family::bose_chowla;
  spec.m = 3;
  spec.trials = 10;

  spec.snr_min = spec.snr_max = 3.0;
  CHECK(sim::sweep_snr(spec).rows.size() == 1);

  spec.snr_max = 2.0;
  CHECK_THROWS_AS(sim::sweep_snr(spec), std::domain_error);

  spec.snr_max = 4.0;
  spec.snr_step = 0.0;
  CHECK_THROWS_AS(sim::sweep_snr(spec), std::domain_error);

  spec.snr_step = 1.0;
  spec.trials = 0;
  CHECK_THROWS_AS(sim::sweep_snr(spec), std::domain_error);
}

TEST_CASE("bound-only snr sweep") {
  sim::SweepSpec spec;
  spec.family = sim::Family::bose_chowla;
  spec.m = 3;
  spec.snr_min = -2.0;
  spec.snr_max = 2.0;
  spec.snr_step = 2.0;
  spec.bound_only = true;
  const std::string csv = sim::to_csv(sim::sweep_snr(spec));
  CHECK(contains(csv, "snr_db,dmin,bound\n"));
  CHECK_FALSE(contains(csv, "stderr"));
  CHECK_FALSE(contains(csv, "pe_upper95"));
  CHECK(count_lines(csv) == 4);
}

TEST_CASE("sensor-count sweep skips non prime powers") {
  sim::SweepSpec spec;
  spec.family = sim::Family::bose_chowla;
  spec.m_min = 2;
  spec.m_max = 10;
  spec.bound_only = true;
  const sim::SweepResult res = sim::sweep_m(spec);
  REQUIRE(res.rows.size() == 7);  // 2 3 4 5 7 8 9
  CHECK(res.skipped_m == std::vector<std::int64_t>{6, 10});
  CHECK(res.rows[0].m == 2);
  CHECK(res.rows[0].n == 3);
  CHECK(res.rows.back().m == 9);
  CHECK(res.rows.back().n == 80);

  const std::string csv = sim::to_csv(res);
  CHECK(contains(csv, "M,N,dmin,bound\n"));
  CHECK(contains(csv, "# skipped M=6 (not a prime power)\n"));
  CHECK(contains(csv, "# skipped M=10 (not a prime power)\n"));
  // Skip comments sit in M order: row 5 < comment 6 < row 7.
  CHECK(csv.find("5,24") < csv.find("# skipped M=6"));
  CHECK(csv.find("# skipped M=6") < csv.find("7,48"));
  CHECK(csv.find("9,80") < csv.find("# skipped M=10"));
}

TEST_CASE("sensor-count sweep for ULAs") {
  sim::SweepSpec spec;
  spec.family = sim::Family::ula;
  spec.m_min = 2;
  spec.m_max = 5;
  spec.snr_db = 0.0;
  spec.trials = 100;
  spec.seed = 5;
  const sim::SweepResult res = sim::sweep_m(spec);
  REQUIRE(res.rows.size() == 4);
  CHECK(res.skipped_m.empty());
  for (const sim::SweepRow& r : res.rows) {
    CHECK(r.n == r.m * r.m - 1);
    CHECK(r.trials == 100);
  }
  CHECK(sim::to_csv(res) == sim::to_csv(sim::sweep_m(spec)));
}

TEST_CASE("sensor-count sweep validation") {
  sim::SweepSpec spec;
  spec.family = sim::Family::custom;
  CHECK_THROWS_AS(sim::sweep_m(spec), std::domain_error);
  spec.family = sim::Family::ula;
  spec.m_min = 1;
  CHECK_THROWS_AS(sim::sweep_m(spec), std::domain_error);
  spec.m_min = 5;
  spec.m_max = 4;
  CHECK_THROWS_AS(sim::sweep_m(spec), std::domain_error);
}

TEST_CASE("zero-error rows add the confidence note") {
  sim::SweepSpec spec;
  spec.family = sim::Family::ula;
  spec.m = 2;
  spec.n = 3;
  spec.snr_min = 40.0;
  spec.snr_max = 40.0;
  spec.trials = 200;
  const sim::SweepResult res = sim::sweep_snr(spec);
  REQUIRE(res.rows.size() == 1);
  REQUIRE(res.rows[0].errors == 0);
  const std::string csv = sim::to_csv(res);
  const std::string expect_note =
      "# pe_upper95=" + sim::format_sig12(sim::zero_error_upper95(200)) + "\n";
  CHECK(contains(csv, expect_note));
}

TEST_CASE("csv floats use 12 significant digits") {
  sim::SweepSpec spec;
  spec.family = sim::Family::bose_chowla;
  spec.m = 3;
  spec.snr_min = -10.0;
  spec.snr_max = -10.0;
  spec.bound_only = true;
  const std::string csv = sim::to_csv(sim::sweep_snr(spec));
  CHECK(contains(csv, "-10,0.666666666667,1\n"));
}
