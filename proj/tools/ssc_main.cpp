// ssc: sensing subspace code toolkit command line.
//
// Subcommands: ruler (construct/verify geometries), code (distances and
// beampatterns), sim (Monte Carlo SNR / array-size sweeps).  Exit codes:
// 0 success, 1 usage or domain error, 2 verification failure.

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ssc/channel.hpp"
#include "ssc/codebook.hpp"
#include "ssc/rulers.hpp"
#include "ssc/sim.hpp"

namespace {

using ssc::sim::format_sig12;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerifyFailed = 2;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + out_path);
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("failed writing output file: " + out_path);
}

// Geometry selection shared by `code` and `sim sweep-snr`.
struct GeometryOpts {
  std::int64_t bc_q = 0;
  std::int64_t ula_m = 0;
  std::int64_t grid_n = 0;  // optional ULA grid size, default M^2 - 1
  std::string file;
};

// Registers --bose-chowla/--ula/--n/--file on a subcommand.  The q-flag
// spelling differs between `code` (--bose-chowla) and `sim` (--q) to
// match the documented invocations; both mean the same thing.
void add_geometry_flags(CLI::App* cmd, GeometryOpts& g, const char* q_flag) {
  auto* bc = cmd->add_option(q_flag, g.bc_q,
                             "Bose-Chowla parameter q (prime power); N = q^2-1");
  auto* ula = cmd->add_option("--ula", g.ula_m, "ULA sensor count M");
  auto* file =
      cmd->add_option("--file", g.file, "Custom ruler file (N=... header)");
  cmd->add_option("--n", g.grid_n, "Grid size N for --ula (default M^2-1)");
  bc->excludes(ula);
  bc->excludes(file);
  ula->excludes(file);
}

ssc::rulers::Ruler geometry_ruler(const GeometryOpts& g) {
  const int specified =
      (g.bc_q != 0 ? 1 : 0) + (g.ula_m != 0 ? 1 : 0) + (!g.file.empty() ? 1 : 0);
  if (specified != 1)
    throw std::domain_error(
        "select exactly one geometry: a Bose-Chowla q, --ula M, or --file");
  if (g.bc_q != 0) {
    if (g.bc_q < 0) throw std::domain_error("q must be positive");
    if (g.grid_n != 0)
      throw std::domain_error("--n applies only to --ula geometries");
    return ssc::rulers::bose_chowla(static_cast<std::uint64_t>(g.bc_q));
  }
  if (g.ula_m != 0) {
    const std::int64_t n = g.grid_n != 0 ? g.grid_n : g.ula_m * g.ula_m - 1;
    return ssc::rulers::ula(g.ula_m, n);
  }
  return ssc::rulers::load_ruler(g.file);
}

std::string distance_report_text(const ssc::codebook::DistanceReport& rep) {
  std::ostringstream os;
  os << "dmin=" << format_sig12(rep.dmin) << "\n";
  os << "argmin_k=" << rep.argmin_lag << "\n";
  os << "argmin_pair=" << rep.argmin_pair.first << ","
     << rep.argmin_pair.second << "\n";
  os << "max_offpeak=" << format_sig12(rep.max_offpeak) << "\n";
  if (rep.welch) os << "welch=" << format_sig12(*rep.welch) << "\n";
  if (rep.construction_bound)
    os << "bound=" << format_sig12(*rep.construction_bound) << "\n";
  return os.str();
}

std::string beampattern_csv(const ssc::codebook::Codebook& cb) {
  const std::vector<double> b = ssc::codebook::beampattern(cb);
  std::ostringstream os;
  os << "k,B\n";
  for (std::size_t k = 0; k < b.size(); ++k)
    os << k << ',' << format_sig12(b[k]) << "\n";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sensing subspace code toolkit"};
  app.set_config("--config", "",
                 "Read options from a key=value config file ('#' comments; "
                 "command-line flags win)");
  app.require_subcommand(0, 1);

  std::function<int()> action;

  // ruler ------------------------------------------------------------
  CLI::App* ruler = app.add_subcommand("ruler", "Construct or verify rulers");
  ruler->require_subcommand(1);

  {
    auto* bc = ruler->add_subcommand("bose-chowla",
                                     "Print the Bose-Chowla ruler for q");
    auto q = std::make_shared<std::int64_t>(0);
    bc->add_option("--q", *q, "Prime power q")->required();
    bc->callback([q, &action] {
      action = [q] {
        if (*q < 0) throw std::domain_error("q must be positive");
        std::cout << ssc::rulers::to_text(
            ssc::rulers::bose_chowla(static_cast<std::uint64_t>(*q)));
        return kExitOk;
      };
    });
  }
  {
    auto* ul = ruler->add_subcommand("ula", "Print a uniform linear array");
    auto m = std::make_shared<std::int64_t>(0);
    auto n = std::make_shared<std::int64_t>(0);
    ul->add_option("--m", *m, "Sensor count M")->required();
    ul->add_option("--n", *n, "Grid size N (default M^2-1)");
    ul->callback([m, n, &action] {
      action = [m, n] {
        const std::int64_t grid = *n != 0 ? *n : *m * *m - 1;
        std::cout << ssc::rulers::to_text(ssc::rulers::ula(*m, grid));
        return kExitOk;
      };
    });
  }
  {
    auto* vf = ruler->add_subcommand("verify", "Verify a ruler file");
    auto file = std::make_shared<std::string>();
    auto q = std::make_shared<std::int64_t>(0);
    vf->add_option("--file", *file, "Ruler file")->required();
    vf->add_option("--q", *q,
                   "Check the Bose-Chowla perfect-difference property for q");
    vf->callback([file, q, &action] {
      action = [file, q] {
        const ssc::rulers::Ruler r = ssc::rulers::load_ruler(*file);
        std::cout << ssc::rulers::to_text(r);
        std::cout << "M=" << r.size() << "\n";
        if (*q != 0) {
          const ssc::rulers::VerifyReport rep = ssc::rulers::verify_perfect_difference(
              r, static_cast<std::uint64_t>(*q));
          std::cout << "perfect_difference=" << (rep.ok ? "true" : "false")
                    << "\n";
          if (rep.witness) std::cout << "witness=" << *rep.witness << "\n";
          std::cout << "detail=" << rep.detail << "\n";
          return rep.ok ? kExitOk : kExitVerifyFailed;
        }
        const bool golomb = ssc::rulers::is_golomb(r);
        std::cout << "golomb=" << (golomb ? "true" : "false") << "\n";
        return golomb ? kExitOk : kExitVerifyFailed;
      };
    });
  }

  // code -------------------------------------------------------------
  CLI::App* code = app.add_subcommand("code", "Codebook distances and beampatterns");
  code->require_subcommand(1);

  {
    auto* dm = code->add_subcommand("dmin", "Minimum-distance report");
    auto g = std::make_shared<GeometryOpts>();
    add_geometry_flags(dm, *g, "--bose-chowla");
    dm->callback([g, &action] {
      action = [g] {
        const ssc::codebook::Codebook cb =
            ssc::codebook::build_codebook(geometry_ruler(*g));
        std::cout << distance_report_text(ssc::codebook::min_distance(cb));
        return kExitOk;
      };
    });
  }
  {
    auto* bp = code->add_subcommand("beampattern", "Beampattern CSV (k,B)");
    auto g = std::make_shared<GeometryOpts>();
    auto out = std::make_shared<std::string>();
    add_geometry_flags(bp, *g, "--bose-chowla");
    bp->add_option("--out", *out, "Output CSV file (default: stdout)");
    bp->callback([g, out, &action] {
      action = [g, out] {
        const ssc::codebook::Codebook cb =
            ssc::codebook::build_codebook(geometry_ruler(*g));
        emit(beampattern_csv(cb), *out);
        return kExitOk;
      };
    });
  }

  // sim ----------------------------------------------------------------
  CLI::App* sim = app.add_subcommand("sim", "Monte Carlo decoder simulations");
  sim->require_subcommand(1);

  {
    auto* sw = sim->add_subcommand("sweep-snr",
                                   "Error rate vs SNR for one codebook");
    auto g = std::make_shared<GeometryOpts>();
    auto spec = std::make_shared<ssc::sim::SweepSpec>();
    spec->threads = 0;  // CLI default: machine parallelism
    auto out = std::make_shared<std::string>();
    add_geometry_flags(sw, *g, "--q");
    sw->add_option("--snr-min", spec->snr_min, "Lowest SNR in dB")
        ->capture_default_str();
    sw->add_option("--snr-max", spec->snr_max, "Highest SNR in dB")
        ->capture_default_str();
    sw->add_option("--step", spec->snr_step, "SNR step in dB")
        ->capture_default_str();
    sw->add_option("--trials", spec->trials, "Monte Carlo trials per point")
        ->capture_default_str();
    sw->add_option("--seed", spec->seed, "RNG seed")->capture_default_str();
    sw->add_option("--threads", spec->threads,
                   "Worker threads (0 = machine parallelism)");
    sw->add_option("--source-phase-deg", spec->source_phase_deg,
                   "Source phase in degrees")
        ->capture_default_str();
    sw->add_flag("--bound-only", spec->bound_only,
                 "Skip Monte Carlo; emit dmin/bound columns");
    sw->add_option("--out", *out, "Output CSV file (default: stdout)");
    sw->callback([g, spec, out, &action] {
      action = [g, spec, out] {
        ssc::rulers::Ruler r = geometry_ruler(*g);
        switch (r.kind) {
          case ssc::rulers::Kind::bose_chowla:
            spec->family = ssc::sim::Family::bose_chowla;
            spec->m = static_cast<std::int64_t>(r.q);
            break;
          case ssc::rulers::Kind::ula:
            spec->family = ssc::sim::Family::ula;
            spec->m = static_cast<std::int64_t>(r.size());
            spec->n = r.modulus;
            break;
          case ssc::rulers::Kind::custom:
            spec->family = ssc::sim::Family::custom;
            spec->custom = std::move(r);
            break;
        }
        emit(ssc::sim::to_csv(ssc::sim::sweep_snr(*spec)), *out);
        return kExitOk;
      };
    });
  }
  {
    auto* sw = sim->add_subcommand(
        "sweep-m", "Distance and error rate vs sensor count, N = M^2-1");
    auto spec = std::make_shared<ssc::sim::SweepSpec>();
    spec->threads = 0;  // CLI default: machine parallelism
    auto family = std::make_shared<std::string>("bc");
    auto out = std::make_shared<std::string>();
    sw->add_option("--family", *family, "Geometry family: bc or ula")
        ->check(CLI::IsMember({"bc", "ula"}))
        ->capture_default_str();
    sw->add_option("--m-min", spec->m_min, "Smallest sensor count")
        ->capture_default_str();
    sw->add_option("--m-max", spec->m_max, "Largest sensor count")
        ->capture_default_str();
    sw->add_option("--snr", spec->snr_db, "Fixed SNR in dB")
        ->capture_default_str();
    sw->add_option("--trials", spec->trials, "Monte Carlo trials per point")
        ->capture_default_str();
    sw->add_option("--seed", spec->seed, "RNG seed")->capture_default_str();
    sw->add_option("--threads", spec->threads,
                   "Worker threads (0 = machine parallelism)");
    sw->add_option("--source-phase-deg", spec->source_phase_deg,
                   "Source phase in degrees")
        ->capture_default_str();
    sw->add_flag("--bound-only", spec->bound_only,
                 "Skip Monte Carlo; emit dmin/bound columns");
    sw->add_option("--out", *out, "Output CSV file (default: stdout)");
    sw->callback([spec, family, out, &action] {
      action = [spec, family, out] {
        spec->family = (*family == "bc") ? ssc::sim::Family::bose_chowla
                                         : ssc::sim::Family::ula;
        emit(ssc::sim::to_csv(ssc::sim::sweep_m(*spec)), *out);
        return kExitOk;
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (!action) {
    std::cout << app.help();
    return kExitUsage;
  }
  try {
    return action();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
