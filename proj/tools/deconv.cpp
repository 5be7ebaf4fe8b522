// deconv: simulation sweeps, estimation from files, data generation and
// density export. Exit codes: 0 success, 2 configuration error, 3 numerical
// failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sphdeconv/bench.hpp"
#include "sphdeconv/error.hpp"
#include "sphdeconv/estimators.hpp"
#include "sphdeconv/sample_io.hpp"
#include "sphdeconv/serialize.hpp"
#include "sphdeconv/simulate.hpp"

using namespace sphdeconv;

namespace {

std::vector<std::size_t> parse_sizes(const std::string& csv) {
  std::vector<std::size_t> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(item, &pos);
      if (pos != item.size() || !(v >= 1.0) || v != std::floor(v)) throw std::invalid_argument(item);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw ConfigError("--n: invalid sample size '" + item + "'");
    }
  }
  return out;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

AngleDensity load_density(const std::string& spec) {
  if (spec == "uniform" || spec == "vonmises_like") return AngleDensity::named(spec);
  return density_from_json(read_json_file(spec));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radius, center and angle-density estimation for noisy points on a sphere"};
  app.require_subcommand(1);

  // bench
  auto* bench = app.add_subcommand("bench", "MSE tables over sample sizes for a preset scenario");
  BenchSpec bspec;
  std::string n_list = "100,1000,10000";
  std::string mode = "both";
  bool full = false;
  std::optional<int> bench_K;
  bench->add_option("--scenario", bspec.scenario, "Scenario 1-4")->check(CLI::Range(1, 4));
  bench->add_option("--n", n_list, "Comma-separated sample sizes");
  bench->add_option("--reps", bspec.replications, "Replications per sample size");
  bench->add_option("--mode", mode, "known_f, unknown_f or both");
  bench->add_option("--seed", bspec.base_seed, "Base seed");
  bench->add_option("--out", bspec.out_path, "Output file (.csv or .json)");
  bench->add_flag("--full", full, "Sample sizes 1e2..1e6 with 30 replications (hours)");
  bench->add_option("--threads", bspec.threads, "Worker threads (0 = all cores)");
  bench->add_option("--alpha", bspec.alpha, "Truncation constant");
  bench->add_option("--rmin", bspec.R_min, "Lower radius bound");
  bench->add_option("--rmax", bspec.R_max, "Upper radius bound");
  bench->add_option("--restarts", bspec.restarts, "Optimizer restarts");
  bench->add_option("--K", bench_K, "Fourier cutoff (default max(N, 4))");
  bench->add_option("--nu-est", bspec.nu_est, "Half-width of the integration box");
  bench->add_option("--nodes", bspec.nodes_per_axis, "Gauss-Legendre nodes per axis");

  // estimate
  auto* estimate = app.add_subcommand("estimate", "Fit radius, center and density to a sample file");
  std::string input, est_out, known;
  FitConfig fcfg;
  double nu = 0.5, nu_est = EvalGrid::kDefaultNuEst, est_alpha = 1.0;
  int nodes = EvalGrid::kDefaultNodes;
  std::optional<int> est_K;
  std::optional<std::uint64_t> est_seed;
  bool probes = false;
  estimate->add_option("--input", input, "Sample file (CSV or binary)")->required();
  estimate->add_option("--rmin", fcfg.R_min, "Lower radius bound");
  estimate->add_option("--rmax", fcfg.R_max, "Upper radius bound");
  estimate->add_option("--nu", nu, "Frequency bound nu (recorded in the report)");
  estimate->add_option("--nu-est", nu_est, "Half-width of the integration box");
  estimate->add_option("--nodes", nodes, "Gauss-Legendre nodes per axis");
  estimate->add_option("--alpha", est_alpha, "Truncation constant used to size K");
  estimate->add_option("--K", est_K, "Fourier cutoff (default max(N, 4))");
  estimate->add_option("--restarts", fcfg.restarts, "Optimizer restarts");
  estimate->add_option("--threads", fcfg.threads, "Restart workers (0 = all cores)");
  estimate->add_option("--seed", est_seed, "Seed for perturbed restarts (default: sample seed)");
  estimate->add_option("--known-density", known,
                       "Known angle density: uniform, vonmises_like or a density JSON file");
  estimate->add_flag("--probes", probes, "Include every evaluated point in the report");
  estimate->add_option("--out", est_out, "Report JSON (stdout when omitted)");

  // generate
  auto* generate_cmd = app.add_subcommand("generate", "Simulate a sample from a preset scenario");
  int gen_scenario = 1;
  std::size_t gen_n = 1000;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  bool no_noise = false;
  generate_cmd->add_option("--scenario", gen_scenario, "Scenario 1-4")->check(CLI::Range(1, 4));
  generate_cmd->add_option("--n", gen_n, "Sample size")->check(CLI::PositiveNumber);
  generate_cmd->add_option("--seed", gen_seed, "Seed");
  generate_cmd->add_option("--out", gen_out, "Output file (.bin for binary, CSV otherwise)")->required();
  generate_cmd->add_flag("--no-noise", no_noise, "Drop the noise term");

  // density
  auto* density = app.add_subcommand("density", "Tabulate the truncated density estimate");
  std::string report_path, dens_out;
  double dens_alpha = 0.45;
  int dens_grid = 512;
  std::optional<std::size_t> dens_n;
  density->add_option("--report", report_path, "Report JSON from 'estimate'")->required();
  density->add_option("--alpha", dens_alpha, "Truncation constant");
  density->add_option("--grid", dens_grid, "Number of points in (0, 1)")->check(CLI::PositiveNumber);
  density->add_option("--n", dens_n, "Sample size for N (default: the report's n)");
  density->add_option("--out", dens_out, "Output CSV (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*bench) {
      if (full) {
        const BenchSpec f = BenchSpec::full(bspec.scenario);
        bspec.n_values = f.n_values;
        bspec.replications = f.replications;
      } else {
        bspec.n_values = parse_sizes(n_list);
      }
      bspec.mode = parse_bench_mode(mode);
      bspec.K = bench_K;
      const auto rows = run_bench(bspec);
      const auto meta = bench_metadata(bspec);
      if (!bspec.out_path.empty()) emit(rows, format_for_path(bspec.out_path), bspec.out_path, meta);
      std::cout << bench_csv(rows);
      std::vector<std::string> modes;
      for (const auto& r : rows)
        if (std::find(modes.begin(), modes.end(), r.mode) == modes.end()) modes.push_back(r.mode);
      for (const auto& m : modes) {
        try {
          const auto fit = rate_regression(rows, m);
          std::cout << "rate " << m << ": slope=" << fit.slope << " se=" << fit.slope_se
                    << " intercept=" << fit.intercept << "\n";
        } catch (const std::exception& e) {
          std::cout << "rate " << m << ": " << e.what() << "\n";
        }
      }
      char hash[32];
      std::snprintf(hash, sizeof hash, "%016llx",
                    static_cast<unsigned long long>(determinism_hash(rows)));
      std::cout << "determinism_hash=" << hash << "\n";
      return 0;
    }

    if (*estimate) {
      const Sample sample = read_sample(input);
      const EvalGrid grid(sample.dim, nu_est, nodes);
      FitConfig cfg = FitConfig::for_sample_size(std::max<std::size_t>(sample.size(), 3), est_alpha);
      cfg.R_min = fcfg.R_min;
      cfg.R_max = fcfg.R_max;
      cfg.restarts = fcfg.restarts;
      cfg.threads = fcfg.threads;
      cfg.record_probes = probes;
      cfg.seed = est_seed.value_or(sample.seed);
      if (est_K) {
        cfg.K = *est_K;
        cfg.N_trunc = std::min(cfg.N_trunc, cfg.K);
      }
      const EstimateReport rep = known.empty()
                                     ? fit_joint(sample, cfg, grid)
                                     : fit_radius_known_density(sample, load_density(known), cfg, grid);
      auto j = report_to_json(rep);
      j["nu"] = nu;
      if (est_out.empty())
        std::cout << j.dump(2) << "\n";
      else
        write_json_file(est_out, j);
      return 0;
    }

    if (*generate_cmd) {
      Scenario scn = Scenario::preset(gen_scenario);
      if (no_noise) scn = scn.without_noise();
      const Sample s = generate(scn, gen_n, gen_seed);
      if (ends_with(gen_out, ".bin"))
        write_sample_binary(gen_out, s);
      else
        write_sample_csv(gen_out, s);
      return 0;
    }

    if (*density) {
      const EstimateReport rep = report_from_json(read_json_file(report_path));
      const auto T = truncate_density(rep, dens_n.value_or(rep.n), dens_alpha);
      std::ofstream file;
      if (!dens_out.empty()) {
        file.open(dens_out);
        if (!file) throw ConfigError("cannot open " + dens_out + " for writing");
      }
      std::ostream& os = dens_out.empty() ? std::cout : file;
      os.precision(17);
      os << "x,density\n";
      for (int i = 0; i < dens_grid; ++i) {
        const double x = (i + 0.5) / dens_grid;
        os << x << "," << T(x) << "\n";
      }
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
