#pragma once

// Simulation sweeps over sample sizes: MSE tables for the known- and
// unknown-density radius estimators, log-log rate regression, CSV/JSON output.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace sphdeconv {

enum class BenchMode { KnownF, UnknownF, Both };

BenchMode parse_bench_mode(const std::string& s);
std::string to_string(BenchMode m);

struct BenchSpec {
  int scenario = 1;
  std::vector<std::size_t> n_values{100, 1000, 10000};
  int replications = 10;
  BenchMode mode = BenchMode::Both;
  std::string out_path;
  std::uint64_t base_seed = 42;
  int threads = 0;  ///< replication workers (0 = hardware concurrency)

  // estimator settings
  double alpha = 1.0;  ///< N = floor(alpha log n / log log n)
  double R_min = 0.5;
  double R_max = 10.0;
  int restarts = 8;
  std::optional<int> K;  ///< default max(N, 4)
  double nu_est = 0.5;  ///< integration box of the simulation study (library default is 1.0)
  int nodes_per_axis = 33;

  /// Sample sizes 10^2 ... 10^6 and 30 replications.
  static BenchSpec full(int scenario);
  void validate() const;
};

struct BenchRow {
  std::size_t n = 0;
  std::string mode;  ///< "known_f" or "unknown_f"
  double mse_R = 0.0;
  double mse_C = 0.0;           ///< NaN when the scenario noise is not centred
  double l2_density_err = 0.0;  ///< NaN for known_f
  int reps = 0;
  std::uint64_t base_seed = 0;
  double median_abs_err_R = 0.0;
  int failures = 0;
  double wall_ms = 0.0;  ///< mean per replication; excluded from the determinism hash
};

/// Seed of replication `rep` for sample size n.
std::uint64_t replication_seed(std::uint64_t base_seed, int scenario, std::size_t n, int rep);

/// Rows ordered by n, then known_f before unknown_f. Estimator failures are
/// counted per cell; statistics use the successful replications.
std::vector<BenchRow> run_bench(const BenchSpec& spec);

/// Run description stored with the table (integration method, RNG, ...).
nlohmann::json bench_metadata(const BenchSpec& spec);

struct RateFit {
  std::string mode;
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;  ///< NaN with exactly two points
  int points = 0;
};

/// OLS of log(median |R^ - R*|) on log n over the rows of one mode. Throws
/// ConfigError with fewer than 3 distinct n, NumericalError on degenerate
/// input (non-positive or non-finite errors).
RateFit rate_regression(std::span<const BenchRow> rows, const std::string& mode);
/// One fit per mode present in `rows`, in order of first appearance.
std::vector<RateFit> rate_regression(std::span<const BenchRow> rows);

enum class EmitFormat { Csv, Json };
EmitFormat format_for_path(const std::string& path);

std::string bench_csv(std::span<const BenchRow> rows, const nlohmann::json& metadata = {});
nlohmann::json bench_json(std::span<const BenchRow> rows, const nlohmann::json& metadata = {});
void emit(std::span<const BenchRow> rows, EmitFormat format, const std::string& path,
          const nlohmann::json& metadata = {});

std::vector<BenchRow> read_bench_csv(const std::string& path);
std::vector<BenchRow> read_bench_json(const std::string& path);
std::vector<BenchRow> read_bench(const std::string& path);

/// FNV-1a 64 of the CSV rows with the wall_ms column removed.
std::uint64_t determinism_hash(std::span<const BenchRow> rows);

}  // namespace sphdeconv
