#include "sphdeconv/bench.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "sphdeconv/error.hpp"
#include "sphdeconv/estimators.hpp"
#include "sphdeconv/parallel.hpp"
#include "sphdeconv/rng.hpp"
#include "sphdeconv/simulate.hpp"

namespace sphdeconv {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::array<const char*, 10> kColumns = {
    "n", "mode", "mse_R", "mse_C", "l2_density_err", "reps", "base_seed",
    "median_abs_err_R", "failures", "wall_ms"};
// Coefficients of the preset densities beyond this index are below 1e-20.
constexpr int kReferenceCutoff = 32;

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  std::array<char, 32> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

double parse_num(const std::string& s, const std::string& ctx) {
  if (s == "nan" || s == "NaN") return kNaN;
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ConfigError(ctx + ": bad number '" + s + "'");
  }
  return v;
}

std::uint64_t parse_u64(const std::string& s, const std::string& ctx) {
  std::uint64_t v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ConfigError(ctx + ": bad integer '" + s + "'");
  }
  return v;
}

double median(std::vector<double> v) {
  if (v.empty()) return kNaN;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return kNaN;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

struct RepOutcome {
  bool ok = false;
  double abs_err_R = 0.0;
  double sq_err_C = 0.0;
  double l2 = kNaN;
  double wall_ms = 0.0;
};

std::string row_text(const BenchRow& r, bool with_wall) {
  std::ostringstream os;
  os << r.n << ',' << r.mode << ',' << fmt(r.mse_R) << ',' << fmt(r.mse_C) << ','
     << fmt(r.l2_density_err) << ',' << r.reps << ',' << r.base_seed << ','
     << fmt(r.median_abs_err_R) << ',' << r.failures;
  if (with_wall) os << ',' << fmt(r.wall_ms);
  return os.str();
}

json num_or_null(double v) { return std::isnan(v) ? json(nullptr) : json(v); }
double num_from(const json& j) { return j.is_null() ? kNaN : j.get<double>(); }

BenchRow aggregate(std::size_t n, const std::string& mode, const std::vector<RepOutcome>& reps,
                   const BenchSpec& spec, bool centred) {
  BenchRow row;
  row.n = n;
  row.mode = mode;
  row.reps = static_cast<int>(reps.size());
  row.base_seed = spec.base_seed;
  std::vector<double> abs_err, sq_err, sq_c, l2, wall;
  for (const auto& r : reps) {
    if (!r.ok) {
      ++row.failures;
      continue;
    }
    abs_err.push_back(r.abs_err_R);
    sq_err.push_back(r.abs_err_R * r.abs_err_R);
    sq_c.push_back(r.sq_err_C);
    l2.push_back(r.l2);
    wall.push_back(r.wall_ms);
  }
  row.mse_R = mean(sq_err);
  row.mse_C = centred ? mean(sq_c) : kNaN;
  row.l2_density_err = mode == "unknown_f" ? mean(l2) : kNaN;
  row.median_abs_err_R = median(abs_err);
  row.wall_ms = mean(wall);
  return row;
}

}  // namespace

BenchMode parse_bench_mode(const std::string& s) {
  if (s == "known_f") return BenchMode::KnownF;
  if (s == "unknown_f") return BenchMode::UnknownF;
  if (s == "both") return BenchMode::Both;
  throw ConfigError("unknown mode '" + s + "' (expected known_f, unknown_f or both)");
}

std::string to_string(BenchMode m) {
  switch (m) {
    case BenchMode::KnownF: return "known_f";
    case BenchMode::UnknownF: return "unknown_f";
    case BenchMode::Both: return "both";
  }
  return "both";
}

BenchSpec BenchSpec::full(int scenario) {
  BenchSpec s;
  s.scenario = scenario;
  s.n_values = {100,   200,   300,   400,    500,    1000,   2000,   3000,  5000,
                10000, 50000, 75000, 100000, 300000, 500000, 800000, 1000000};
  s.replications = 30;
  return s;
}

void BenchSpec::validate() const {
  if (scenario < 1 || scenario > 4) throw ConfigError("bench: scenario must be 1-4");
  if (n_values.empty()) throw ConfigError("bench: no sample sizes");
  if (!std::is_sorted(n_values.begin(), n_values.end()) ||
      std::adjacent_find(n_values.begin(), n_values.end()) != n_values.end()) {
    throw ConfigError("bench: sample sizes must be strictly increasing");
  }
  if (n_values.front() < 50) throw ConfigError("bench: sample sizes must be >= 50");
  if (replications < 1) throw ConfigError("bench: replications must be >= 1");
  if (threads < 0) throw ConfigError("bench: threads must be >= 0");
  if (!(alpha > 0.0)) throw ConfigError("bench: alpha must be > 0");
  if (K && *K < 0) throw ConfigError("bench: K must be >= 0");
  if (!(nu_est > 0.0) || nodes_per_axis < 1) throw ConfigError("bench: invalid grid");
  if (!(R_min > 0.0 && R_min < R_max)) throw ConfigError("bench: need 0 < R_min < R_max");
  if (restarts < 1) throw ConfigError("bench: restarts must be >= 1");
}

std::uint64_t replication_seed(std::uint64_t base_seed, int scenario, std::size_t n, int rep) {
  return derive_seed({base_seed, static_cast<std::uint64_t>(scenario), n,
                      static_cast<std::uint64_t>(rep)});
}

std::vector<BenchRow> run_bench(const BenchSpec& spec) {
  spec.validate();
  const Scenario scn = Scenario::preset(spec.scenario);
  const EvalGrid grid(scn.dim(), spec.nu_est, spec.nodes_per_axis);
  const auto f_ref = fourier_coefficients(scn.density, kReferenceCutoff);
  const bool want_known = spec.mode != BenchMode::UnknownF;
  const bool want_unknown = spec.mode != BenchMode::KnownF;

  std::vector<BenchRow> rows;
  for (std::size_t n : spec.n_values) {
    FitConfig cfg = FitConfig::for_sample_size(n, spec.alpha);
    cfg.R_min = spec.R_min;
    cfg.R_max = spec.R_max;
    cfg.restarts = spec.restarts;
    if (spec.K) {
      cfg.K = *spec.K;
      cfg.N_trunc = std::min(cfg.N_trunc, cfg.K);
    }
    cfg.validate();

    const std::size_t R = static_cast<std::size_t>(spec.replications);
    std::vector<RepOutcome> known(R), unknown(R);
    // Both estimators see the same sample in each replication.
    parallel_for(R, spec.threads, [&](std::size_t rep) {
      const std::uint64_t seed = replication_seed(spec.base_seed, spec.scenario, n,
                                                  static_cast<int>(rep));
      const Sample sample = generate(scn, n, seed);
      auto sq_dist = [&](const std::vector<double>& c) {
        double s = 0.0;
        for (int a = 0; a < scn.dim(); ++a) s += (c[a] - scn.C_star[a]) * (c[a] - scn.C_star[a]);
        return s;
      };
      if (want_known) {
        try {
          const auto rep_k = fit_radius_known_density(sample, scn.density, cfg, grid);
          known[rep] = {true, std::abs(rep_k.R_hat - scn.R_star), sq_dist(rep_k.C_hat), kNaN,
                        rep_k.wall_time_ms};
        } catch (const std::exception&) {
          known[rep].ok = false;
        }
      }
      if (want_unknown) {
        try {
          FitConfig c = cfg;
          c.seed = seed;
          const auto rep_u = fit_joint(sample, c, grid);
          const auto T = truncate_density(rep_u, n, c);
          unknown[rep] = {true, std::abs(rep_u.R_hat - scn.R_star), sq_dist(rep_u.C_hat),
                          T.l2_distance_sq(f_ref), rep_u.wall_time_ms};
        } catch (const std::exception&) {
          unknown[rep].ok = false;
        }
      }
    });
    if (want_known) rows.push_back(aggregate(n, "known_f", known, spec, scn.centered_noise()));
    if (want_unknown) rows.push_back(aggregate(n, "unknown_f", unknown, spec, scn.centered_noise()));
  }
  return rows;
}

json bench_metadata(const BenchSpec& spec) {
  const Scenario scn = Scenario::preset(spec.scenario);
  json ns = json::array();
  for (auto n : spec.n_values) ns.push_back(n);
  return {
      {"scenario", spec.scenario},
      {"noise", scn.noise.describe()},
      {"R_star", scn.R_star},
      {"n_values", ns},
      {"replications", spec.replications},
      {"mode", to_string(spec.mode)},
      {"base_seed", spec.base_seed},
      {"integration", "tensor Gauss-Legendre, " + std::to_string(spec.nodes_per_axis) +
                          " nodes per axis on [-nu_est, nu_est]^2"},
      {"nu_est", spec.nu_est},
      {"alpha", spec.alpha},
      {"R_min", spec.R_min},
      {"R_max", spec.R_max},
      {"restarts", spec.restarts},
      {"rng", "mt19937_64, seeds derived by splitmix64 from (base_seed, scenario, n, rep)"},
  };
}

RateFit rate_regression(std::span<const BenchRow> rows, const std::string& mode) {
  std::vector<double> x, y;
  for (const auto& r : rows) {
    if (r.mode != mode) continue;
    if (!(r.median_abs_err_R > 0.0) || !std::isfinite(r.median_abs_err_R)) {
      throw NumericalError("rate_regression: non-positive or non-finite error at n = " +
                           std::to_string(r.n));
    }
    if (std::find(x.begin(), x.end(), std::log(static_cast<double>(r.n))) != x.end()) {
      throw ConfigError("rate_regression: duplicate n = " + std::to_string(r.n));
    }
    x.push_back(std::log(static_cast<double>(r.n)));
    y.push_back(std::log(r.median_abs_err_R));
  }
  if (x.size() < 3) throw ConfigError("rate_regression: need at least 3 distinct n for " + mode);
  const double m = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw NumericalError("rate_regression: constant log n");
  RateFit fit;
  fit.mode = mode;
  fit.points = static_cast<int>(x.size());
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - fit.intercept - fit.slope * x[i];
    ssr += e * e;
  }
  fit.slope_se = std::sqrt(ssr / (m - 2.0) / sxx);
  return fit;
}

std::vector<RateFit> rate_regression(std::span<const BenchRow> rows) {
  std::vector<std::string> modes;
  for (const auto& r : rows)
    if (std::find(modes.begin(), modes.end(), r.mode) == modes.end()) modes.push_back(r.mode);
  std::vector<RateFit> out;
  for (const auto& m : modes) out.push_back(rate_regression(rows, m));
  return out;
}

EmitFormat format_for_path(const std::string& path) {
  const auto dot = path.rfind('.');
  if (dot != std::string::npos && path.substr(dot) == ".json") return EmitFormat::Json;
  return EmitFormat::Csv;
}

std::string bench_csv(std::span<const BenchRow> rows, const json& metadata) {
  std::ostringstream os;
  if (metadata.is_object()) {
    for (const auto& [k, v] : metadata.items()) os << "# " << k << "=" << v.dump() << "\n";
  }
  for (std::size_t c = 0; c < kColumns.size(); ++c) os << (c ? "," : "") << kColumns[c];
  os << "\n";
  for (const auto& r : rows) os << row_text(r, true) << "\n";
  return os.str();
}

json bench_json(std::span<const BenchRow> rows, const json& metadata) {
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"n", r.n},
                   {"mode", r.mode},
                   {"mse_R", num_or_null(r.mse_R)},
                   {"mse_C", num_or_null(r.mse_C)},
                   {"l2_density_err", num_or_null(r.l2_density_err)},
                   {"reps", r.reps},
                   {"base_seed", r.base_seed},
                   {"median_abs_err_R", num_or_null(r.median_abs_err_R)},
                   {"failures", r.failures},
                   {"wall_ms", num_or_null(r.wall_ms)}});
  }
  return {{"metadata", metadata.is_null() ? json::object() : metadata}, {"rows", arr}};
}

void emit(std::span<const BenchRow> rows, EmitFormat format, const std::string& path,
          const json& metadata) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open " + path + " for writing");
  if (format == EmitFormat::Csv)
    os << bench_csv(rows, metadata);
  else
    os << bench_json(rows, metadata).dump(2) << "\n";
  if (!os) throw ConfigError("write failed: " + path);
}

std::vector<BenchRow> read_bench_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open " + path);
  std::vector<BenchRow> rows;
  std::string line;
  bool header = false;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    const std::string ctx = path + ":" + std::to_string(lineno);
    if (!header) {
      for (std::size_t c = 0; c < kColumns.size(); ++c) {
        if (f.size() != kColumns.size() || f[c] != kColumns[c]) {
          throw ConfigError(ctx + ": unexpected column header");
        }
      }
      header = true;
      continue;
    }
    if (f.size() != kColumns.size()) throw ConfigError(ctx + ": wrong number of columns");
    BenchRow r;
    r.n = parse_u64(f[0], ctx);
    r.mode = f[1];
    r.mse_R = parse_num(f[2], ctx);
    r.mse_C = parse_num(f[3], ctx);
    r.l2_density_err = parse_num(f[4], ctx);
    r.reps = static_cast<int>(parse_u64(f[5], ctx));
    r.base_seed = parse_u64(f[6], ctx);
    r.median_abs_err_R = parse_num(f[7], ctx);
    r.failures = static_cast<int>(parse_u64(f[8], ctx));
    r.wall_ms = parse_num(f[9], ctx);
    rows.push_back(r);
  }
  if (!header) throw ConfigError(path + ": missing column header");
  return rows;
}

std::vector<BenchRow> read_bench_json(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open " + path);
  try {
    const json j = json::parse(is);
    std::vector<BenchRow> rows;
    for (const auto& e : j.at("rows")) {
      BenchRow r;
      r.n = e.at("n").get<std::size_t>();
      r.mode = e.at("mode").get<std::string>();
      r.mse_R = num_from(e.at("mse_R"));
      r.mse_C = num_from(e.at("mse_C"));
      r.l2_density_err = num_from(e.at("l2_density_err"));
      r.reps = e.at("reps").get<int>();
      r.base_seed = e.at("base_seed").get<std::uint64_t>();
      r.median_abs_err_R = num_from(e.at("median_abs_err_R"));
      r.failures = e.at("failures").get<int>();
      r.wall_ms = num_from(e.at("wall_ms"));
      rows.push_back(r);
    }
    return rows;
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::vector<BenchRow> read_bench(const std::string& path) {
  return format_for_path(path) == EmitFormat::Json ? read_bench_json(path) : read_bench_csv(path);
}

std::uint64_t determinism_hash(std::span<const BenchRow> rows) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&](const std::string& s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 0x100000001b3ULL;
    }
  };
  for (std::size_t c = 0; c + 1 < kColumns.size(); ++c) feed(std::string(kColumns[c]) + ",");
  feed("\n");
  for (const auto& r : rows) feed(row_text(r, false) + "\n");
  return h;
}

}  // namespace sphdeconv
