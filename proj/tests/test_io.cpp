#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "sphdeconv/bench.hpp"
#include "sphdeconv/error.hpp"
#include "sphdeconv/sample_io.hpp"
#include "sphdeconv/serialize.hpp"
#include "sphdeconv/simulate.hpp"

using namespace sphdeconv;
namespace fs = std::filesystem;

namespace {

std::string temp_path(const std::string& name) {
  return (fs::temp_directory_path() / ("sphdeconv_test_" + name)).string();
}

std::vector<BenchRow> synthetic_rows(double exponent, double scale) {
  std::vector<BenchRow> rows;
  for (std::size_t n : {100u, 1000u, 10000u, 100000u}) {
    BenchRow r;
    r.n = n;
    r.mode = "unknown_f";
    r.median_abs_err_R = scale * std::pow(static_cast<double>(n), exponent);
    r.mse_R = r.median_abs_err_R * r.median_abs_err_R;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace

TEST(SampleIo, CsvRoundTrip) {
  const auto s = generate(Scenario::preset(2), 257, 123456789012345ULL);
  const auto path = temp_path("sample.csv");
  write_sample_csv(path, s);
  const auto r = read_sample(path);
  EXPECT_EQ(r.data, s.data);
  EXPECT_EQ(r.seed, s.seed);
  EXPECT_EQ(r.scenario_id, 2);
  EXPECT_EQ(r.dim, 2);
  fs::remove(path);
}

TEST(SampleIo, BinaryRoundTrip) {
  const auto s = generate(Scenario::preset(4), 100, 77);
  const auto path = temp_path("sample.bin");
  write_sample_binary(path, s);
  const auto r = read_sample(path);
  EXPECT_EQ(r.data, s.data);
  EXPECT_EQ(r.seed, 77u);
  EXPECT_EQ(r.scenario_id, 4);
  std::ifstream is(path, std::ios::binary);
  char magic[8];
  is.read(magic, 8);
  EXPECT_EQ(std::string(magic, 8), "SPHDCV01");
  EXPECT_EQ(fs::file_size(path), 8u + 8u + 4u + 4u + 8u + 200u * 8u);
  fs::remove(path);
}

TEST(SampleIo, PlainCsvAndErrors) {
  const auto path = temp_path("plain.csv");
  {
    std::ofstream os(path);
    os << "x,y\n1.5,2\n-3,4e-1\n";
  }
  const auto s = read_sample(path);
  EXPECT_EQ(s.data, (std::vector<double>{1.5, 2.0, -3.0, 0.4}));
  {
    std::ofstream os(path);
    os << "1,2\n3\n";
  }
  EXPECT_THROW(read_sample(path), ConfigError);
  {
    std::ofstream os(path);
    os << "# seed=1 dim=3\n1,2\n";
  }
  EXPECT_THROW(read_sample(path), ConfigError);
  fs::remove(path);
  EXPECT_THROW(read_sample(temp_path("missing.csv")), ConfigError);
}

TEST(Serialize, DensityJson) {
  const auto f = AngleDensity::fourier({1.0, cplx(0.1, -0.2)});
  const auto j = density_to_json(f);
  EXPECT_EQ(j["type"], "fourier");
  const auto g = density_from_json(j);
  EXPECT_EQ(g.coeff(1), f.coeff(1));
  const auto v = density_to_json(AngleDensity::vonmises_like());
  EXPECT_EQ(v["type"], "named");
  EXPECT_EQ(v["name"], "vonmises_like");
  EXPECT_EQ(density_from_json(v).eval(0.1), AngleDensity::vonmises_like().eval(0.1));
  EXPECT_EQ(density_to_json(AngleDensity::uniform())["name"], "uniform");
  EXPECT_THROW(density_from_json(nlohmann::json{{"type", "spline"}}), ConfigError);
}

TEST(Serialize, ReportRoundTripIsExact) {
  EstimateReport r;
  r.method = "joint";
  r.R_hat = 3.0000000000000004;
  r.C_hat = {0.1, -1.0 / 3.0};
  r.f_hat_coeffs = {cplx(0.1, 1e-17), 1.0, cplx(0.1, -1e-17)};
  r.contrast_value = 1.234567890123456789e-9;
  r.iterations = 12;
  r.evaluations = 34;
  r.wall_time_ms = 5.5;
  r.seed = 18446744073709551615ULL;
  r.n = 1000;
  r.probes.push_back({2.0, {1.0, cplx(0.0, 0.5)}, 0.25});
  const auto path = temp_path("report.json");
  write_json_file(path, report_to_json(r));
  const auto b = report_from_json(read_json_file(path));
  EXPECT_EQ(b.R_hat, r.R_hat);
  EXPECT_EQ(b.C_hat, r.C_hat);
  EXPECT_EQ(b.f_hat_coeffs, r.f_hat_coeffs);
  EXPECT_EQ(b.contrast_value, r.contrast_value);
  EXPECT_EQ(b.seed, r.seed);
  EXPECT_EQ(b.probes.size(), 1u);
  EXPECT_EQ(b.probes[0].coeffs[1], cplx(0.0, 0.5));
  fs::remove(path);
}

TEST(Bench, RateRegressionExactPowerLaw) {
  const auto fit = rate_regression(synthetic_rows(-0.5, 1.0), "unknown_f");
  EXPECT_NEAR(fit.slope, -0.5, 1e-12);
  EXPECT_NEAR(fit.intercept, 0.0, 1e-12);
  EXPECT_NEAR(fit.slope_se, 0.0, 1e-12);
  EXPECT_EQ(fit.points, 4);
}

TEST(Bench, RateRegressionConstantError) {
  const auto fit = rate_regression(synthetic_rows(0.0, 0.01), "unknown_f");
  EXPECT_NEAR(fit.slope, 0.0, 1e-12);
  EXPECT_NEAR(fit.intercept, std::log(0.01), 1e-12);
}

TEST(Bench, RateRegressionErrors) {
  auto rows = synthetic_rows(-0.5, 1.0);
  rows.resize(2);
  EXPECT_THROW(rate_regression(rows, "unknown_f"), ConfigError);
  rows = synthetic_rows(-0.5, 1.0);
  rows[1].median_abs_err_R = 0.0;
  EXPECT_THROW(rate_regression(rows, "unknown_f"), NumericalError);
  rows = synthetic_rows(-0.5, 1.0);
  for (auto& r : rows) r.n = 1000;
  EXPECT_THROW(rate_regression(rows, "unknown_f"), ConfigError);
}

TEST(Bench, SpecValidation) {
  BenchSpec s;
  EXPECT_NO_THROW(s.validate());
  s.n_values = {1000, 100};
  EXPECT_THROW(s.validate(), ConfigError);
  s = BenchSpec{};
  s.replications = 0;
  EXPECT_THROW(s.validate(), ConfigError);
  s = BenchSpec{};
  s.scenario = 7;
  EXPECT_THROW(s.validate(), ConfigError);
  EXPECT_THROW(parse_bench_mode("fast"), ConfigError);
  const auto full = BenchSpec::full(1);
  EXPECT_EQ(full.n_values.size(), 17u);
  EXPECT_EQ(full.n_values.back(), 1000000u);
  EXPECT_EQ(full.replications, 30);
}

class BenchSmoke : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    BenchSpec spec;
    spec.n_values = {100};
    spec.replications = 1;
    spec.mode = BenchMode::Both;
    rows_ = new std::vector<BenchRow>(run_bench(spec));
  }
  static void TearDownTestSuite() { delete rows_; }
  static std::vector<BenchRow>* rows_;
};
std::vector<BenchRow>* BenchSmoke::rows_ = nullptr;

TEST_F(BenchSmoke, TwoFiniteRows) {
  ASSERT_EQ(rows_->size(), 2u);
  EXPECT_EQ((*rows_)[0].mode, "known_f");
  EXPECT_EQ((*rows_)[1].mode, "unknown_f");
  for (const auto& r : *rows_) {
    EXPECT_TRUE(std::isfinite(r.mse_R));
    EXPECT_TRUE(std::isfinite(r.mse_C));
    EXPECT_EQ(r.failures, 0);
    EXPECT_EQ(r.reps, 1);
  }
  EXPECT_TRUE(std::isnan((*rows_)[0].l2_density_err));
  EXPECT_TRUE(std::isfinite((*rows_)[1].l2_density_err));
}

TEST_F(BenchSmoke, CsvRoundTrip) {
  const auto path = temp_path("bench.csv");
  emit(*rows_, EmitFormat::Csv, path, bench_metadata(BenchSpec{}));
  const auto back = read_bench(path);
  ASSERT_EQ(back.size(), rows_->size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].mse_R, (*rows_)[i].mse_R);
    EXPECT_EQ(back[i].wall_ms, (*rows_)[i].wall_ms);
    EXPECT_EQ(back[i].mode, (*rows_)[i].mode);
  }
  EXPECT_EQ(determinism_hash(back), determinism_hash(*rows_));
  std::ifstream is(path);
  std::string line;
  while (std::getline(is, line) && line[0] == '#') {
  }
  EXPECT_EQ(line, "n,mode,mse_R,mse_C,l2_density_err,reps,base_seed,median_abs_err_R,failures,wall_ms");
  fs::remove(path);
}

TEST_F(BenchSmoke, JsonRoundTrip) {
  const auto path = temp_path("bench.json");
  emit(*rows_, EmitFormat::Json, path);
  const auto back = read_bench(path);
  ASSERT_EQ(back.size(), rows_->size());
  EXPECT_TRUE(std::isnan(back[0].l2_density_err));
  EXPECT_EQ(back[1].l2_density_err, (*rows_)[1].l2_density_err);
  EXPECT_EQ(determinism_hash(back), determinism_hash(*rows_));
  fs::remove(path);
}

TEST_F(BenchSmoke, HashIgnoresWallTime) {
  auto copy = *rows_;
  copy[0].wall_ms += 100.0;
  EXPECT_EQ(determinism_hash(copy), determinism_hash(*rows_));
  copy[0].mse_R *= 1.0000001;
  EXPECT_NE(determinism_hash(copy), determinism_hash(*rows_));
  EXPECT_EQ(determinism_hash(run_bench([] {
              BenchSpec s;
              s.n_values = {100};
              s.replications = 1;
              return s;
            }())),
            determinism_hash(*rows_));
}
