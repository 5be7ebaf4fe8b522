#include "sphdeconv/serialize.hpp"

#include <fstream>
#include <limits>

#include "sphdeconv/error.hpp"

namespace sphdeconv {

using nlohmann::json;

namespace {

json complex_list(std::span<const cplx> v) {
  json out = json::array();
  for (const auto& c : v) out.push_back({c.real(), c.imag()});
  return out;
}

std::vector<cplx> complex_list_from(const json& j) {
  std::vector<cplx> out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) throw ConfigError("expected [re, im] pairs");
    out.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return out;
}

}  // namespace

json density_to_json(const AngleDensity& f) {
  if (!f.name().empty() && f.name() != "callable") {
    if (f.name() == "uniform" || f.name() == "vonmises_like") {
      return {{"type", "named"}, {"name", f.name()}, {"dim", f.dim()}};
    }
  }
  if (!f.is_fourier()) throw ConfigError("density_to_json: callable densities are not serialisable");
  return {{"type", "fourier"}, {"coeffs", complex_list(f.coeffs())}};
}

AngleDensity density_from_json(const json& j) {
  try {
    const auto type = j.at("type").get<std::string>();
    if (type == "named") return AngleDensity::named(j.at("name").get<std::string>(), j.value("dim", 2));
    if (type == "fourier") return AngleDensity::fourier(complex_list_from(j.at("coeffs")));
    throw ConfigError("unknown density type '" + type + "'");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed density JSON: ") + e.what());
  }
}

json report_to_json(const EstimateReport& r) {
  json j;
  j["method"] = r.method;
  j["R_hat"] = r.R_hat;
  j["C_hat"] = r.C_hat;
  j["f_hat_coeffs"] = complex_list(r.f_hat_coeffs);
  j["contrast_value"] = r.contrast_value;
  j["iterations"] = r.iterations;
  j["evaluations"] = r.evaluations;
  j["wall_time_ms"] = r.wall_time_ms;
  j["seed"] = r.seed;
  j["n"] = r.n;
  j["R_min"] = r.R_min;
  j["R_max"] = r.R_max;
  j["nu_est"] = r.nu_est;
  j["nodes_per_axis"] = r.nodes_per_axis;
  json probes = json::array();
  for (const auto& p : r.probes) {
    probes.push_back({{"R", p.R}, {"coeffs", complex_list(p.coeffs)}, {"value", p.value}});
  }
  j["probes"] = std::move(probes);
  return j;
}

EstimateReport report_from_json(const json& j) {
  try {
    EstimateReport r;
    r.method = j.at("method").get<std::string>();
    r.R_hat = j.at("R_hat").get<double>();
    r.C_hat = j.at("C_hat").get<std::vector<double>>();
    r.f_hat_coeffs = complex_list_from(j.at("f_hat_coeffs"));
    r.contrast_value = j.at("contrast_value").get<double>();
    r.iterations = j.at("iterations").get<int>();
    r.evaluations = j.at("evaluations").get<int>();
    r.wall_time_ms = j.at("wall_time_ms").get<double>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.n = j.at("n").get<std::size_t>();
    r.R_min = j.value("R_min", 0.0);
    r.R_max = j.value("R_max", 0.0);
    r.nu_est = j.value("nu_est", 0.0);
    r.nodes_per_axis = j.value("nodes_per_axis", 0);
    if (j.contains("probes")) {
      for (const auto& p : j.at("probes")) {
        r.probes.push_back({p.at("R").get<double>(), complex_list_from(p.at("coeffs")),
                            p.at("value").get<double>()});
      }
    }
    if (r.f_hat_coeffs.size() % 2 != 1) throw ConfigError("report: f_hat_coeffs must have odd length");
    return r;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed report JSON: ") + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open " + path + " for writing");
  os << j.dump(2) << "\n";
  if (!os) throw ConfigError("write failed: " + path);
}

json read_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open " + path);
  try {
    return json::parse(is);
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

}  // namespace sphdeconv
