#pragma once

// JSON forms:
//   AngleDensity:   {"type":"fourier","coeffs":[[re,im],...]}   (c_0..c_K)
//                   {"type":"named","name":"uniform"|"vonmises_like"}
//   EstimateReport: every field, f_hat_coeffs as [[re,im],...] over k = -K..K.

#include <string>

#include <json.hpp>

#include "sphdeconv/estimators.hpp"
#include "sphdeconv/geometry.hpp"

namespace sphdeconv {

nlohmann::json density_to_json(const AngleDensity& f);
AngleDensity density_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const EstimateReport& r);
EstimateReport report_from_json(const nlohmann::json& j);

void write_json_file(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::string& path);

}  // namespace sphdeconv
