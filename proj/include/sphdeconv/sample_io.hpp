#pragma once

// Sample files.
//
// CSV:    "# seed=<u64> scenario=<int> dim=<d>", then a "y1,...,yd" header
//         row, then one observation per row at 17 significant digits.
//         Plain numeric CSV (no comment line, optional header) is accepted
//         on input.
// Binary: 8-byte magic "SPHDCV01", u64 seed, u32 scenario, u32 dim, u64 n,
//         then n*d little-endian f64 values (row-major).

#include <string>

#include "sphdeconv/sample.hpp"

namespace sphdeconv {

void write_sample_csv(const std::string& path, const Sample& sample);
Sample read_sample_csv(const std::string& path);

void write_sample_binary(const std::string& path, const Sample& sample);
Sample read_sample_binary(const std::string& path);

/// Binary when the file starts with the magic, CSV otherwise.
Sample read_sample(const std::string& path);

}  // namespace sphdeconv
