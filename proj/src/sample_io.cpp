#include "sphdeconv/sample_io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "sphdeconv/error.hpp"

namespace sphdeconv {

namespace {

constexpr std::array<char, 8> kMagic = {'S', 'P', 'H', 'D', 'C', 'V', '0', '1'};

std::string format_double(double v) {
  std::array<char, 32> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

bool parse_double(std::string_view s, double& out) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = line.find(sep, pos);
    out.push_back(line.substr(pos, next == std::string_view::npos ? line.npos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

template <class T>
void put_le(std::ostream& os, T v) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
  U bits = std::bit_cast<U>(v);
  for (std::size_t b = 0; b < sizeof(T); ++b) os.put(static_cast<char>((bits >> (8 * b)) & 0xff));
}

template <class T>
T get_le(std::istream& is, const std::string& path) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
  std::array<unsigned char, sizeof(T)> raw{};
  if (!is.read(reinterpret_cast<char*>(raw.data()), raw.size())) {
    throw ConfigError(path + ": truncated binary sample");
  }
  U bits = 0;
  for (std::size_t b = 0; b < sizeof(T); ++b) bits |= static_cast<U>(raw[b]) << (8 * b);
  return std::bit_cast<T>(bits);
}

}  // namespace

void write_sample_csv(const std::string& path, const Sample& sample) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open " + path + " for writing");
  os << "# seed=" << sample.seed << " scenario=" << sample.scenario_id << " dim=" << sample.dim
     << "\n";
  for (int a = 0; a < sample.dim; ++a) os << (a ? "," : "") << "y" << (a + 1);
  os << "\n";
  const std::size_t n = sample.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (int a = 0; a < sample.dim; ++a) {
      os << (a ? "," : "") << format_double(sample.data[i * sample.dim + a]);
    }
    os << "\n";
  }
  if (!os) throw ConfigError("write failed: " + path);
}

Sample read_sample_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open " + path);
  Sample s;
  s.dim = 0;
  int declared_dim = 0;
  std::string line;
  std::size_t lineno = 0;
  bool seen_data = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream meta(line.substr(1));
      std::string kv;
      while (meta >> kv) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = kv.substr(0, eq);
        const std::string val = kv.substr(eq + 1);
        try {
          if (key == "seed") s.seed = std::stoull(val);
          if (key == "scenario") s.scenario_id = std::stoi(val);
          if (key == "dim") declared_dim = std::stoi(val);
        } catch (const std::exception&) {
          throw ConfigError(path + ":" + std::to_string(lineno) + ": bad header value '" + kv + "'");
        }
      }
      continue;
    }
    const auto fields = split(line, ',');
    std::vector<double> row(fields.size());
    bool numeric = true;
    for (std::size_t a = 0; a < fields.size(); ++a) numeric = numeric && parse_double(fields[a], row[a]);
    if (!numeric) {
      if (seen_data) {
        throw ConfigError(path + ":" + std::to_string(lineno) + ": non-numeric value");
      }
      continue;  // column header
    }
    if (!seen_data) {
      s.dim = static_cast<int>(row.size());
      seen_data = true;
    } else if (static_cast<int>(row.size()) != s.dim) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected " +
                        std::to_string(s.dim) + " columns");
    }
    s.data.insert(s.data.end(), row.begin(), row.end());
  }
  if (!seen_data) throw ConfigError(path + ": no observations");
  if (declared_dim != 0 && declared_dim != s.dim) {
    throw ConfigError(path + ": header dim=" + std::to_string(declared_dim) + " but rows have " +
                      std::to_string(s.dim) + " columns");
  }
  if (s.dim < 2) throw ConfigError(path + ": observations need at least 2 coordinates");
  return s;
}

void write_sample_binary(const std::string& path, const Sample& sample) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot open " + path + " for writing");
  os.write(kMagic.data(), kMagic.size());
  put_le<std::uint64_t>(os, sample.seed);
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(sample.scenario_id));
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(sample.dim));
  put_le<std::uint64_t>(os, sample.size());
  for (double v : sample.data) put_le<double>(os, v);
  if (!os) throw ConfigError("write failed: " + path);
}

Sample read_sample_binary(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot open " + path);
  std::array<char, 8> magic{};
  if (!is.read(magic.data(), magic.size()) || magic != kMagic) {
    throw ConfigError(path + ": not a binary sample file");
  }
  Sample s;
  s.seed = get_le<std::uint64_t>(is, path);
  s.scenario_id = static_cast<int>(get_le<std::uint32_t>(is, path));
  s.dim = static_cast<int>(get_le<std::uint32_t>(is, path));
  const auto n = get_le<std::uint64_t>(is, path);
  if (s.dim < 1 || n == 0) throw ConfigError(path + ": empty or malformed binary sample");
  s.data.resize(n * static_cast<std::uint64_t>(s.dim));
  for (auto& v : s.data) v = get_le<double>(is, path);
  return s;
}

Sample read_sample(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot open " + path);
  std::array<char, 8> magic{};
  is.read(magic.data(), magic.size());
  if (is.gcount() == 8 && magic == kMagic) return read_sample_binary(path);
  return read_sample_csv(path);
}

}  // namespace sphdeconv
