#pragma once

// JSON run configuration: schema checks, defaults and conversion to library
// objects. Every parse function also records what it resolved so reports can
// echo the effective configuration.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "diracgauge/dirac.hpp"

namespace diracgauge::cli {

using Json = nlohmann::ordered_json;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tolerances {
  double cholesky = 1e-11;
  double lorentz = 1e-10;
  double anticommutation = 1e-11;
  double orthonormality = 1e-11;
  double lift = 1e-10;
  double classify = 1e-8;
  double spectral = 1e-7;
  double condition = 1e-9;
  double time_dependence = 1e-8;
  double compatibility = 1e-6;

  Json to_json() const;
};

/// Reads "tolerances" overrides and applies the global scale.
Tolerances parse_tolerances(const Json& cfg, double scale);

chart::MetricField parse_metric(const Json& cfg, Json& resolved);
std::vector<Vec4> parse_points(const Json& cfg, Json& resolved);
dirac::Grid parse_grid(const Json& cfg, Json& resolved);
chart::SpatialMap parse_map(const Json& node, const std::string& where);

/// Two gauge choices from "charts"; a missing entry is the identity chart
/// with the diagonal prescription.
std::vector<dirac::GaugeChoice> parse_charts(const Json& cfg, Json& resolved);

/// Explicit "samples", or "sample_box" {lo, hi, count} drawn with the seed.
std::vector<Vec3> parse_samples(const Json& cfg, std::uint64_t seed, Json& resolved);

/// A 4x4 Lorentz matrix from {"matrix"}, {"rotation": {axis, angle}} or
/// {"boost": {axis, rapidity}}.
Mat4 parse_lorentz(const Json& node, const std::string& where);

/// Rejects keys outside `allowed`.
void check_keys(const Json& obj, std::initializer_list<const char*> allowed,
                const std::string& where);

double get_number(const Json& obj, const char* key, const std::string& where);
double get_number_or(const Json& obj, const char* key, double fallback,
                     const std::string& where);
std::string get_string_or(const Json& obj, const char* key, const std::string& fallback,
                          const std::string& where);

Json to_json(const Mat4& m);
Json to_json(const Mat3& m);
Json to_json(const Vec3& v);
Json to_json(const Vec4& v);
Json to_json(const CMat4& m);
Json to_json(const dirac::Spectrum& s);

}  // namespace diracgauge::cli
