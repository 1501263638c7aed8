#ifndef FGK_CONFIG_HPP
#define FGK_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fgk/iterate.hpp"
#include "fgk/profiles.hpp"

namespace fgk {

struct GridSpec {
  double min = 1.0;
  double max = 10.0;
  int points = 25;
  bool log_spaced = true;

  std::vector<double> values() const;
};

struct VolumeSpec {
  std::string kind = "power";  // power | piecewise | table
  std::optional<double> c;     // power-law coefficient; default v_n(n)
  std::optional<double> exponent;  // default model n
  std::vector<double> breakpoints, exponents;  // piecewise
  std::vector<double> r, v;                    // table samples
  std::optional<double> tail_exponent;
};

struct MeasureSpec {
  std::string kind = "power-density";  // power-density | dirac |
                                       // same-as-volume | table
  std::vector<double> r, s;            // table samples
  std::optional<double> tail_exponent;
};

struct DiscreteSpec {
  size_t points = 8;
  uint64_t seed = 42;
  std::string kernel = "riesz";  // riesz | random
  int depth = 4;                 // iteration depth for cmd_iterate
};

struct PicardSpec {
  std::vector<double> R_max = {2.0};
  double h = 0.25;
  double tol = 1e-8;
  size_t max_iters = 10000;
  double eta_radius = 1.0;
  double eta_strength = 1.0;
};

struct OutputSpec {
  std::string format = "json";  // json | csv
  std::string path;             // empty: stdout
};

struct ScenarioConfig {
  int schema_version = 1;
  std::string scenario = "default";
  ModelParams model;
  VolumeSpec volume;
  MeasureSpec measure;
  GridSpec x_grid{1e-3, 1e6, 25, true};
  GridSpec r_grid{1.0, 1e6, 25, true};
  GridSpec t_grid{1e-3, 1.0, 25, true};
  DiscreteSpec discrete;
  PicardSpec picard;
  OutputSpec output;

  nlohmann::json to_json() const;  // fully resolved form
};

/// Parses and validates a config document. Unknown keys anywhere are
/// rejected (ConfigError); numeric domain violations raise DomainError.
ScenarioConfig parse_config(const nlohmann::json& doc);
ScenarioConfig load_config(const std::string& path);

VolumeProfile make_volume(const ScenarioConfig& cfg);
MeasureProfile make_measure(const ScenarioConfig& cfg);

}  // namespace fgk

#endif  // FGK_CONFIG_HPP
