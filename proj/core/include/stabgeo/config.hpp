#pragma once

#include <optional>
#include <string>

#include "stabgeo/spectral.hpp"

namespace stabgeo {

/// Model configuration file is malformed or inconsistent.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parsed model configuration.  For kind "p-sum", `model` holds the one-sided
/// core of the p-th power vector and `p` the power (possibly infinity for
/// max-stability); see the schema notes in the README.
struct ModelConfig {
  int schema_version = 1;
  StableModel model;
  std::optional<double> p;  // set for p-sum configs
  std::uint64_t seed = 0;
  int sphere_level = 0;   // 0 = dimension default
  int radial_level = 16;
};

ModelConfig parse_model_config(const std::string& json_text);
ModelConfig load_model_config(const std::string& path);
std::string render_model_config(const ModelConfig& cfg);
void save_model_config(const std::string& path, const ModelConfig& cfg);

/// Sphere rule at the configured (or default) level for the model dimension.
SphereRule config_sphere_rule(const ModelConfig& cfg);

}  // namespace stabgeo
