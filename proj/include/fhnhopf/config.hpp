#pragma once

#include <string>
#include <string_view>

#include "fhnhopf/model.hpp"

namespace fhn {

/// Model configuration document: epsilon, d, a, p, nx, profile_kind, c0.
/// d is required; every other key has a default. Unknown keys are rejected.
struct ModelConfig {
  ModelParams params;
  ProfileKind kind = ProfileKind::polynomial;
  double c0 = 0.0;

  HeterogeneityProfile profile() const;
  HeterogeneityProfile profile_at(double p) const;
  std::string to_json() const;
};

ModelConfig parse_model_config(std::string_view json_text);
ModelConfig load_model_config(const std::string& path);

}  // namespace fhn
