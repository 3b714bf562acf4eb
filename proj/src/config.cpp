#include "fhnhopf/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "fhnhopf/errors.hpp"
#include "json.hpp"

namespace fhn {

using nlohmann::json;

HeterogeneityProfile ModelConfig::profile() const { return profile_at(params.p); }

HeterogeneityProfile ModelConfig::profile_at(double p) const {
  if (kind == ProfileKind::constant) return HeterogeneityProfile::constant(c0, params.a);
  return HeterogeneityProfile::polynomial(p, params.a);
}

std::string ModelConfig::to_json() const {
  json j = {{"epsilon", params.epsilon}, {"d", params.d},   {"a", params.a},
            {"p", params.p},             {"nx", params.nx}, {"profile_kind", to_string(kind)}};
  if (kind == ProfileKind::constant) j["c0"] = c0;
  return j.dump(2);
}

namespace {

double number(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number()) throw ConfigError(std::string("config key '") + key + "' must be a number");
  return v.get<double>();
}

}  // namespace

ModelConfig parse_model_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  static const std::set<std::string> known = {"epsilon", "d", "a", "p", "nx", "profile_kind", "c0"};
  for (const auto& [key, _] : j.items())
    if (!known.contains(key)) throw ConfigError("unknown config key '" + key + "'");

  ModelConfig cfg;
  if (!j.contains("d")) throw ConfigError("config key 'd' is required");
  cfg.params.d = number(j, "d");
  if (j.contains("epsilon")) cfg.params.epsilon = number(j, "epsilon");
  if (j.contains("a")) cfg.params.a = number(j, "a");
  if (j.contains("p")) cfg.params.p = number(j, "p");
  if (j.contains("nx")) {
    const auto& v = j.at("nx");
    if (!v.is_number_integer() || v.get<long long>() < 0) throw ConfigError("config key 'nx' must be a positive integer");
    cfg.params.nx = v.get<std::size_t>();
  }
  if (j.contains("profile_kind")) {
    if (!j.at("profile_kind").is_string()) throw ConfigError("config key 'profile_kind' must be a string");
    cfg.kind = profile_kind_from_string(j.at("profile_kind").get<std::string>());
  }
  if (j.contains("c0")) {
    if (cfg.kind != ProfileKind::constant) throw ConfigError("config key 'c0' only applies to profile_kind constant");
    cfg.c0 = number(j, "c0");
  } else if (cfg.kind == ProfileKind::constant) {
    throw ConfigError("profile_kind constant requires 'c0'");
  }
  cfg.params.validate();
  return cfg;
}

ModelConfig load_model_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_model_config(text.str());
}

}  // namespace fhn
