#include "aladin/app/config_io.hpp"

#include <fstream>
#include <functional>
#include <map>

namespace aladin::app {

namespace {

using nlohmann::json;
using Setter = std::function<void(AladinConfig&, const json&)>;

double as_double(std::string_view key, const json& v) {
  if (!v.is_number()) {
    throw ConfigError{"config key '" + std::string{key} + "' expects a number"};
  }
  return v.get<double>();
}

int as_int(std::string_view key, const json& v) {
  if (!v.is_number_integer()) {
    throw ConfigError{"config key '" + std::string{key} + "' expects an integer"};
  }
  return v.get<int>();
}

bool as_bool(std::string_view key, const json& v) {
  if (!v.is_boolean()) {
    throw ConfigError{"config key '" + std::string{key} + "' expects a boolean"};
  }
  return v.get<bool>();
}

template <auto Member>
Setter real(const char* key) {
  return [key](AladinConfig& c, const json& v) { c.*Member = as_double(key, v); };
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"mu0", real<&AladinConfig::mu0>("mu0")},
      {"mu_shrink", real<&AladinConfig::mu_shrink>("mu_shrink")},
      {"mu_min", real<&AladinConfig::mu_min>("mu_min")},
      {"rho0", real<&AladinConfig::rho0>("rho0")},
      {"rho_grow", real<&AladinConfig::rho_grow>("rho_grow")},
      {"rho_max", real<&AladinConfig::rho_max>("rho_max")},
      {"r", real<&AladinConfig::r>("r")},
      {"wP", real<&AladinConfig::wP>("wP")},
      {"wM", real<&AladinConfig::wM>("wM")},
      {"sigma1", real<&AladinConfig::sigma1>("sigma1")},
      {"sigma2", real<&AladinConfig::sigma2>("sigma2")},
      {"sigma3", real<&AladinConfig::sigma3>("sigma3")},
      {"theta", real<&AladinConfig::theta>("theta")},
      {"tol_comp", real<&AladinConfig::tol_comp>("tol_comp")},
      {"tol_cons", real<&AladinConfig::tol_cons>("tol_cons")},
      {"tol_step", real<&AladinConfig::tol_step>("tol_step")},
      {"max_outer",
       [](AladinConfig& c, const json& v) { c.max_outer = as_int("max_outer", v); }},
      {"parallel",
       [](AladinConfig& c, const json& v) { c.parallel = as_bool("parallel", v); }},
      {"inner.tol",
       [](AladinConfig& c, const json& v) { c.inner.tol = as_double("inner.tol", v); }},
      {"inner.max_iter",
       [](AladinConfig& c, const json& v) {
         c.inner.max_iter = as_int("inner.max_iter", v);
       }},
      {"reg.delta0",
       [](AladinConfig& c, const json& v) { c.reg.delta0 = as_double("reg.delta0", v); }},
      {"reg.eps_pd",
       [](AladinConfig& c, const json& v) { c.reg.eps_pd = as_double("reg.eps_pd", v); }},
      {"reg.retry_budget",
       [](AladinConfig& c, const json& v) {
         c.reg.retry_budget = as_int("reg.retry_budget", v);
       }},
      {"reg.pivot_tol",
       [](AladinConfig& c, const json& v) {
         c.reg.pivot_tol = as_double("reg.pivot_tol", v);
       }},
      {"reg.max_shift_factor",
       [](AladinConfig& c, const json& v) {
         c.reg.max_shift_factor = as_double("reg.max_shift_factor", v);
       }},
      {"reference_solution",
       [](AladinConfig& c, const json& v) {
         if (v.is_null()) {
           c.reference_solution.reset();
           return;
         }
         if (!v.is_array()) {
           throw ConfigError{"config key 'reference_solution' expects an array"};
         }
         Eigen::VectorXd ref(static_cast<Eigen::Index>(v.size()));
         for (std::size_t i = 0; i < v.size(); ++i) {
           ref(static_cast<Eigen::Index>(i)) = as_double("reference_solution", v[i]);
         }
         c.reference_solution = std::move(ref);
       }},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const auto& [key, setter] : setters()) {
      out.push_back(key);
    }
    return out;
  }();
  return keys;
}

void set_config_value(AladinConfig& cfg, std::string_view key, const json& value) {
  const auto it = setters().find(key);
  if (it == setters().end()) {
    throw ConfigError{"unknown config key '" + std::string{key} + "'"};
  }
  it->second(cfg, value);
}

void apply_config_json(AladinConfig& cfg, const json& doc) {
  if (!doc.is_object()) {
    throw ConfigError{"config document must be a JSON object"};
  }
  for (const auto& [key, value] : doc.items()) {
    if ((key == "inner" || key == "reg") && value.is_object()) {
      for (const auto& [sub, subvalue] : value.items()) {
        set_config_value(cfg, key + "." + sub, subvalue);
      }
    } else {
      set_config_value(cfg, key, value);
    }
  }
}

void apply_config_file(AladinConfig& cfg, const std::string& path) {
  std::ifstream in{path};
  if (!in) {
    throw ConfigError{"cannot open config file '" + path + "'"};
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError{"config file '" + path + "': " + e.what()};
  }
  apply_config_json(cfg, doc);
}

void apply_override(AladinConfig& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ConfigError{"override '" + std::string{assignment} +
                      "' is not of the form key=value"};
  }
  const std::string_view key = assignment.substr(0, eq);
  const std::string text{assignment.substr(eq + 1)};
  json value;
  try {
    value = json::parse(text);
  } catch (const json::parse_error&) {
    throw ConfigError{"override value for '" + std::string{key} +
                      "' is not a number, boolean or array: '" + text + "'"};
  }
  set_config_value(cfg, key, value);
}

json config_to_json(const AladinConfig& cfg) {
  json doc = {
      {"mu0", cfg.mu0},
      {"mu_shrink", cfg.mu_shrink},
      {"mu_min", cfg.mu_min},
      {"rho0", cfg.rho0},
      {"rho_grow", cfg.rho_grow},
      {"rho_max", cfg.rho_max},
      {"r", cfg.r},
      {"wP", cfg.wP},
      {"wM", cfg.wM},
      {"sigma1", cfg.sigma1},
      {"sigma2", cfg.sigma2},
      {"sigma3", cfg.sigma3},
      {"theta", cfg.theta},
      {"tol_comp", cfg.tol_comp},
      {"tol_cons", cfg.tol_cons},
      {"tol_step", cfg.tol_step},
      {"max_outer", cfg.max_outer},
      {"parallel", cfg.parallel},
      {"inner", {{"tol", cfg.inner.tol}, {"max_iter", cfg.inner.max_iter}}},
      {"reg",
       {{"delta0", cfg.reg.delta0},
        {"eps_pd", cfg.reg.eps_pd},
        {"retry_budget", cfg.reg.retry_budget},
        {"pivot_tol", cfg.reg.pivot_tol},
        {"max_shift_factor", cfg.reg.max_shift_factor}}},
  };
  if (cfg.reference_solution) {
    doc["reference_solution"] = std::vector<double>(
        cfg.reference_solution->data(),
        cfg.reference_solution->data() + cfg.reference_solution->size());
  } else {
    doc["reference_solution"] = nullptr;
  }
  return doc;
}

}  // namespace aladin::app
