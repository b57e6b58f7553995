#pragma once

// Run configuration for the scenario runner, read from JSON.
//
// Exact quantities (n_r, c_r, hbar, c, L) accept JSON integers or strings such
// as "1/3" or "0.25"; floating-point JSON numbers are rejected for those
// fields so no precision is lost silently.

#include <nlohmann/json.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zpe/error.hpp"
#include "zpe/exact.hpp"
#include "zpe/field.hpp"
#include "zpe/opalgebra.hpp"

namespace zpe {

struct CausalityConfig {
  std::vector<double> r_grid{0.5, 1.0, 2.0};
  std::vector<double> ct_grid{0.0, 1.0, 2.0};
  std::vector<double> epsilons{0.04, 0.02, 0.01};
};

struct RunConfig {
  CommutatorScheme scheme = CommutatorScheme::paper();
  PhysicalConstants constants;
  Rational box_length{1};
  std::vector<IntVec3> modes{{0, 0, 1}};
  int n_max = 3;
  int grid_n = 8;
  std::size_t dimension_cap = kDefaultDimensionCap;
  std::uint64_t seed = 20240601;
  CausalityConfig causality;
  std::string output_dir = "zpe-out";
  nlohmann::json echo = nlohmann::json::object();

  ModeSet mode_set() const { return ModeSet(box_length, modes); }
};

namespace detail {

inline Rational exact_field(const nlohmann::json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      throw Error(ErrorKind::Config, path + ": " + e.what());
    }
  }
  throw Error(ErrorKind::Config, path + ": expected an integer or a rational string like \"1/3\"");
}

inline std::vector<double> real_list(const nlohmann::json& j, const std::string& path) {
  if (!j.is_array()) throw Error(ErrorKind::Config, path + ": expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw Error(ErrorKind::Config, path + "[" + std::to_string(i) + "]: expected a number");
    out.push_back(j[i].get<double>());
  }
  return out;
}

inline VacuumRole parse_role(const nlohmann::json& j, const std::string& path) {
  if (j == "operator") return VacuumRole::Operator;
  if (j == "conjugate") return VacuumRole::Conjugate;
  throw Error(ErrorKind::Config, path + ": role must be \"operator\" or \"conjugate\"");
}

inline void check_keys(const nlohmann::json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw Error(ErrorKind::Config, (path.empty() ? std::string("config") : path) + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw Error(ErrorKind::Config, (path.empty() ? key : path + "." + key) + ": unknown field");
  }
}

}  // namespace detail

inline CommutatorScheme parse_scheme(const nlohmann::json& j, const std::string& path = "scheme") {
  if (j.is_string()) return parse_scheme(nlohmann::json{{"type", j}}, path);
  detail::check_keys(j, path, {"type", "n", "c", "roles"});
  const std::string type = j.value("type", "paper");
  try {
    if (type == "standard") return CommutatorScheme::standard();
    if (type == "paper") {
      if (!j.contains("n")) return CommutatorScheme::paper();
      const auto& n = j.at("n");
      if (!n.is_array() || n.size() != 3) throw Error(ErrorKind::Config, path + ".n: expected 3 values");
      return CommutatorScheme::paper({detail::exact_field(n[0], path + ".n[0]"), detail::exact_field(n[1], path + ".n[1]"),
                                      detail::exact_field(n[2], path + ".n[2]")});
    }
    if (type == "custom") {
      if (!j.contains("c")) throw Error(ErrorKind::Config, path + ".c: required for custom schemes");
      const auto& c = j.at("c");
      if (!c.is_array() || c.size() != 4) throw Error(ErrorKind::Config, path + ".c: expected 4 values");
      std::array<Rational, 4> consts;
      std::array<VacuumRole, 4> roles{};
      for (std::size_t r = 0; r < 4; ++r) {
        consts[r] = detail::exact_field(c[r], path + ".c[" + std::to_string(r) + "]");
        roles[r] = consts[r] < 0 ? VacuumRole::Conjugate : VacuumRole::Operator;
      }
      if (j.contains("roles")) {
        const auto& rl = j.at("roles");
        if (!rl.is_array() || rl.size() != 4) {
          throw Error(ErrorKind::Config, path + ".roles: expected one role per polarization (4 entries)");
        }
        for (std::size_t r = 0; r < 4; ++r) roles[r] = detail::parse_role(rl[r], path + ".roles[" + std::to_string(r) + "]");
      }
      return CommutatorScheme::custom(consts, roles);
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Config && std::string(e.what()).find(path) != std::string::npos) throw;
    throw Error(ErrorKind::Config, path + ": " + e.what());
  }
  throw Error(ErrorKind::Config, path + ".type: expected standard, paper or custom");
}

inline RunConfig parse_config(const nlohmann::json& j) {
  detail::check_keys(j, "", {"scheme", "constants", "modeset", "n_max", "grid_n", "dimension_cap", "seed", "causality",
                             "output"});
  RunConfig cfg;
  cfg.echo = j;
  if (j.contains("scheme")) cfg.scheme = parse_scheme(j.at("scheme"));
  if (j.contains("constants")) {
    const auto& c = j.at("constants");
    detail::check_keys(c, "constants", {"hbar", "c"});
    if (c.contains("hbar")) cfg.constants.hbar = detail::exact_field(c.at("hbar"), "constants.hbar");
    if (c.contains("c")) cfg.constants.c = detail::exact_field(c.at("c"), "constants.c");
    if (cfg.constants.hbar <= 0) throw Error(ErrorKind::Config, "constants.hbar: must be positive");
    if (cfg.constants.c <= 0) throw Error(ErrorKind::Config, "constants.c: must be positive");
  }
  if (j.contains("modeset")) {
    const auto& m = j.at("modeset");
    detail::check_keys(m, "modeset", {"L", "modes"});
    if (m.contains("L")) cfg.box_length = detail::exact_field(m.at("L"), "modeset.L");
    if (cfg.box_length <= 0) throw Error(ErrorKind::Config, "modeset.L: must be positive");
    if (m.contains("modes")) {
      const auto& list = m.at("modes");
      if (!list.is_array() || list.empty()) throw Error(ErrorKind::Config, "modeset.modes: expected a non-empty array");
      cfg.modes.clear();
      for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string path = "modeset.modes[" + std::to_string(i) + "]";
        const auto& v = list[i];
        if (!v.is_array() || v.size() != 3) throw Error(ErrorKind::Config, path + ": expected 3 integers");
        IntVec3 mv{};
        for (std::size_t a = 0; a < 3; ++a) {
          if (!v[a].is_number_integer()) throw Error(ErrorKind::Config, path + ": expected 3 integers");
          mv[a] = v[a].get<int>();
        }
        cfg.modes.push_back(mv);
      }
    }
    try {
      (void)cfg.mode_set();
    } catch (const Error& e) {
      throw Error(ErrorKind::Config, std::string("modeset: ") + e.what());
    }
  }
  auto positive_int = [&](const char* key, int& target) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_number_integer() || j.at(key).get<long long>() < 1) {
      throw Error(ErrorKind::Config, std::string(key) + ": expected a positive integer");
    }
    target = j.at(key).get<int>();
  };
  positive_int("n_max", cfg.n_max);
  positive_int("grid_n", cfg.grid_n);
  if (j.contains("dimension_cap")) {
    if (!j.at("dimension_cap").is_number_unsigned()) throw Error(ErrorKind::Config, "dimension_cap: expected a positive integer");
    cfg.dimension_cap = j.at("dimension_cap").get<std::size_t>();
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw Error(ErrorKind::Config, "seed: expected a nonnegative integer");
    cfg.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("causality")) {
    const auto& c = j.at("causality");
    detail::check_keys(c, "causality", {"r_grid", "ct_grid", "epsilons"});
    if (c.contains("r_grid")) cfg.causality.r_grid = detail::real_list(c.at("r_grid"), "causality.r_grid");
    if (c.contains("ct_grid")) cfg.causality.ct_grid = detail::real_list(c.at("ct_grid"), "causality.ct_grid");
    if (c.contains("epsilons")) cfg.causality.epsilons = detail::real_list(c.at("epsilons"), "causality.epsilons");
    for (std::size_t i = 0; i < cfg.causality.r_grid.size(); ++i) {
      if (!(cfg.causality.r_grid[i] > 0.0)) {
        throw Error(ErrorKind::Config, "causality.r_grid[" + std::to_string(i) + "]: must be positive");
      }
    }
    const auto& eps = cfg.causality.epsilons;
    if (eps.empty()) throw Error(ErrorKind::Config, "causality.epsilons: expected at least one value");
    for (std::size_t i = 0; i < eps.size(); ++i) {
      if (!(eps[i] > 0.0) || (i && !(eps[i] < eps[i - 1]))) {
        throw Error(ErrorKind::Config, "causality.epsilons[" + std::to_string(i) + "]: must be positive and strictly decreasing");
      }
    }
  }
  if (j.contains("output")) {
    const auto& o = j.at("output");
    detail::check_keys(o, "output", {"dir"});
    if (o.contains("dir")) {
      if (!o.at("dir").is_string()) throw Error(ErrorKind::Config, "output.dir: expected a string");
      cfg.output_dir = o.at("dir").get<std::string>();
    }
  }
  return cfg;
}

}  // namespace zpe
