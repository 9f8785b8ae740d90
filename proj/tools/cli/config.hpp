#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cmjtree/attraction.hpp"

namespace cmjtree::cli {

/// Bad configuration: unknown key, type mismatch, missing or invalid value.
/// The CLI exits with status 2 on this error.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kOutDirEnv = "CMJTREE_OUT_DIR";

inline const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {"grow",  "analyze", "malthus", "trajectory", "coverage",
                                                 "track", "maxdeg",  "race",    "dominance",  "hoeffding"};
  return names;
}

/// Fully resolved settings for one subcommand run. Keys that do not apply to
/// the subcommand stay empty; per-subcommand defaults are filled in by
/// parse_config so the echoed config is complete.
struct ExperimentConfig {
  std::string cmd;
  std::optional<AttractionSpec> spec;
  std::optional<std::string> model;  // grow: "discrete" or "cmj"

  std::optional<std::uint64_t> n;
  std::optional<std::uint64_t> n_max;
  std::optional<std::uint64_t> d;
  std::optional<std::uint64_t> k;
  std::optional<std::uint64_t> k_top;
  std::optional<double> t_end;
  std::optional<double> dt;
  std::optional<double> alpha;
  std::optional<double> theta;
  std::optional<double> tol;
  std::optional<std::vector<std::uint64_t>> k_list;
  std::optional<std::vector<std::uint64_t>> n_list;
  std::optional<std::vector<std::uint64_t>> r_list;
  std::optional<std::vector<std::uint64_t>> checkpoints;
  std::optional<std::string> shape1;
  std::optional<std::string> shape2;
  std::optional<std::string> input;
  std::optional<bool> allow_non_sublinear;

  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  std::uint64_t threads = 1;
  std::uint64_t pop_cap = 10'000'000;
  std::uint64_t stride = 1;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

nlohmann::json spec_to_json(const AttractionSpec& spec);
/// Throws ConfigError naming the offending key.
AttractionSpec spec_from_json(const nlohmann::json& doc);

/// Builds a config from a JSON document with command-line overrides layered
/// on top. Overrides map a key (e.g. "trials", "k_list") to its textual
/// value ("500", "10,50,100"); `cmd_override` replaces the document's cmd.
ExperimentConfig parse_config(const nlohmann::json& document,
                              const std::map<std::string, std::string>& overrides = {},
                              const std::optional<std::string>& cmd_override = std::nullopt);

/// parse_config on JSON text. Malformed JSON is a ConfigError.
ExperimentConfig parse_config_text(const std::string& json_text,
                                   const std::map<std::string, std::string>& overrides = {});

nlohmann::json config_to_json(const ExperimentConfig& config);

/// Names of every recognised config key.
const std::vector<std::string>& config_keys();

}  // namespace cmjtree::cli
