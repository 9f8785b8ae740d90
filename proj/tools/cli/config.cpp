#include "cli/config.hpp"

#include <charconv>
#include <cstdlib>
#include <functional>
#include <limits>

namespace cmjtree::cli {

using nlohmann::json;

namespace {

enum class KeyType { kString, kUint, kReal, kUintList, kBool, kSpec };

struct KeyInfo {
  const char* name;
  KeyType type;
};

constexpr KeyInfo kKeys[] = {
    {"cmd", KeyType::kString},       {"spec", KeyType::kSpec},
    {"model", KeyType::kString},     {"n", KeyType::kUint},
    {"n_max", KeyType::kUint},       {"d", KeyType::kUint},
    {"k", KeyType::kUint},           {"k_top", KeyType::kUint},
    {"t_end", KeyType::kReal},       {"dt", KeyType::kReal},
    {"alpha", KeyType::kReal},       {"theta", KeyType::kReal},
    {"tol", KeyType::kReal},         {"k_list", KeyType::kUintList},
    {"n_list", KeyType::kUintList},  {"r_list", KeyType::kUintList},
    {"checkpoints", KeyType::kUintList}, {"shape1", KeyType::kString},
    {"shape2", KeyType::kString},    {"input", KeyType::kString},
    {"allow_non_sublinear", KeyType::kBool}, {"trials", KeyType::kUint},
    {"seed", KeyType::kUint},        {"out_dir", KeyType::kString},
    {"threads", KeyType::kUint},     {"pop_cap", KeyType::kUint},
    {"stride", KeyType::kUint},
};

const KeyInfo* find_key(const std::string& name) {
  for (const KeyInfo& k : kKeys) {
    if (name == k.name) return &k;
  }
  return nullptr;
}

[[noreturn]] void bad(const std::string& key, const std::string& what) {
  throw ConfigError("key '" + key + "': " + what);
}

std::uint64_t to_uint(const std::string& key, const json& v) {
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
    bad(key, "expected a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

double to_real(const std::string& key, const json& v) {
  if (!v.is_number()) bad(key, "expected a number");
  return v.get<double>();
}

std::string to_string(const std::string& key, const json& v) {
  if (!v.is_string()) bad(key, "expected a string");
  return v.get<std::string>();
}

std::vector<std::uint64_t> to_uint_list(const std::string& key, const json& v) {
  if (!v.is_array()) bad(key, "expected a list of nonnegative integers");
  std::vector<std::uint64_t> out;
  for (const json& item : v) out.push_back(to_uint(key, item));
  return out;
}

// Textual flag value -> JSON value of the key's type.
json flag_to_json(const std::string& key, KeyType type, const std::string& text) {
  auto parse_uint = [&](std::string_view s) -> std::uint64_t {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
      bad(key, "expected a nonnegative integer, got '" + std::string(s) + "'");
    }
    return value;
  };
  switch (type) {
    case KeyType::kString:
      return text;
    case KeyType::kUint:
      return parse_uint(text);
    case KeyType::kReal: {
      std::size_t used = 0;
      double value = 0.0;
      try {
        value = std::stod(text, &used);
      } catch (const std::exception&) {
        bad(key, "expected a number, got '" + text + "'");
      }
      if (used != text.size()) bad(key, "expected a number, got '" + text + "'");
      return value;
    }
    case KeyType::kUintList: {
      json list = json::array();
      std::string_view rest = text;
      while (!rest.empty()) {
        const auto comma = rest.find(',');
        list.push_back(parse_uint(rest.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
      }
      return list;
    }
    case KeyType::kBool:
      if (text == "true" || text == "1") return true;
      if (text == "false" || text == "0") return false;
      bad(key, "expected true or false, got '" + text + "'");
    case KeyType::kSpec:
      try {
        return json::parse(text);
      } catch (const json::parse_error&) {
        bad(key, "expected a JSON object");
      }
  }
  return nullptr;
}

void require(bool present, const std::string& cmd, const std::string& key) {
  if (!present) throw ConfigError("missing required key '" + key + "' for subcommand '" + cmd + "'");
}

void require_positive(std::uint64_t value, const std::string& key) {
  if (value == 0) throw ConfigError(key + " must be positive");
}

void require_positive(const std::optional<double>& value, const std::string& key) {
  if (value && !(*value > 0.0)) throw ConfigError(key + " must be positive");
}

void require_positive_list(const std::optional<std::vector<std::uint64_t>>& values, const std::string& key) {
  if (!values) return;
  if (values->empty()) throw ConfigError(key + " must not be empty");
  for (std::uint64_t v : *values) {
    if (v == 0) throw ConfigError("every entry of " + key + " must be positive");
  }
}

void resolve(ExperimentConfig& c) {
  const std::string& cmd = c.cmd;
  // Counts and tolerances.
  require_positive(c.trials, "trials");
  require_positive(c.threads, "threads");
  require_positive(c.pop_cap, "pop_cap");
  require_positive(c.stride, "stride");
  require_positive(c.tol, "tol");
  require_positive(c.t_end, "t_end");
  require_positive(c.dt, "dt");
  require_positive(c.theta, "theta");
  if (c.n) require_positive(*c.n, "n");
  if (c.n_max) require_positive(*c.n_max, "n_max");
  if (c.k) require_positive(*c.k, "k");
  if (c.k_top) require_positive(*c.k_top, "k_top");
  require_positive_list(c.k_list, "k_list");
  require_positive_list(c.n_list, "n_list");
  require_positive_list(c.r_list, "r_list");
  require_positive_list(c.checkpoints, "checkpoints");
  if (c.alpha && !(*c.alpha > 0.0 && *c.alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");

  if (cmd == "grow") {
    require(c.spec.has_value(), cmd, "spec");
    if (!c.model) c.model = "discrete";
    if (*c.model != "discrete" && *c.model != "cmj") throw ConfigError("model must be 'discrete' or 'cmj'");
    if (*c.model == "discrete") require(c.n.has_value(), cmd, "n");
    if (*c.model == "cmj" && !c.n && !c.t_end) throw ConfigError("grow with model 'cmj' needs n or t_end");
  } else if (cmd == "analyze") {
    require(c.input.has_value(), cmd, "input");
    if (!c.k_top) c.k_top = 10;
  } else if (cmd == "malthus") {
    require(c.spec.has_value(), cmd, "spec");
    if (!c.tol) c.tol = 1e-9;
  } else if (cmd == "trajectory") {
    require(c.spec.has_value(), cmd, "spec");
    require(c.t_end.has_value(), cmd, "t_end");
    if (!c.dt) c.dt = 0.1;
  } else if (cmd == "coverage") {
    require(c.spec.has_value(), cmd, "spec");
    require(c.n.has_value(), cmd, "n");
    require(c.k_list.has_value(), cmd, "k_list");
    for (std::uint64_t k : *c.k_list) {
      if (k > *c.n) throw ConfigError("every entry of k_list must be at most n");
    }
    if (!c.allow_non_sublinear) c.allow_non_sublinear = false;
    if (c.spec->kind() != AttractionKind::kAlphaSublinear && !*c.allow_non_sublinear) {
      throw ConfigError("coverage requires an alpha_sublinear spec unless allow_non_sublinear is true");
    }
  } else if (cmd == "track") {
    require(c.spec.has_value(), cmd, "spec");
    require(c.n_max.has_value(), cmd, "n_max");
    if (*c.n_max < 2) throw ConfigError("n_max must be at least 2");
    if (!c.k_top) c.k_top = 5;
    if (!c.checkpoints) c.checkpoints = std::vector<std::uint64_t>{};
  } else if (cmd == "maxdeg") {
    require(c.alpha.has_value(), cmd, "alpha");
    require(c.n_list.has_value(), cmd, "n_list");
  } else if (cmd == "race") {
    require(c.spec.has_value(), cmd, "spec");
    require(c.shape1.has_value(), cmd, "shape1");
    require(c.shape2.has_value(), cmd, "shape2");
  } else if (cmd == "dominance") {
    require(c.alpha.has_value(), cmd, "alpha");
    require(c.d.has_value(), cmd, "d");
  } else if (cmd == "hoeffding") {
    require(c.n_list.has_value(), cmd, "n_list");
  } else {
    throw ConfigError("unknown subcommand '" + cmd + "'");
  }
}

std::uint64_t default_trials(const std::string& cmd) {
  if (cmd == "coverage" || cmd == "maxdeg") return 100;
  if (cmd == "race" || cmd == "dominance") return 1000;
  if (cmd == "hoeffding") return 1'000'000;
  return 1;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const KeyInfo& k : kKeys) out.emplace_back(k.name);
    return out;
  }();
  return names;
}

json spec_to_json(const AttractionSpec& spec) {
  json out;
  switch (spec.kind()) {
    case AttractionKind::kUniform:
      out["kind"] = "uniform";
      break;
    case AttractionKind::kLinear:
      out["kind"] = "linear";
      break;
    case AttractionKind::kAlphaSublinear:
      out["kind"] = "alpha_sublinear";
      out["alpha"] = *spec.alpha();
      break;
    case AttractionKind::kTable:
      out["kind"] = "table";
      out["values"] = spec.table_values();
      out["tail"] = spec.tail_rule() == TailRule::kConstantLast ? "constant_last" : "reject";
      if (spec.alpha()) out["alpha"] = *spec.alpha();
      break;
  }
  return out;
}

AttractionSpec spec_from_json(const json& doc) {
  if (!doc.is_object()) bad("spec", "expected an object");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string& k = it.key();
    if (k != "kind" && k != "alpha" && k != "values" && k != "tail") bad("spec." + k, "unknown key");
  }
  if (!doc.contains("kind")) bad("spec.kind", "missing");
  const std::string kind = to_string("spec.kind", doc["kind"]);
  auto only = [&](std::initializer_list<const char*> allowed) {
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || it.key() == a;
      if (!ok) bad("spec." + it.key(), "not valid for kind '" + kind + "'");
    }
  };
  try {
    if (kind == "uniform") {
      only({"kind"});
      return AttractionSpec::Uniform();
    }
    if (kind == "linear") {
      only({"kind"});
      return AttractionSpec::Linear();
    }
    if (kind == "alpha_sublinear") {
      only({"kind", "alpha"});
      if (!doc.contains("alpha")) bad("spec.alpha", "missing");
      return AttractionSpec::AlphaSublinear(to_real("spec.alpha", doc["alpha"]));
    }
    if (kind == "table") {
      only({"kind", "alpha", "values", "tail"});
      if (!doc.contains("values") || !doc["values"].is_array()) bad("spec.values", "expected a list of numbers");
      std::vector<double> values;
      for (const json& v : doc["values"]) values.push_back(to_real("spec.values", v));
      TailRule tail = TailRule::kConstantLast;
      if (doc.contains("tail")) {
        const std::string t = to_string("spec.tail", doc["tail"]);
        if (t == "reject") {
          tail = TailRule::kReject;
        } else if (t != "constant_last") {
          bad("spec.tail", "expected 'constant_last' or 'reject'");
        }
      }
      std::optional<double> alpha;
      if (doc.contains("alpha")) alpha = to_real("spec.alpha", doc["alpha"]);
      return AttractionSpec::Table(std::move(values), tail, alpha);
    }
  } catch (const std::invalid_argument& e) {
    bad("spec", e.what());
  }
  bad("spec.kind", "unknown kind '" + kind + "'");
}

ExperimentConfig parse_config(const json& document, const std::map<std::string, std::string>& overrides,
                              const std::optional<std::string>& cmd_override) {
  if (!document.is_object()) throw ConfigError("config document must be a JSON object");
  json merged = document;
  for (const auto& [key, text] : overrides) {
    const KeyInfo* info = find_key(key);
    if (!info) throw ConfigError("unknown key '" + key + "'");
    merged[key] = flag_to_json(key, info->type, text);
  }
  if (cmd_override) merged["cmd"] = *cmd_override;

  ExperimentConfig c;
  if (const char* env = std::getenv(kOutDirEnv); env && *env) c.out_dir = env;

  for (auto it = merged.begin(); it != merged.end(); ++it) {
    const std::string& key = it.key();
    const json& v = it.value();
    const KeyInfo* info = find_key(key);
    if (!info) throw ConfigError("unknown key '" + key + "'");
    if (key == "cmd") c.cmd = to_string(key, v);
    else if (key == "spec") c.spec = spec_from_json(v);
    else if (key == "model") c.model = to_string(key, v);
    else if (key == "n") c.n = to_uint(key, v);
    else if (key == "n_max") c.n_max = to_uint(key, v);
    else if (key == "d") c.d = to_uint(key, v);
    else if (key == "k") c.k = to_uint(key, v);
    else if (key == "k_top") c.k_top = to_uint(key, v);
    else if (key == "t_end") c.t_end = to_real(key, v);
    else if (key == "dt") c.dt = to_real(key, v);
    else if (key == "alpha") c.alpha = to_real(key, v);
    else if (key == "theta") c.theta = to_real(key, v);
    else if (key == "tol") c.tol = to_real(key, v);
    else if (key == "k_list") c.k_list = to_uint_list(key, v);
    else if (key == "n_list") c.n_list = to_uint_list(key, v);
    else if (key == "r_list") c.r_list = to_uint_list(key, v);
    else if (key == "checkpoints") c.checkpoints = to_uint_list(key, v);
    else if (key == "shape1") c.shape1 = to_string(key, v);
    else if (key == "shape2") c.shape2 = to_string(key, v);
    else if (key == "input") c.input = to_string(key, v);
    else if (key == "allow_non_sublinear") {
      if (!v.is_boolean()) bad(key, "expected true or false");
      c.allow_non_sublinear = v.get<bool>();
    }
    else if (key == "trials") c.trials = to_uint(key, v);
    else if (key == "seed") c.seed = to_uint(key, v);
    else if (key == "out_dir") c.out_dir = to_string(key, v);
    else if (key == "threads") c.threads = to_uint(key, v);
    else if (key == "pop_cap") c.pop_cap = to_uint(key, v);
    else if (key == "stride") c.stride = to_uint(key, v);
  }
  if (c.cmd.empty()) throw ConfigError("missing required key 'cmd'");
  if (!merged.contains("trials")) c.trials = default_trials(c.cmd);
  resolve(c);
  return c;
}

ExperimentConfig parse_config_text(const std::string& json_text, const std::map<std::string, std::string>& overrides) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON config: ") + e.what());
  }
  return parse_config(doc, overrides);
}

json config_to_json(const ExperimentConfig& c) {
  json out;
  out["cmd"] = c.cmd;
  if (c.spec) out["spec"] = spec_to_json(*c.spec);
  if (c.model) out["model"] = *c.model;
  if (c.n) out["n"] = *c.n;
  if (c.n_max) out["n_max"] = *c.n_max;
  if (c.d) out["d"] = *c.d;
  if (c.k) out["k"] = *c.k;
  if (c.k_top) out["k_top"] = *c.k_top;
  if (c.t_end) out["t_end"] = *c.t_end;
  if (c.dt) out["dt"] = *c.dt;
  if (c.alpha) out["alpha"] = *c.alpha;
  if (c.theta) out["theta"] = *c.theta;
  if (c.tol) out["tol"] = *c.tol;
  if (c.k_list) out["k_list"] = *c.k_list;
  if (c.n_list) out["n_list"] = *c.n_list;
  if (c.r_list) out["r_list"] = *c.r_list;
  if (c.checkpoints) out["checkpoints"] = *c.checkpoints;
  if (c.shape1) out["shape1"] = *c.shape1;
  if (c.shape2) out["shape2"] = *c.shape2;
  if (c.input) out["input"] = *c.input;
  if (c.allow_non_sublinear) out["allow_non_sublinear"] = *c.allow_non_sublinear;
  out["trials"] = c.trials;
  out["seed"] = c.seed;
  out["out_dir"] = c.out_dir;
  out["threads"] = c.threads;
  out["pop_cap"] = c.pop_cap;
  out["stride"] = c.stride;
  return out;
}

}  // namespace cmjtree::cli
