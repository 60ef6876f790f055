#include "asymdlms/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <map>
#include <optional>
#include <set>

namespace asymdlms {

const char* network_rule_name(NetworkRule rule) {
  return rule == NetworkRule::probability ? "probability" : "radius";
}

const char* noise_kind_name(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::gaussian: return "gaussian";
    case NoiseKind::impulsive: return "impulsive";
    case NoiseKind::alpha_stable: return "alpha_stable";
  }
  return "?";
}

const char* covariance_kind_name(CovarianceKind kind) {
  switch (kind) {
    case CovarianceKind::uniform_scalar: return "uniform_scalar";
    case CovarianceKind::per_node_scalar: return "per_node_scalar";
    case CovarianceKind::per_tap_diagonal: return "per_tap_diagonal";
  }
  return "?";
}

const char* topology_policy_name(TopologyPolicy policy) {
  return policy == TopologyPolicy::fixed ? "fixed" : "redraw";
}

std::vector<AlgorithmSpec> default_algorithms() {
  return {
      {Algorithm::dlms, 0.35, 1.0, 1.0, kDefaultLecClamp},
      {Algorithm::dselms, 0.35, 1.0, 1.0, kDefaultLecClamp},
      {Algorithm::dllad, 0.35, 1.0, 1.0, kDefaultLecClamp},
      {Algorithm::dllclms, 0.4, 0.8, 4.0, kDefaultLecClamp},
      {Algorithm::dqqclms, 0.4, 0.8, 6.0, kDefaultLecClamp},
      {Algorithm::dleclms, 0.4, 0.32, 6.0, kDefaultLecClamp},
  };
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

double parse_real(const std::string& value, int line) {
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0' || !std::isfinite(v))
    throw ConfigError("'" + value + "' is not a finite number", line);
  return v;
}

int parse_int(const std::string& value, int line) {
  char* end = nullptr;
  const long long v = std::strtoll(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0')
    throw ConfigError("'" + value + "' is not an integer", line);
  if (v < -2147483647LL || v > 2147483647LL)
    throw ConfigError("'" + value + "' is out of range", line);
  return static_cast<int>(v);
}

std::uint64_t parse_u64(const std::string& value, int line) {
  if (value.empty() || value[0] == '-')
    throw ConfigError("'" + value + "' is not an unsigned integer", line);
  char* end = nullptr;
  const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0')
    throw ConfigError("'" + value + "' is not an unsigned integer", line);
  return v;
}

// Raw per-algorithm section contents; resolved after parsing so keys may
// appear in any order and defaults depend on the algorithm name.
struct RawAlgorithm {
  int line = 0;
  std::optional<std::string> name;
  std::optional<double> mu, a, b, clamp;
  std::set<std::string> seen;
};

const std::map<std::string, std::vector<std::string>> kSectionKeys = {
    {"network", {"nodes", "rule", "param", "retry_budget", "domain_size"}},
    {"system", {"taps", "weight_rule"}},
    {"signal", {"profile", "variance", "variance_min", "variance_max"}},
    {"noise",
     {"kind", "sigma", "impulse_probability", "impulse_strength", "alpha", "beta",
      "scale", "location"}},
    {"algorithm", {"name", "mu", "a", "b", "clamp"}},
    {"run", {"iterations", "monte_carlo", "master_seed", "topology_per_trial"}},
};

[[noreturn]] void unknown_key(const std::string& section, const std::string& key,
                              int line) {
  if (section == "noise" && (key == "gamma" || key == "delta"))
    throw ConfigError("unknown key '" + key + "' in [noise]; the dispersion is "
                      "'scale' and the shift is 'location'", line);
  std::string expected;
  for (const auto& k : kSectionKeys.at(section)) {
    if (!expected.empty()) expected += ", ";
    expected += k;
  }
  throw ConfigError("unknown key '" + key + "' in [" + section + "]; expected one of: " +
                    expected, line);
}

AlgorithmSpec resolve_algorithm(const RawAlgorithm& raw) {
  if (!raw.name)
    throw ConfigError("[algorithm] section is missing 'name'", raw.line);
  const auto algorithm = algorithm_from_name(*raw.name);
  if (!algorithm)
    throw ConfigError("unknown algorithm '" + *raw.name + "'; expected one of: DLMS, "
                      "DSELMS, DLLAD, DLLCLMS, DQQCLMS, DLECLMS", raw.line);
  AlgorithmSpec spec;
  spec.name = *algorithm;
  const bool proposed = is_asymmetric(spec.name);
  spec.mu = raw.mu.value_or(proposed ? 0.4 : 0.35);
  switch (spec.name) {
    case Algorithm::dllclms: spec.a = 0.8; spec.b = 4.0; break;
    case Algorithm::dqqclms: spec.a = 0.8; spec.b = 6.0; break;
    case Algorithm::dleclms: spec.a = 0.32; spec.b = 6.0; break;
    default: break;
  }
  if (raw.a) {
    if (!proposed)
      throw ConfigError("'a' does not apply to " + *raw.name, raw.line);
    spec.a = *raw.a;
  }
  if (raw.b) {
    if (!proposed)
      throw ConfigError("'b' does not apply to " + *raw.name, raw.line);
    spec.b = *raw.b;
  }
  if (raw.clamp) {
    if (spec.name != Algorithm::dleclms)
      throw ConfigError("'clamp' applies only to DLECLMS", raw.line);
    spec.lec_clamp = *raw.clamp;
  }
  try {
    validate(spec);
  } catch (const std::invalid_argument& err) {
    throw ConfigError("algorithm " + *raw.name + ": " + err.what(), raw.line);
  }
  return spec;
}

std::string fmt_real(double v) {
  char buf[64];
  // Plain decimal for integral values; the shortest-%g loop below would
  // render 50 as 5e+01.
  if (v == std::floor(v) && std::fabs(v) < 1e15) {
    std::snprintf(buf, sizeof(buf), "%.0f", v);
    return buf;
  }
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace

ExperimentConfig parse_config(std::string_view text, bool require_master_seed) {
  ExperimentConfig config;
  std::string section;
  std::set<std::string> opened_sections;
  std::set<std::string> seen_keys;  // "section.key" for the singleton sections
  std::vector<RawAlgorithm> raw_algorithms;
  bool seed_seen = false;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view raw_line =
        text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    std::string line{raw_line};
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("unterminated section header", line_no);
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (kSectionKeys.find(section) == kSectionKeys.end())
        throw ConfigError("unknown section [" + section + "]", line_no);
      if (section == "algorithm") {
        raw_algorithms.push_back(RawAlgorithm{line_no, {}, {}, {}, {}, {}, {}});
      } else if (!opened_sections.insert(section).second) {
        throw ConfigError("section [" + section + "] appears more than once", line_no);
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected 'key = value' or a [section] header", line_no);
    if (section.empty())
      throw ConfigError("key outside of any section", line_no);
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key", line_no);
    if (value.empty()) throw ConfigError("empty value for key '" + key + "'", line_no);

    const auto& allowed = kSectionKeys.at(section);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      unknown_key(section, key, line_no);

    if (section == "algorithm") {
      RawAlgorithm& raw = raw_algorithms.back();
      if (!raw.seen.insert(key).second)
        throw ConfigError("duplicate key '" + key + "' in [algorithm]", line_no);
      if (key == "name") raw.name = value;
      else if (key == "mu") raw.mu = parse_real(value, line_no);
      else if (key == "a") raw.a = parse_real(value, line_no);
      else if (key == "b") raw.b = parse_real(value, line_no);
      else if (key == "clamp") raw.clamp = parse_real(value, line_no);
      continue;
    }

    if (!seen_keys.insert(section + "." + key).second)
      throw ConfigError("duplicate key '" + key + "' in [" + section + "]", line_no);

    if (section == "network") {
      if (key == "nodes") config.network.nodes = parse_int(value, line_no);
      else if (key == "rule") {
        if (value == "probability") config.network.rule = NetworkRule::probability;
        else if (value == "radius") config.network.rule = NetworkRule::radius;
        else throw ConfigError("rule must be 'probability' or 'radius'", line_no);
      } else if (key == "param") config.network.param = parse_real(value, line_no);
      else if (key == "retry_budget") config.network.retry_budget = parse_int(value, line_no);
      else if (key == "domain_size") config.network.domain_size = parse_real(value, line_no);
    } else if (section == "system") {
      if (key == "taps") config.system.taps = parse_int(value, line_no);
      else if (key == "weight_rule") config.system.weight_rule = value;
    } else if (section == "signal") {
      if (key == "profile") {
        if (value == "uniform_scalar") config.signal.profile = CovarianceKind::uniform_scalar;
        else if (value == "per_node_scalar")
          config.signal.profile = CovarianceKind::per_node_scalar;
        else if (value == "per_tap_diagonal")
          config.signal.profile = CovarianceKind::per_tap_diagonal;
        else
          throw ConfigError("profile must be 'uniform_scalar', 'per_node_scalar', or "
                            "'per_tap_diagonal'", line_no);
      } else if (key == "variance") config.signal.variance = parse_real(value, line_no);
      else if (key == "variance_min") config.signal.variance_min = parse_real(value, line_no);
      else if (key == "variance_max") config.signal.variance_max = parse_real(value, line_no);
    } else if (section == "noise") {
      if (key == "kind") {
        if (value == "gaussian") config.noise.kind = NoiseKind::gaussian;
        else if (value == "impulsive") config.noise.kind = NoiseKind::impulsive;
        else if (value == "alpha_stable") config.noise.kind = NoiseKind::alpha_stable;
        else throw ConfigError("kind must be 'gaussian', 'impulsive', or 'alpha_stable'",
                               line_no);
      } else if (key == "sigma") config.noise.sigma = parse_real(value, line_no);
      else if (key == "impulse_probability")
        config.noise.impulse_probability = parse_real(value, line_no);
      else if (key == "impulse_strength")
        config.noise.impulse_strength = parse_real(value, line_no);
      else if (key == "alpha") config.noise.alpha = parse_real(value, line_no);
      else if (key == "beta") config.noise.beta = parse_real(value, line_no);
      else if (key == "scale") config.noise.scale = parse_real(value, line_no);
      else if (key == "location") config.noise.location = parse_real(value, line_no);
    } else if (section == "run") {
      if (key == "iterations") config.run.iterations = parse_int(value, line_no);
      else if (key == "monte_carlo") config.run.monte_carlo = parse_int(value, line_no);
      else if (key == "master_seed") {
        config.run.master_seed = parse_u64(value, line_no);
        seed_seen = true;
      } else if (key == "topology_per_trial") {
        if (value == "fixed") config.run.topology_per_trial = TopologyPolicy::fixed;
        else if (value == "redraw") config.run.topology_per_trial = TopologyPolicy::redraw;
        else throw ConfigError("topology_per_trial must be 'fixed' or 'redraw'", line_no);
      }
    }
  }

  // Semantic validation over the assembled config.
  if (config.network.nodes < 2) throw ConfigError("nodes must be at least 2");
  if (config.network.rule == NetworkRule::probability) {
    if (!(config.network.param >= 0.0 && config.network.param <= 1.0))
      throw ConfigError("param must lie in [0, 1] for the probability rule");
  } else if (!(config.network.param > 0.0)) {
    throw ConfigError("param must be positive for the radius rule");
  }
  if (config.network.retry_budget < 1) throw ConfigError("retry_budget must be positive");
  if (!(config.network.domain_size > 0.0)) throw ConfigError("domain_size must be positive");
  if (config.system.taps < 1) throw ConfigError("taps must be at least 1");
  if (config.system.weight_rule != "uniform")
    throw ConfigError("weight_rule must be 'uniform'");
  if (config.signal.profile == CovarianceKind::uniform_scalar) {
    if (!(config.signal.variance > 0.0)) throw ConfigError("variance must be positive");
  } else if (!(config.signal.variance_min > 0.0 &&
               config.signal.variance_max >= config.signal.variance_min)) {
    throw ConfigError("variance range must satisfy 0 < variance_min <= variance_max");
  }
  if (config.noise.kind == NoiseKind::gaussian || config.noise.kind == NoiseKind::impulsive) {
    if (!(config.noise.sigma >= 0.0)) throw ConfigError("sigma must be nonnegative");
  }
  if (config.noise.kind == NoiseKind::impulsive) {
    if (!(config.noise.impulse_probability >= 0.0 && config.noise.impulse_probability <= 1.0))
      throw ConfigError("impulse_probability must lie in [0, 1]");
    if (!(config.noise.impulse_strength >= 1.0))
      throw ConfigError("impulse_strength must be at least 1");
  }
  if (config.noise.kind == NoiseKind::alpha_stable) {
    if (!(config.noise.alpha > 0.0 && config.noise.alpha <= 2.0))
      throw ConfigError("alpha must lie in (0, 2]");
    if (!(config.noise.beta >= -1.0 && config.noise.beta <= 1.0))
      throw ConfigError("beta must lie in [-1, 1]");
    if (!(config.noise.scale > 0.0)) throw ConfigError("scale must be positive");
  }
  if (config.run.iterations < 1) throw ConfigError("iterations must be at least 1");
  if (config.run.monte_carlo < 1) throw ConfigError("monte_carlo must be at least 1");
  if (require_master_seed && !seed_seen)
    throw ConfigError("master_seed is required in [run]");

  if (raw_algorithms.empty()) {
    config.algorithms = default_algorithms();
  } else {
    for (const auto& raw : raw_algorithms)
      config.algorithms.push_back(resolve_algorithm(raw));
    std::set<Algorithm> names;
    for (const auto& spec : config.algorithms)
      if (!names.insert(spec.name).second)
        throw ConfigError(std::string("algorithm ") + algorithm_name(spec.name) +
                          " is configured more than once");
  }
  return config;
}

std::string canonical_config(const ExperimentConfig& config) {
  std::string out;
  auto kv = [&out](const char* key, const std::string& value) {
    out += key;
    out += " = ";
    out += value;
    out += "\n";
  };
  out += "[network]\n";
  kv("nodes", std::to_string(config.network.nodes));
  kv("rule", network_rule_name(config.network.rule));
  kv("param", fmt_real(config.network.param));
  kv("retry_budget", std::to_string(config.network.retry_budget));
  kv("domain_size", fmt_real(config.network.domain_size));
  out += "\n[system]\n";
  kv("taps", std::to_string(config.system.taps));
  kv("weight_rule", config.system.weight_rule);
  out += "\n[signal]\n";
  kv("profile", covariance_kind_name(config.signal.profile));
  if (config.signal.profile == CovarianceKind::uniform_scalar) {
    kv("variance", fmt_real(config.signal.variance));
  } else {
    kv("variance_min", fmt_real(config.signal.variance_min));
    kv("variance_max", fmt_real(config.signal.variance_max));
  }
  out += "\n[noise]\n";
  kv("kind", noise_kind_name(config.noise.kind));
  if (config.noise.kind == NoiseKind::gaussian) {
    kv("sigma", fmt_real(config.noise.sigma));
  } else if (config.noise.kind == NoiseKind::impulsive) {
    kv("sigma", fmt_real(config.noise.sigma));
    kv("impulse_probability", fmt_real(config.noise.impulse_probability));
    kv("impulse_strength", fmt_real(config.noise.impulse_strength));
  } else {
    kv("alpha", fmt_real(config.noise.alpha));
    kv("beta", fmt_real(config.noise.beta));
    kv("scale", fmt_real(config.noise.scale));
    kv("location", fmt_real(config.noise.location));
  }
  for (const auto& spec : config.algorithms) {
    out += "\n[algorithm]\n";
    kv("name", algorithm_name(spec.name));
    kv("mu", fmt_real(spec.mu));
    if (is_asymmetric(spec.name)) {
      kv("a", fmt_real(spec.a));
      kv("b", fmt_real(spec.b));
    }
    if (spec.name == Algorithm::dleclms) kv("clamp", fmt_real(spec.lec_clamp));
  }
  out += "\n[run]\n";
  kv("iterations", std::to_string(config.run.iterations));
  kv("monte_carlo", std::to_string(config.run.monte_carlo));
  kv("master_seed", std::to_string(config.run.master_seed));
  kv("topology_per_trial", topology_policy_name(config.run.topology_per_trial));
  return out;
}

}  // namespace asymdlms
