#include "gasket_cli/config.hpp"

#include <cstdlib>
#include <fstream>

#include "json.hpp"

#include "gasket/errors.hpp"

namespace gasket::cli {

namespace {

template <class T>
void apply(std::optional<T>& into, const std::optional<T>& from) {
  if (from) into = from;
}

void merge(ConfigOverrides& into, const ConfigOverrides& from) {
  apply(into.tolerance, from.tolerance);
  apply(into.max_block_exponent, from.max_block_exponent);
  apply(into.max_ladder_index, from.max_ladder_index);
  apply(into.kl_terms, from.kl_terms);
  apply(into.alpha_horizon, from.alpha_horizon);
  apply(into.output_format, from.output_format);
}

double parse_double(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw DomainError(key + ": not a number: '" + text + "'");
  }
}

long parse_integer(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const long v = std::stol(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw DomainError(key + ": not an integer: '" + text + "'");
  }
}

}  // namespace

void RunConfig::validate() const {
  if (!(tolerance > 0) || tolerance > 1e-3) throw DomainError("tolerance must lie in (0, 1e-3]");
  if (max_block_exponent < 1 || max_block_exponent > kHardMaxBlockExponent) {
    throw ResourceError("max_block_exponent must lie in 1.." + std::to_string(kHardMaxBlockExponent));
  }
  if (max_ladder_index < 2 || max_ladder_index > kHardMaxLadderIndex) {
    throw ResourceError("max_n must lie in 2.." + std::to_string(kHardMaxLadderIndex));
  }
  if (kl_terms < 1 || kl_terms > kHardMaxKlTerms) {
    throw ResourceError("kl_terms must lie in 1.." + std::to_string(kHardMaxKlTerms));
  }
  if (alpha_horizon < 16 || alpha_horizon > kHardMaxAlphaHorizon) {
    throw ResourceError("alpha_horizon must lie in 16.." + std::to_string(kHardMaxAlphaHorizon));
  }
}

BasesOptions RunConfig::bases_options() const {
  BasesOptions o;
  o.tolerance = tolerance;
  o.max_ladder_index = max_ladder_index;
  return o;
}

ExpansionOptions RunConfig::expansion_options() const {
  ExpansionOptions o;
  o.alpha_horizon = alpha_horizon;
  o.max_alpha_horizon = std::max(alpha_horizon, kHardMaxAlphaHorizon);
  return o;
}

SpectrumOptions RunConfig::spectrum_options() const {
  SpectrumOptions o;
  o.bases = bases_options();
  o.expansions = expansion_options();
  o.kl_terms = kl_terms;
  return o;
}

EnvLookup process_environment() {
  return [](const std::string& name) -> std::optional<std::string> {
    if (const char* v = std::getenv(name.c_str())) return std::string(v);
    return std::nullopt;
  };
}

OutputFormat parse_format(const std::string& text) {
  if (text == "text") return OutputFormat::kText;
  if (text == "json") return OutputFormat::kJson;
  throw DomainError("format must be text or json, got '" + text + "'");
}

std::string to_string(OutputFormat f) { return f == OutputFormat::kJson ? "json" : "text"; }

ConfigOverrides read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("config file '" + path.string() + "': " + e.what());
  }
  if (!j.is_object()) throw DomainError("config file '" + path.string() + "' must hold a JSON object");
  ConfigOverrides o;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "tolerance") {
        o.tolerance = value.get<double>();
      } else if (key == "max_block_exponent") {
        o.max_block_exponent = value.get<int>();
      } else if (key == "max_n") {
        o.max_ladder_index = value.get<int>();
      } else if (key == "kl_terms") {
        o.kl_terms = value.get<int>();
      } else if (key == "alpha_horizon") {
        o.alpha_horizon = value.get<std::size_t>();
      } else if (key == "format") {
        o.output_format = parse_format(value.get<std::string>());
      } else {
        throw DomainError("config file '" + path.string() + "': unknown key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("config file '" + path.string() + "': " + e.what());
  }
  return o;
}

ConfigOverrides read_environment(const EnvLookup& env) {
  ConfigOverrides o;
  if (auto v = env("GS_TOLERANCE")) o.tolerance = parse_double("GS_TOLERANCE", *v);
  if (auto v = env("GS_MAX_BLOCK_EXPONENT")) {
    o.max_block_exponent = static_cast<int>(parse_integer("GS_MAX_BLOCK_EXPONENT", *v));
  }
  if (auto v = env("GS_MAX_N")) o.max_ladder_index = static_cast<int>(parse_integer("GS_MAX_N", *v));
  if (auto v = env("GS_KL_TERMS")) o.kl_terms = static_cast<int>(parse_integer("GS_KL_TERMS", *v));
  if (auto v = env("GS_ALPHA_HORIZON")) {
    const long h = parse_integer("GS_ALPHA_HORIZON", *v);
    if (h < 0) throw DomainError("GS_ALPHA_HORIZON must be nonnegative");
    o.alpha_horizon = static_cast<std::size_t>(h);
  }
  if (auto v = env("GS_FORMAT")) o.output_format = parse_format(*v);
  return o;
}

RunConfig resolve_config(const std::optional<std::filesystem::path>& file, const EnvLookup& env,
                         const ConfigOverrides& flags) {
  ConfigOverrides merged;
  if (file) merge(merged, read_config_file(*file));
  merge(merged, read_environment(env));
  merge(merged, flags);
  RunConfig c;
  if (merged.tolerance) c.tolerance = *merged.tolerance;
  if (merged.max_block_exponent) c.max_block_exponent = *merged.max_block_exponent;
  if (merged.max_ladder_index) c.max_ladder_index = *merged.max_ladder_index;
  if (merged.kl_terms) c.kl_terms = *merged.kl_terms;
  if (merged.alpha_horizon) c.alpha_horizon = *merged.alpha_horizon;
  if (merged.output_format) c.output_format = *merged.output_format;
  c.validate();
  return c;
}

}  // namespace gasket::cli
