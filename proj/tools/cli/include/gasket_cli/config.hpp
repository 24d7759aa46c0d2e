#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include "gasket/spectrum.hpp"

namespace gasket::cli {

enum class OutputFormat { kText, kJson };

struct RunConfig {
  double tolerance = 1e-12;
  int max_block_exponent = kDefaultMaxBlockExponent;
  int max_ladder_index = 16;
  int kl_terms = 32;
  std::size_t alpha_horizon = 256;
  OutputFormat output_format = OutputFormat::kText;

  /// Throws DomainError / ResourceError when a value is outside its
  /// documented range.
  void validate() const;

  SpectrumOptions spectrum_options() const;
  BasesOptions bases_options() const;
  ExpansionOptions expansion_options() const;
};

inline constexpr int kHardMaxKlTerms = 60;
inline constexpr std::size_t kHardMaxAlphaHorizon = 4096;

/// Looks up an environment variable; empty optional when unset.
using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;
EnvLookup process_environment();

/// Keys that may be overridden. Each one has a config-file key, an
/// environment variable and a flag.
struct ConfigOverrides {
  std::optional<double> tolerance;
  std::optional<int> max_block_exponent;
  std::optional<int> max_ladder_index;
  std::optional<int> kl_terms;
  std::optional<std::size_t> alpha_horizon;
  std::optional<OutputFormat> output_format;
};

/// JSON config file with keys tolerance, max_block_exponent, max_n,
/// kl_terms, alpha_horizon, format. Unknown keys are rejected.
ConfigOverrides read_config_file(const std::filesystem::path& path);

/// GS_TOLERANCE, GS_MAX_BLOCK_EXPONENT, GS_MAX_N, GS_KL_TERMS,
/// GS_ALPHA_HORIZON, GS_FORMAT.
ConfigOverrides read_environment(const EnvLookup& env);

/// defaults < file < environment < flags.
RunConfig resolve_config(const std::optional<std::filesystem::path>& file, const EnvLookup& env,
                         const ConfigOverrides& flags);

OutputFormat parse_format(const std::string& text);
std::string to_string(OutputFormat f);

}  // namespace gasket::cli
