#pragma once

#include <exception>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "gasket/words.hpp"
#include "gasket_cli/config.hpp"

namespace gasket::cli {

inline constexpr const char* kVersion = "0.3.0";

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // domain, resource, capability, internal and I/O errors; failed selftest
  kExitUsage = 2,
  kExitPrecision = 3,  // precision loss or ambiguous classification
};

int exit_code_for(const std::exception& e) noexcept;

/// Block provider used by the selftest; tests inject corrupted tables here.
using EpsProvider = std::function<TernaryWord(int)>;

struct CliContext {
  EnvLookup env = process_environment();
  EpsProvider eps_provider;
};

/// Runs one command line (without the program name), writing the report to
/// `out` and diagnostics to `err`. Returns the exit code.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const CliContext& ctx = {});

}  // namespace gasket::cli
