#pragma once

#include <string>
#include <vector>

#include "gasket_cli/app.hpp"

namespace gasket::cli {

struct SelftestItem {
  std::string name;
  /// Parameter range covered, e.g. "1<=n<=16".
  std::string range;
  bool pass = false;
  std::string detail;
};

struct SelftestReport {
  std::vector<SelftestItem> items;
  bool all_pass() const;
};

/// Runs the built-in battery. Each item catches its own errors and records
/// them as failures.
SelftestReport run_selftest(const RunConfig& config, const EpsProvider& eps_provider = {});

}  // namespace gasket::cli
