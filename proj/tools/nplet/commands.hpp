#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "nplet/search.hpp"

namespace nplet::cli {

// Exit codes.
inline constexpr int kExitClean = 0;
inline constexpr int kExitDiscovery = 1;     // anomaly found
inline constexpr int kExitInconsistent = 2;  // internal inconsistency
inline constexpr int kExitUsage = 3;

enum class Format { human, records };

struct CommandResult {
  int exit_code = kExitClean;
  std::string report;
};

CommandResult cmd_test(const std::vector<std::int64_t>& exponents, Format format);
CommandResult cmd_bounds(const std::vector<std::int64_t>& ds, bool solve, Format format);
CommandResult cmd_search(const SearchConfig& config, Format format);
CommandResult cmd_verify(const std::string& path, Format format);
CommandResult cmd_oracle(const std::vector<std::int64_t>& exponents, std::complex<double> basepoint,
                         Format format);

/// Parses argv (without the program name) and dispatches. Never throws.
CommandResult run_cli(const std::vector<std::string>& args);

}  // namespace nplet::cli
