#include <iostream>
#include <string>
#include <vector>

#include "nplet/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const nplet::cli::CommandResult result = nplet::cli::run_cli(args);
  std::ostream& out = result.exit_code == nplet::cli::kExitUsage ? std::cerr : std::cout;
  out << result.report;
  if (!result.report.empty() && result.report.back() != '\n') out << '\n';
  return result.exit_code;
}
