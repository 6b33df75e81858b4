#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace jensen::cli {

/// Bad arguments. Carries the usage text of the verb it was raised for.
class UsageError : public std::invalid_argument {
 public:
  UsageError(const std::string& message, std::string usage)
      : std::invalid_argument(message), usage_(std::move(usage)) {}
  const std::string& usage() const { return usage_; }

 private:
  std::string usage_;
};

struct Command {
  std::string verb;  // info, sr2, solve, hom, verify, counterexample
  std::string group_spec;
  std::optional<std::string> target_spec;
  // Flag name without dashes -> value; switches map to "".
  std::map<std::string, std::string> options;

  bool flag(const std::string& name) const { return options.count(name) != 0; }
  std::optional<std::string> option(const std::string& name) const;
};

/// argv[0] is the program name. Throws UsageError.
Command parse_args(const std::vector<std::string>& args);

struct Outcome {
  int exit_code = 0;  // 0 success, 1 check failure, 2 usage or input error
  std::string output;
  std::string error;
};

/// Runs a parsed command. Never throws; input errors become exit code 2.
Outcome execute(const Command& cmd, std::uint64_t cap);

/// JENSEN_MAX_ENUM, or 2^20 when unset. Throws UsageError on garbage.
std::uint64_t enumeration_cap_from_env();

/// parse_args + execute + --out handling, as the executable does.
Outcome run(const std::vector<std::string>& args);

std::string usage();

}  // namespace jensen::cli
