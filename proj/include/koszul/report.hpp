#pragma once

#include "koszul/model.hpp"

namespace koszul {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string witness;  // printed polynomial or diagnostic, empty when passing
};

struct Report {
  std::string command;
  std::vector<CheckResult> checks;
  std::vector<std::string> output;  // informational lines, deterministic
  long long elapsed_ms = 0;         // excluded from the JSON rendering

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  int exit_code() const { return all_pass() ? 0 : 1; }
};

struct CommandFlags {
  std::string der, poly, poly2, form, table, bivec, gens;
  std::size_t m = 1;
};

/// Executes one CLI command against a model. Input problems (unknown names,
/// precondition violations) surface as kernel_error/parse_error, which the
/// CLI maps to exit code 2.
Report run_command(const std::string& command, const ModelFile& model,
                   const CommandFlags& flags);

std::string report_text(const Report& r);
std::string report_json(const Report& r);  // stable schema, no timing

}  // namespace koszul
