#pragma once

#include <string>
#include <utility>
#include <vector>

namespace grandmorrey {

// one verified inequality; pass means lhs <= kappa*rhs + 1e-12
struct CheckResult {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double kappa = 1.0;
  bool pass = false;
  double kappa_needed = 0.0;  // lhs/rhs, the slack actually required
  std::string witness;        // attaining center / grid point / family index
};

CheckResult make_check(std::string name, double lhs, double rhs, double kappa,
                       std::string witness = "");

struct Report {
  std::string version;
  std::vector<std::pair<std::string, std::string>> config;  // echo, in file order
  std::vector<std::pair<std::string, double>> scalars;      // insertion order
  std::vector<CheckResult> checks;
  // volatile by nature; carried in the structured output only, never in the
  // flat table, so table bytes stay reproducible
  double wall_time_ms = 0.0;

  void put(const std::string& name, double value);  // upsert, keeps first position
  void put_config(const std::string& key, const std::string& value);
  bool all_pass() const;
};

enum class Format { Json, Csv };

Format parse_format(const std::string& name);  // throws UnsupportedFormat

// CSV: header "name,lhs,rhs,kappa,pass", one row per check, floats at 17
// significant digits. JSON: the whole structure including scalars and
// witnesses.
std::string emit_report(const Report& r, Format fmt);

Report parse_report_json(const std::string& text);

}  // namespace grandmorrey
