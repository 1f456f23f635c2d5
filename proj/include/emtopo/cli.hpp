#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "emtopo/io.hpp"

namespace emtopo::cli {

/// Exit codes of the command-line runner.
inline constexpr int kExitPass = 0;
inline constexpr int kExitError = 1;   // computation error, error object emitted
inline constexpr int kExitUsage = 2;   // unknown flag, bad value
inline constexpr int kExitFailed = 3;  // report emitted, some check failed

/// How a check compares value against expected.
enum class CheckMode { Exact, Absolute, Relative, AtMost, AtLeast, True };

struct Check {
  std::string name;
  io::Json value;
  io::Json expected;
  double tolerance = 0.0;
  CheckMode mode = CheckMode::Exact;
  bool pass = false;
};

/// Versioned JSON report with named checks. Every numeric check carries its
/// tolerance; overrides given on the command line replace it by name (or all
/// of them with a bare value).
class Report {
 public:
  explicit Report(std::string command);

  io::Json& data() { return data_; }
  io::Json& operator[](const std::string& key) { return data_[key]; }

  void set_overrides(std::map<std::string, double> by_name, std::optional<double> global);

  bool exact(const std::string& name, std::int64_t value, std::int64_t expected);
  bool exact(const std::string& name, const std::vector<std::int64_t>& value, const std::vector<std::int64_t>& expected);
  bool absolute(const std::string& name, double value, double expected, double tol);
  bool relative(const std::string& name, double value, double expected, double tol);
  bool at_most(const std::string& name, double value, double bound);
  bool at_least(const std::string& name, double value, double bound);
  bool truth(const std::string& name, bool value, const std::string& what);

  void note(const std::string& text) { notes_.push_back(text); }

  bool passed() const;
  const std::vector<Check>& checks() const { return checks_; }
  io::Json to_json() const;
  std::string to_text() const;

 private:
  double tolerance(const std::string& name, double fallback) const;
  bool add(Check c);

  std::string command_;
  io::Json data_ = io::Json::object();
  std::vector<Check> checks_;
  std::vector<std::string> notes_;
  std::map<std::string, double> overrides_;
  std::optional<double> global_;
};

/// Runs one command line (without the program name). Writes the report or
/// error object to `out` (or the --out file) and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace emtopo::cli
