#include <cmath>
#include <sstream>

#include "emtopo/cli.hpp"

namespace emtopo::cli {

namespace {

const char* mode_name(CheckMode m) {
  switch (m) {
    case CheckMode::Exact: return "exact";
    case CheckMode::Absolute: return "abs";
    case CheckMode::Relative: return "rel";
    case CheckMode::AtMost: return "max";
    case CheckMode::AtLeast: return "min";
    case CheckMode::True: return "true";
  }
  return "?";
}

}  // namespace

Report::Report(std::string command) : command_(std::move(command)) {}

void Report::set_overrides(std::map<std::string, double> by_name, std::optional<double> global) {
  overrides_ = std::move(by_name);
  global_ = global;
  // Re-evaluate checks already recorded.
  for (auto& c : checks_) {
    if (c.mode == CheckMode::Exact || c.mode == CheckMode::True) continue;
    c.tolerance = tolerance(c.name, c.tolerance);
    const double v = c.value.get<double>();
    switch (c.mode) {
      case CheckMode::Absolute: c.pass = std::abs(v - c.expected.get<double>()) <= c.tolerance; break;
      case CheckMode::Relative: {
        const double e = c.expected.get<double>();
        c.pass = std::abs(v - e) <= c.tolerance * std::abs(e);
        break;
      }
      case CheckMode::AtMost: c.pass = v <= c.tolerance; break;
      case CheckMode::AtLeast: c.pass = v >= c.tolerance; break;
      default: break;
    }
  }
}

double Report::tolerance(const std::string& name, double fallback) const {
  if (auto it = overrides_.find(name); it != overrides_.end()) return it->second;
  return global_.value_or(fallback);
}

bool Report::add(Check c) {
  checks_.push_back(std::move(c));
  return checks_.back().pass;
}

bool Report::exact(const std::string& name, std::int64_t value, std::int64_t expected) {
  return add({name, value, expected, 0.0, CheckMode::Exact, value == expected});
}

bool Report::exact(const std::string& name, const std::vector<std::int64_t>& value,
                   const std::vector<std::int64_t>& expected) {
  return add({name, value, expected, 0.0, CheckMode::Exact, value == expected});
}

bool Report::absolute(const std::string& name, double value, double expected, double tol) {
  tol = tolerance(name, tol);
  return add({name, value, expected, tol, CheckMode::Absolute, std::abs(value - expected) <= tol});
}

bool Report::relative(const std::string& name, double value, double expected, double tol) {
  tol = tolerance(name, tol);
  return add({name, value, expected, tol, CheckMode::Relative, std::abs(value - expected) <= tol * std::abs(expected)});
}

bool Report::at_most(const std::string& name, double value, double bound) {
  bound = tolerance(name, bound);
  return add({name, value, nullptr, bound, CheckMode::AtMost, value <= bound});
}

bool Report::at_least(const std::string& name, double value, double bound) {
  bound = tolerance(name, bound);
  return add({name, value, nullptr, bound, CheckMode::AtLeast, value >= bound});
}

bool Report::truth(const std::string& name, bool value, const std::string& what) {
  return add({name, value, what, 0.0, CheckMode::True, value});
}

bool Report::passed() const {
  for (const auto& c : checks_)
    if (!c.pass) return false;
  return true;
}

io::Json Report::to_json() const {
  io::Json j;
  j["schema"] = 1;
  j["command"] = command_;
  for (const auto& [k, v] : data_.items()) j[k] = v;
  io::Json checks = io::Json::array();
  for (const auto& c : checks_) {
    io::Json x;
    x["name"] = c.name;
    x["value"] = c.value;
    x["expected"] = c.expected;
    x["tolerance"] = c.tolerance;
    x["mode"] = mode_name(c.mode);
    x["pass"] = c.pass;
    checks.push_back(std::move(x));
  }
  j["checks"] = std::move(checks);
  j["notes"] = notes_;
  j["pass"] = passed();
  return j;
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << command_ << '\n';
  for (const auto& [k, v] : data_.items()) {
    const std::string s = v.dump();
    os << "  " << k << ": " << (s.size() > 160 ? s.substr(0, 157) + "..." : s) << '\n';
  }
  for (const auto& c : checks_) {
    os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << "  value=" << c.value.dump();
    if (!c.expected.is_null()) os << " expected=" << c.expected.dump();
    if (c.mode != CheckMode::Exact && c.mode != CheckMode::True) os << " " << mode_name(c.mode) << "=" << c.tolerance;
    os << '\n';
  }
  for (const auto& n : notes_) os << "note: " << n << '\n';
  os << (passed() ? "PASS" : "FAIL") << '\n';
  return os.str();
}

}  // namespace emtopo::cli
