#pragma once

// Parsing of "kind:key=value,..." spec strings shared by meshes and fields.

#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "emtopo/error.hpp"
#include "emtopo/mesh.hpp"

namespace emtopo::detail {

inline std::map<std::string, std::string> parse_kv(const std::string& body) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) fail(ErrorCode::ParseError, "expected key=value, got '" + item + "'");
    kv[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return kv;
}

inline double to_double(const std::string& s) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(ErrorCode::ParseError, "not a number: '" + s + "'");
  }
}

class Params {
 public:
  Params(std::string kind, std::map<std::string, std::string> kv) : kind_(std::move(kind)), kv_(std::move(kv)) {}
  double num(const std::string& key, double fallback) {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    const double v = to_double(it->second);
    kv_.erase(it);
    return v;
  }
  int integer(const std::string& key, int fallback) { return static_cast<int>(std::lround(num(key, fallback))); }
  std::optional<std::string> raw(const std::string& key) {
    auto it = kv_.find(key);
    if (it == kv_.end()) return std::nullopt;
    auto v = it->second;
    kv_.erase(it);
    return v;
  }
  void done() const {
    if (!kv_.empty()) fail(ErrorCode::ParseError, "unknown parameter '" + kv_.begin()->first + "' for " + kind_);
  }

 private:
  std::string kind_;
  std::map<std::string, std::string> kv_;
};

/// "x;y;z/x;y;z" lists of points.
inline std::vector<Point3> parse_points(const std::string& text) {
  std::vector<Point3> out;
  std::stringstream ss(text);
  std::string one;
  while (std::getline(ss, one, '/')) {
    std::stringstream cs(one);
    std::string x;
    Point3 pt{};
    int k = 0;
    while (std::getline(cs, x, ';')) {
      if (k > 2) fail(ErrorCode::ParseError, "point needs three coordinates");
      pt[k++] = to_double(x);
    }
    if (k != 3) fail(ErrorCode::ParseError, "point needs three coordinates");
    out.push_back(pt);
  }
  return out;
}

/// Number with an optional trailing "e" meaning multiples of `unit`.
inline double to_quantity(const std::string& s, double unit) {
  if (!s.empty() && s.back() == 'e') return to_double(s.substr(0, s.size() - 1)) * unit;
  return to_double(s);
}

}  // namespace emtopo::detail
