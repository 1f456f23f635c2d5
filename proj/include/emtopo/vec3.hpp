#pragma once

#include <cmath>

#include "emtopo/mesh.hpp"

namespace emtopo::vec {

inline Point3 add(const Point3& a, const Point3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Point3 sub(const Point3& a, const Point3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Point3 scale(double s, const Point3& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline double dot(const Point3& a, const Point3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline Point3 cross(const Point3& a, const Point3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double norm(const Point3& a) { return std::sqrt(dot(a, a)); }
inline Point3 normalized(const Point3& a) { return scale(1.0 / norm(a), a); }
// a + s b
inline Point3 axpy(const Point3& a, double s, const Point3& b) { return {a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]}; }

}  // namespace emtopo::vec
