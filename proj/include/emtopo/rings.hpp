#pragma once

// Coefficient rings for exact linear algebra: checked 64-bit integers,
// arbitrary precision integers and the prime field F_p with p = 2^61 - 1.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <utility>

#include "emtopo/error.hpp"

namespace emtopo {

using BigInt = boost::multiprecision::cpp_int;

/// Default magnitude above which int64 arithmetic hands over to BigInt.
inline constexpr std::int64_t kDefaultOverflowThreshold = std::int64_t{1} << 62;

template <class T>
struct Ring;

template <>
struct Ring<std::int64_t> {
  using T = std::int64_t;
  static inline thread_local std::int64_t threshold = kDefaultOverflowThreshold;

  static T zero() { return 0; }
  static T one() { return 1; }
  static bool is_zero(T a) { return a == 0; }
  static bool is_unit(T a) { return a == 1 || a == -1; }
  static T unit_inverse(T a) { return a; }
  static T check(T v) {
    if (v > threshold || v < -threshold) fail(ErrorCode::Overflow, "integer coefficient exceeds threshold");
    return v;
  }
  static T add(T a, T b) {
    T r;
    if (__builtin_add_overflow(a, b, &r)) fail(ErrorCode::Overflow, "integer addition overflow");
    return check(r);
  }
  static T sub(T a, T b) {
    T r;
    if (__builtin_sub_overflow(a, b, &r)) fail(ErrorCode::Overflow, "integer subtraction overflow");
    return check(r);
  }
  static T mul(T a, T b) {
    T r;
    if (__builtin_mul_overflow(a, b, &r)) fail(ErrorCode::Overflow, "integer multiplication overflow");
    return check(r);
  }
  static T neg(T a) { return sub(0, a); }
  /// Pivot size used to pick minimal pivots.
  static std::uint64_t norm(T a) { return a < 0 ? static_cast<std::uint64_t>(-(a + 1)) + 1 : static_cast<std::uint64_t>(a); }
  /// a = q b + r with |r| <= |b| / 2.
  static std::pair<T, T> divmod(T a, T b) {
    T q = a / b;
    T r = a - q * b;
    if (r != 0) {
      const bool same = (r < 0) == (b < 0);
      if (norm(r) * 2 > norm(b)) {
        q += same ? 1 : -1;
        r = a - mul(q, b);
      }
    }
    return {q, r};
  }
  static bool is_negative(T a) { return a < 0; }
};

template <>
struct Ring<BigInt> {
  using T = BigInt;
  static T zero() { return 0; }
  static T one() { return 1; }
  static bool is_zero(const T& a) { return a.is_zero(); }
  static bool is_unit(const T& a) { return a == 1 || a == -1; }
  static T unit_inverse(const T& a) { return a; }
  static T add(const T& a, const T& b) { return a + b; }
  static T sub(const T& a, const T& b) { return a - b; }
  static T mul(const T& a, const T& b) { return a * b; }
  static T neg(const T& a) { return -a; }
  static T norm(const T& a) { return boost::multiprecision::abs(a); }
  static std::pair<T, T> divmod(const T& a, const T& b) {
    T q = a / b;
    T r = a - q * b;
    if (!r.is_zero() && norm(r) * 2 > norm(b)) {
      q += ((r < 0) == (b < 0)) ? 1 : -1;
      r = a - q * b;
    }
    return {q, r};
  }
  static bool is_negative(const T& a) { return a < 0; }
};

/// Element of F_p, p = 2^61 - 1.
struct ModP {
  static constexpr std::uint64_t p = (std::uint64_t{1} << 61) - 1;
  std::uint64_t v = 0;

  ModP() = default;
  explicit ModP(std::int64_t x) {
    const auto m = static_cast<std::int64_t>(p);
    std::int64_t r = x % m;
    if (r < 0) r += m;
    v = static_cast<std::uint64_t>(r);
  }
  bool operator==(const ModP&) const = default;
};

template <>
struct Ring<ModP> {
  using T = ModP;
  static constexpr std::uint64_t p = ModP::p;
  static T make(std::uint64_t x) {
    T t;
    t.v = x;
    return t;
  }
  static T zero() { return make(0); }
  static T one() { return make(1); }
  static bool is_zero(T a) { return a.v == 0; }
  static bool is_unit(T a) { return a.v != 0; }
  static T add(T a, T b) {
    std::uint64_t r = a.v + b.v;
    if (r >= p) r -= p;
    return make(r);
  }
  static T sub(T a, T b) { return make(a.v >= b.v ? a.v - b.v : a.v + p - b.v); }
  static T mul(T a, T b) {
    const unsigned __int128 prod = static_cast<unsigned __int128>(a.v) * b.v;
    std::uint64_t lo = static_cast<std::uint64_t>(prod & p);
    std::uint64_t hi = static_cast<std::uint64_t>(prod >> 61);
    std::uint64_t r = lo + hi;
    if (r >= p) r -= p;
    return make(r);
  }
  static T neg(T a) { return make(a.v == 0 ? 0 : p - a.v); }
  static T power(T a, std::uint64_t e) {
    T r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  static T unit_inverse(T a) { return power(a, p - 2); }
  static int norm(T a) { return a.v == 0 ? 0 : 1; }
  static std::pair<T, T> divmod(T a, T b) { return {mul(a, unit_inverse(b)), zero()}; }
  static bool is_negative(T) { return false; }
};

template <class T>
T from_int64(std::int64_t x) {
  if constexpr (std::is_same_v<T, ModP>) return ModP(x);
  else return T(x);
}

}  // namespace emtopo
