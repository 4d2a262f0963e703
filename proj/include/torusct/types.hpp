#pragma once

#include <cmath>
#include <compare>
#include <cstdint>

namespace torusct {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Nonzero integer direction vector; need not be primitive.
struct IntDirection {
  int v1 = 0;
  int v2 = 0;
};

// Canonical representative of a projective rational direction:
// (1,0), (0,1), or gcd-reduced (a,b) with a >= 1, b != 0.
struct ReducedDirection {
  int a = 0;
  int b = 0;
  friend auto operator<=>(const ReducedDirection&, const ReducedDirection&) = default;
};

inline IntDirection as_int(ReducedDirection d) { return {d.a, d.b}; }

struct FourierIndex {
  int k1 = 0;
  int k2 = 0;
  friend auto operator<=>(const FourierIndex&, const FourierIndex&) = default;
};

// One straight chord of a wrapped geodesic inside the closed unit square.
struct Segment {
  Point start;
  Point end;
  double length = 0.0;
};

enum class Axis : std::uint8_t { X, Y };
enum class Rule : std::uint8_t { Left, Mid };

inline double norm(IntDirection v) { return std::hypot(double(v.v1), double(v.v2)); }
inline double norm(ReducedDirection d) { return std::hypot(double(d.a), double(d.b)); }

inline long long norm2(FourierIndex k) {
  return static_cast<long long>(k.k1) * k.k1 + static_cast<long long>(k.k2) * k.k2;
}

// <k> = sqrt(1 + |k|^2), the weight behind all Sobolev norms here.
inline double bracket(FourierIndex k) { return std::sqrt(1.0 + double(norm2(k))); }

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace torusct
