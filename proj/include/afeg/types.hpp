#pragma once

#include <array>

namespace afeg {

using Vec3 = std::array<double, 3>;

enum Var : int { P = 0, U = 1, V = 2 };

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }

}  // namespace afeg
