#pragma once

#include <Eigen/Dense>
#include <complex>

namespace maxte {

using Complex = std::complex<double>;
using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using CVec2 = Eigen::Vector2cd;
using CVec3 = Eigen::Vector3cd;

inline constexpr Complex I{0.0, 1.0};

// Bilinear products over C^n. Eigen's dot() conjugates its first argument,
// which is wrong for the wave-vector algebra here: the dispersion relation
// reads zeta . zeta = k^2 without conjugation.
inline Complex cdot(const CVec2& a, const CVec2& b) {
  return a(0) * b(0) + a(1) * b(1);
}

inline Complex cdot(const CVec3& a, const CVec3& b) {
  return a(0) * b(0) + a(1) * b(1) + a(2) * b(2);
}

// Componentwise (bilinear) cross product over C^3.
inline CVec3 ccross(const CVec3& a, const CVec3& b) {
  return CVec3(a(1) * b(2) - a(2) * b(1),
               a(2) * b(0) - a(0) * b(2),
               a(0) * b(1) - a(1) * b(0));
}

inline CVec2 to_complex(const Vec2& v) { return v.cast<Complex>(); }
inline CVec3 to_complex(const Vec3& v) { return v.cast<Complex>(); }

}  // namespace maxte
