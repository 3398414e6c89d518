#ifndef DISKPACK_VEC3_HPP
#define DISKPACK_VEC3_HPP

#include <array>
#include <cmath>
#include <cstddef>

namespace diskpack {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr double operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }
  constexpr double& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }

  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Vec3& operator*=(double s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }

  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
constexpr Vec3 operator/(const Vec3& a, double s) { return {a.x / s, a.y / s, a.z / s}; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
constexpr double squared_norm(const Vec3& a) { return dot(a, a); }
inline double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }

inline bool is_finite(const Vec3& a) {
  return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

// Any unit vector orthogonal to `u` (assumed unit).
inline Vec3 any_orthogonal(const Vec3& u) {
  const Vec3 helper = std::abs(u.x) < 0.6 ? Vec3{1, 0, 0} : (std::abs(u.y) < 0.6 ? Vec3{0, 1, 0} : Vec3{0, 0, 1});
  const Vec3 w = cross(u, helper);
  return w / norm(w);
}

/// Unit-length direction. Construction normalizes and rejects zero or
/// non-finite input; the stored components always satisfy |‖v‖ − 1| ≤ 1e-12.
class UnitVec3 {
 public:
  UnitVec3() = default;
  explicit UnitVec3(const Vec3& v);
  UnitVec3(double x, double y, double z) : UnitVec3(Vec3{x, y, z}) {}

  static UnitVec3 axis(int i);

  const Vec3& vec() const { return v_; }
  double x() const { return v_.x; }
  double y() const { return v_.y; }
  double z() const { return v_.z; }
  double operator[](std::size_t i) const { return v_[i]; }
  operator const Vec3&() const { return v_; }  // NOLINT(google-explicit-constructor)

  friend bool operator==(const UnitVec3&, const UnitVec3&) = default;

 private:
  Vec3 v_{0, 0, 1};
};

}  // namespace diskpack

#endif  // DISKPACK_VEC3_HPP
