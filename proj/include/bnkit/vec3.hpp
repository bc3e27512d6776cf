#ifndef BNKIT_VEC3_HPP
#define BNKIT_VEC3_HPP

#include <array>
#include <cmath>
#include <complex>
#include <ostream>

namespace bnkit {

using Complex = std::complex<double>;

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

    constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    constexpr Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm2() const { return dot(*this); }
    double norm() const { return std::sqrt(norm2()); }
    Vec3 normalized() const { return *this / norm(); }

    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

inline constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline std::ostream& operator<<(std::ostream& os, const Vec3& v) {
    return os << "(" << v.x << ", " << v.y << ", " << v.z << ")";
}

/// Orthonormal right-handed frame with a prescribed third axis.
struct Frame {
    Vec3 e1, e2, e3;

    /// Deterministic frame completion: seed vector is z-hat unless the axis
    /// is too close to it, then x-hat (same rule as the polarization gauge).
    static Frame around(const Vec3& axis) {
        Frame f;
        f.e3 = axis.normalized();
        const Vec3 seed = (std::abs(f.e3.z) > 0.9) ? Vec3{1, 0, 0} : Vec3{0, 0, 1};
        f.e1 = seed.cross(f.e3).normalized();
        f.e2 = f.e3.cross(f.e1);
        return f;
    }

    /// Unit vector with polar cosine c and azimuth phi relative to e3.
    Vec3 direction(double c, double phi) const {
        const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
        return e1 * (s * std::cos(phi)) + e2 * (s * std::sin(phi)) + e3 * c;
    }
};

}  // namespace bnkit

#endif
