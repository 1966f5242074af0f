// vec3.hpp
// Small fixed-size 3-vectors (real and complex) used throughout framehop.

#pragma once

#include <cmath>
#include <complex>

namespace framehop {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

constexpr Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
constexpr Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
constexpr Vec3 operator*(const Vec3& a, double s) { return s * a; }
constexpr Vec3 operator/(const Vec3& a, double s) { return {a.x / s, a.y / s, a.z / s}; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline Vec3 normalized(const Vec3& a) { return a / norm(a); }

/// Complex-amplitude 3-vector (phasor of a vector field component set).
struct CVec3 {
    std::complex<double> x{0.0, 0.0};
    std::complex<double> y{0.0, 0.0};
    std::complex<double> z{0.0, 0.0};
};

inline CVec3 operator+(const CVec3& a, const CVec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline CVec3 operator-(const CVec3& a, const CVec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline CVec3 operator*(const std::complex<double>& s, const CVec3& a) { return {s * a.x, s * a.y, s * a.z}; }
inline CVec3 operator*(double s, const CVec3& a) { return {s * a.x, s * a.y, s * a.z}; }
inline CVec3 operator*(const std::complex<double>& s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }

/// Unconjugated projection of a phasor vector onto a real axis.
inline std::complex<double> dot(const CVec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

/// Unconjugated bilinear product a.b (the field-invariant form, not a Hermitian norm).
inline std::complex<double> dot_bilinear(const CVec3& a, const CVec3& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

/// Hermitian squared magnitude sum(|a_i|^2).
inline double norm_squared(const CVec3& a) { return std::norm(a.x) + std::norm(a.y) + std::norm(a.z); }

inline CVec3 cross(const Vec3& a, const CVec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline std::complex<double> dot(const Vec3& a, const CVec3& b) { return b.x * a.x + b.y * a.y + b.z * a.z; }

}  // namespace framehop
