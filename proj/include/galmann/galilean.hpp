#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

namespace galmann {

// A vector of the Galilean 3-space. The x component is the distinguished
// coordinate; y and z span the Euclidean fibre plane.
struct GalVec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    friend constexpr GalVec3 operator+(const GalVec3& a, const GalVec3& b) {
        return {a.x + b.x, a.y + b.y, a.z + b.z};
    }
    friend constexpr GalVec3 operator-(const GalVec3& a, const GalVec3& b) {
        return {a.x - b.x, a.y - b.y, a.z - b.z};
    }
    friend constexpr GalVec3 operator*(double c, const GalVec3& v) { return {c * v.x, c * v.y, c * v.z}; }
    friend constexpr bool operator==(const GalVec3&, const GalVec3&) = default;
};

enum class VecClass { non_isotropic, isotropic, zero };

// Two-branch scalar product: x1*x2 when either x component is nonzero,
// else the Euclidean product of the fibre parts. The branch test is exact;
// classification is structural, not a numerical estimate.
constexpr double galilean_dot(const GalVec3& u, const GalVec3& v) {
    if (u.x != 0.0 || v.x != 0.0) return u.x * v.x;
    return u.y * v.y + u.z * v.z;
}

// |x| when x != 0, else the Euclidean length of the fibre part. The result
// is nonnegative by construction.
inline double galilean_norm(const GalVec3& u) {
    if (u.x != 0.0) return std::abs(u.x);
    return std::hypot(u.y, u.z);
}

constexpr VecClass classify(const GalVec3& u) {
    if (u.x != 0.0) return VecClass::non_isotropic;
    if (u.y == 0.0 && u.z == 0.0) return VecClass::zero;
    return VecClass::isotropic;
}

// Euclidean metric of the fibre plane; the x components are ignored.
inline double fibre_norm(const GalVec3& u) { return std::hypot(u.y, u.z); }
constexpr double fibre_dot(const GalVec3& u, const GalVec3& v) { return u.y * v.y + u.z * v.z; }

// An element of the 8-parameter similarity group:
//   x' = a11 + a12*x
//   y' = a21 + a22*x + a23*y*cos(phi) + a23*z*sin(phi)
//   z' = a31 + a32*x - a23*y*sin(phi) + a23*z*cos(phi)
// The isometries form the subgroup with a12 = a23 = 1.
struct Similarity {
    double a11 = 0.0, a21 = 0.0, a31 = 0.0;  // translations
    double a12 = 1.0, a23 = 1.0;             // scale coefficients
    double a22 = 0.0, a32 = 0.0;             // shear coefficients
    double phi = 0.0;                        // fibre rotation angle (radians)

    bool is_isometry() const { return a12 == 1.0 && a23 == 1.0; }
    static constexpr Similarity identity() { return {}; }
};

GalVec3 apply_similarity(const Similarity& m, const GalVec3& p);

// Group law: apply_similarity(compose(outer, inner), p) equals
// apply_similarity(outer, apply_similarity(inner, p)).
Similarity compose(const Similarity& outer, const Similarity& inner);
Similarity inverse(const Similarity& m);

// Deterministic isometry from a seed: a12 = a23 = 1, translations and
// shears uniform in [-2, 2], phi uniform in [0, 2*pi). The generator is
// fully specified, so streams are identical across platforms.
Similarity random_isometry(std::uint64_t seed);

// Flat JSON object {"a11":...,"a21":...,"a31":...,"a12":...,"a22":...,
// "a23":...,"a32":...,"phi":...}, keys in that order.
std::string to_json(const Similarity& m);
Similarity similarity_from_json(std::string_view text);

}  // namespace galmann
