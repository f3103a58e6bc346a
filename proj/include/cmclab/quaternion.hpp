#pragma once

#include <cmath>
#include <stdexcept>

namespace cmclab {

// Quaternion algebra H = R[1,i,j,k] with the Hamilton product.
// S^3 is the set of unit quaternions; R^3 = T_1 S^3 is identified with
// the imaginary quaternions.  All geometry downstream (Hopf projection,
// Killing fields, cousin integration) is phrased in these terms.

struct Quaternion;
struct ImVector;

struct Quaternion {
    double w = 0.0, x = 0.0, y = 0.0, z = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_, double y_, double z_)
        : w(w_), x(x_), y(y_), z(z_) {}

    static constexpr Quaternion one() { return {1, 0, 0, 0}; }

    constexpr Quaternion operator+(const Quaternion& q) const {
        return {w + q.w, x + q.x, y + q.y, z + q.z};
    }
    constexpr Quaternion operator-(const Quaternion& q) const {
        return {w - q.w, x - q.x, y - q.y, z - q.z};
    }
    constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }
    constexpr Quaternion operator*(double s) const { return {w * s, x * s, y * s, z * s}; }
    constexpr Quaternion operator/(double s) const { return {w / s, x / s, y / s, z / s}; }

    // Hamilton product: i*j = k, j*k = i, k*i = j, i^2 = j^2 = k^2 = -1.
    constexpr Quaternion operator*(const Quaternion& q) const {
        return {w * q.w - x * q.x - y * q.y - z * q.z,
                w * q.x + x * q.w + y * q.z - z * q.y,
                w * q.y - x * q.z + y * q.w + z * q.x,
                w * q.z + x * q.y - y * q.x + z * q.w};
    }

    constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
    constexpr double norm2() const { return w * w + x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm2()); }

    Quaternion inverse() const { return conj() / norm2(); }
    Quaternion normalized() const { return *this / norm(); }

    constexpr double dot(const Quaternion& q) const {
        return w * q.w + x * q.x + y * q.y + z * q.z;
    }

    constexpr double re() const { return w; }
    constexpr ImVector im() const;
};

inline constexpr Quaternion operator*(double s, const Quaternion& q) { return q * s; }

// Pure imaginary quaternion, identified with a vector in R^3 = T_1 S^3.
struct ImVector {
    double x = 0.0, y = 0.0, z = 0.0;

    constexpr ImVector() = default;
    constexpr ImVector(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr ImVector operator+(const ImVector& v) const { return {x + v.x, y + v.y, z + v.z}; }
    constexpr ImVector operator-(const ImVector& v) const { return {x - v.x, y - v.y, z - v.z}; }
    constexpr ImVector operator-() const { return {-x, -y, -z}; }
    constexpr ImVector operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr ImVector operator/(double s) const { return {x / s, y / s, z / s}; }

    constexpr double dot(const ImVector& v) const { return x * v.x + y * v.y + z * v.z; }
    constexpr ImVector cross(const ImVector& v) const {
        return {y * v.z - z * v.y, z * v.x - x * v.z, x * v.y - y * v.x};
    }
    constexpr double norm2() const { return x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm2()); }
    ImVector normalized() const { return *this / norm(); }

    constexpr Quaternion quat() const { return {0, x, y, z}; }
    constexpr operator Quaternion() const { return quat(); }
};

inline constexpr ImVector operator*(double s, const ImVector& v) { return v * s; }

constexpr ImVector Quaternion::im() const { return {x, y, z}; }

inline constexpr ImVector im_i() { return {1, 0, 0}; }
inline constexpr ImVector im_j() { return {0, 1, 0}; }
inline constexpr ImVector im_k() { return {0, 0, 1}; }

// exp(v) for imaginary v: cos|v| + sin|v| v/|v|.  Lands on S^3.
inline Quaternion exp_im(const ImVector& v) {
    const double a = v.norm();
    if (a < 1e-300) return Quaternion::one();
    const double s = std::sin(a) / a;
    return {std::cos(a), s * v.x, s * v.y, s * v.z};
}

// Principal log of a unit quaternion (imaginary part, |log| <= pi).
inline ImVector log_unit(const Quaternion& q) {
    const ImVector v = q.im();
    const double s = v.norm();
    if (s < 1e-300) return (q.w >= 0) ? ImVector{0, 0, 0}
                                      : ImVector{3.14159265358979323846, 0, 0};
    const double a = std::atan2(s, q.w);
    return v * (a / s);
}

// Point of S^3, kept unit-length.  Every constructor and product
// renormalizes, so drift per operation stays below 1e-12.
struct UnitQuaternion {
    Quaternion q = Quaternion::one();

    UnitQuaternion() = default;
    explicit UnitQuaternion(const Quaternion& raw) : q(raw.normalized()) {}

    static UnitQuaternion one() { return {}; }
    static UnitQuaternion exp(const ImVector& v) {
        UnitQuaternion u;
        u.q = exp_im(v);  // exp_im is unit by construction
        return u;
    }

    UnitQuaternion operator*(const UnitQuaternion& r) const { return UnitQuaternion(q * r.q); }
    UnitQuaternion inverse() const {
        UnitQuaternion u;
        u.q = q.conj();
        return u;
    }

    // Conjugation p v p^-1, an isometry of R^3 (rotation by twice the
    // half-angle of p).
    ImVector rotate(const ImVector& v) const { return (q * v.quat() * q.conj()).im(); }

    double dot(const UnitQuaternion& r) const { return q.dot(r.q); }
};

}  // namespace cmclab
