#pragma once

#include <cmath>
#include <stdexcept>

#include "cmclab/quaternion.hpp"

namespace cmclab {

// Geometry of S^3 and S^2: Hopf projections and the four Killing-field
// families.  Conventions: for u a unit imaginary quaternion,
//   translation   tau_u(p) = u                       (field on R^3)
//   rotation      rho_u(p) = p u - u p = -2 u x p    (field on R^3)
//   left transl.  l_u(p)   = u p                     (field on S^3)
//   right transl. r_u(p)   = p u                     (field on S^3)
// rho carries a factor 2 because the finite motion p -> e^{-tu} p e^{tu}
// rotates by angle 2t about u; consumers comparing against matrix
// rotation conventions must divide by 2.

inline void require_unit(const ImVector& u, const char* what) {
    if (std::abs(u.norm() - 1.0) > 1e-9)
        throw std::invalid_argument(std::string(what) + ": axis must be a unit vector");
}

// u-Hopf projection Pi_u(p) = p u p^-1, mapping S^3 to S^2.  Fibers are
// the great circles t -> e^{tu} p.
inline ImVector hopf_project(const UnitQuaternion& p, const ImVector& u) {
    require_unit(u, "hopf_project");
    return p.rotate(u);
}

inline ImVector hopf_project_k(const UnitQuaternion& p) { return p.rotate(im_k()); }

enum class KillingKind { Translation, Rotation, LeftTranslation, RightTranslation };

struct KillingField {
    KillingKind kind;
    ImVector axis;

    static KillingField translation(const ImVector& u) { return {KillingKind::Translation, u}; }
    static KillingField rotation(const ImVector& u) { return {KillingKind::Rotation, u}; }
    static KillingField left(const ImVector& u) { return {KillingKind::LeftTranslation, u}; }
    static KillingField right(const ImVector& u) { return {KillingKind::RightTranslation, u}; }
};

// Killing fields on R^3, evaluated at a point of R^3.
inline ImVector killing_eval(const KillingField& f, const ImVector& p) {
    switch (f.kind) {
        case KillingKind::Translation: return f.axis;
        case KillingKind::Rotation: return -2.0 * f.axis.cross(p);
        default:
            throw std::invalid_argument(
                "killing_eval: left/right translations act on S^3, not R^3");
    }
}

// Killing fields on S^3, evaluated at a point of S^3.  The value is a
// quaternion tangent to S^3 at p.
inline Quaternion killing_eval(const KillingField& f, const UnitQuaternion& p) {
    switch (f.kind) {
        case KillingKind::LeftTranslation: return f.axis.quat() * p.q;
        case KillingKind::RightTranslation: return p.q * f.axis.quat();
        default:
            throw std::invalid_argument(
                "killing_eval: translations/rotations act on R^3, not S^3");
    }
}

// Derivative of the k-Hopf projection along a left-translation field:
// d_p Pi_k(u p) = 2 u x Pi_k(p), i.e. l_u is Pi_k-related to -rho_u.
inline ImVector d_hopf_k(const UnitQuaternion& p, const KillingField& f) {
    if (f.kind != KillingKind::LeftTranslation)
        throw std::invalid_argument("d_hopf_k: field must be a left translation");
    return 2.0 * f.axis.cross(hopf_project_k(p));
}

// Spherical distance on S^2, with the inner product clamped so antipodal
// and coincident inputs do not produce NaN.
inline double geodesic_distance_s2(const ImVector& v, const ImVector& w) {
    require_unit(v, "geodesic_distance_s2");
    require_unit(w, "geodesic_distance_s2");
    double c = v.dot(w);
    if (c > 1.0) c = 1.0;
    if (c < -1.0) c = -1.0;
    return std::acos(c);
}

}  // namespace cmclab
