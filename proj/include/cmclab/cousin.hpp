#pragma once

#include <cstddef>
#include <vector>

#include "cmclab/patch.hpp"
#include "cmclab/quaternion.hpp"
#include "cmclab/s3.hpp"

namespace cmclab {

// Conjugate cousin of the upper half M+ of a surface of revolution: the
// minimal surface f~ in S^3 solving the first-order system
//     d f~ = f~ (df o J),
// integrated as a path-ordered product over the grid.  f~ is determined
// up to a left translation; the anchor node is gauged to 1.  Boundary
// curves of M+ lie in the i j-plane with constant conormal k, so their
// cousins run along k-Hopf circles and Hopf-project to single points.

struct CousinPatch {
    std::size_t nt = 0, ntheta = 0;
    std::size_t anchor_i = 0, anchor_j = 0;
    std::vector<UnitQuaternion> f;  // node values, row-major like the patch
    std::vector<Quaternion> nu;     // cousin normal f~ nu
    double max_holonomy = 0;        // worst plaquette loop residual

    std::size_t index(std::size_t i, std::size_t j) const { return i * ntheta + j; }
};

// Path-ordered integration of the cousin equation (classical RK4 along
// edges, two substeps, renormalized).  Throws numerical_error when any
// plaquette holonomy exceeds holonomy_tol.
CousinPatch integrate_cousin(const UnduloidPatch& patch, double holonomy_tol = 1e-5,
                             int substeps = 2);

// Left-translate the whole cousin (gauge change f~ -> q f~).
CousinPatch gauge_transform(const CousinPatch& cousin, const UnitQuaternion& q);

// Best unit quaternion q minimizing |q f~ - g| over nodes, for comparing
// against a reference immersion g into S^3.
UnitQuaternion fit_gauge(const CousinPatch& cousin, const std::vector<UnitQuaternion>& g);

struct CousinReport {
    double isometry_defect = 0;      // relative defect of |df~| vs the conformal factor
    double max_holonomy = 0;
    double boundary_spread[2] = {0, 0};  // Hopf-projection spread of each boundary curve
    ImVector hopf_image[2];              // mean Hopf projection of each curve
    double hopf_distance = 0;            // spherical distance of the two images
    double normal_defect = 0;        // orthogonality of f~ nu to the numeric tangents
    double vertical_identity = 0;    // max |<nu~, f~ k> - <nu, k>|
    double transversality = 0;       // max interior <nu, k> (should be < 0)
    double mean_curvature_s3 = 0;    // cotangent estimate of H~ (target 0)
};

CousinReport verify_cousin(const CousinPatch& cousin, const UnduloidPatch& patch);

// H-valued field on the cousin (tangent to S^3 along f~).
using QuatField = std::vector<Quaternion>;

// Transplant W-bar = f~^{-1} W of a field on M~+ back to M+.  W must be
// tangent to S^3 along f~ (checked); the transplant is R^3-valued.
VecField transplant(const QuatField& W, const CousinPatch& cousin, double tangency_tol = 1e-8);

// Residual of the transplant derivative identity
//     f~^{-1} dW = d W-bar + (df o J) W-bar
// evaluated with fourth-order interior differences on both sides.
double transplant_identity_residual(const QuatField& W, const UnduloidPatch& patch,
                                    const CousinPatch& cousin);

// Residual of the 1-form identity 2 df x l-bar_u - d l-bar_u o J = 0,
// where l-bar_u = Pi_u(f~^{-1}) is the transplanted left translation.
double check_eq6(const CousinPatch& cousin, const UnduloidPatch& patch, const ImVector& u);

struct CousinFieldResult {
    QuatField closed_form;  // tau_u -> 0, rho_u -> r_u
    QuatField integrated;   // solution of the linearized cousin equation
    double discrepancy = 0; // max difference after removing the best l_w
    ImVector fitted_w;      // axis of the removed left translation
};

// Cousin Jacobi field of a Killing field V (J-dot vanishes for Killing
// data): closed form and independent numerical integration of
//     d V~ = V~ (df o J) + f~ (dV o J).
CousinFieldResult cousin_field(const KillingField& V, const UnduloidPatch& patch,
                               const CousinPatch& cousin, double fail_tol = 1e-4);

// Same integration with a caller-chosen anchor value (the general
// solution differs by a left translation).
QuatField integrate_cousin_field(const KillingField& V, const UnduloidPatch& patch,
                                 const CousinPatch& cousin, const Quaternion& anchor_value);

enum class BoundaryVerdict { Even, Odd, AlmostEven, AlmostOdd, None };

const char* verdict_name(BoundaryVerdict v);

struct CurveClassification {
    BoundaryVerdict verdict = BoundaryVerdict::None;
    ImVector fitted;              // v_i (vertical) or w_i (perp to the Hopf image)
    ImVector hopf_image;          // v_i of the cousin boundary curve
    double even_residual = 0;
    double almost_even_residual = 0;
    double odd_residual = 0;
    double almost_odd_residual = 0;
    double omega_residual = 0;    // Hopf-circle form conditions (fields on M~+)
};

struct BoundaryClassification {
    CurveClassification curve[2];  // theta = 0 and theta = pi
    double field_scale = 0;
};

// Boundary behavior of a field on M+ against the even/odd ladder; the
// even defect is fitted by a vertical translation tau_v per curve.
BoundaryClassification classify_boundary_mplus(const VecField& V, const UnduloidPatch& patch,
                                               const CousinPatch& cousin,
                                               double threshold = 1e-4);

// Boundary behavior of a field on M~+; the odd defect is fitted by a
// left translation l_w with w perpendicular to the curve's Hopf image.
BoundaryClassification classify_boundary_mtilde(const QuatField& W, const UnduloidPatch& patch,
                                                const CousinPatch& cousin,
                                                double threshold = 1e-4);

// Even/odd splitting V = V+ + V- across the mirror plane on a full
// patch: V+-(p) = (V(p) +- sigma V(sigma p)) / 2.
std::pair<VecField, VecField> even_odd_decompose(const VecField& V, const UnduloidPatch& patch);

}  // namespace cmclab
