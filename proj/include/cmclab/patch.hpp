#pragma once

#include <cstddef>
#include <vector>

#include "cmclab/delaunay.hpp"
#include "cmclab/quaternion.hpp"

namespace cmclab {

// Conformal-grid immersion of a surface of revolution,
//     f(t, theta) = x(t) i + r(t) e^{theta i} j,
// with inward normal nu, conformal factor r and |A|^2 at every node.
// The 90-degree rotation J in the tangent plane is fixed by the
// convention u x Ju = nu, which in these coordinates reads
// J d/dt = d/dtheta and J d/dtheta = -d/dt.
//
// The t grid is uniform.  Profile data is kept on a four-times-finer
// "station" grid so that edge integrals (cousin equation, cousin Jacobi
// fields) can be evaluated at Runge-Kutta substations without
// interpolation.  An applied rigid motion (rot, shift) is stored so that
// translated/rotated copies of a patch expose consistent derivatives.

enum class SurfaceKind { Unduloid, Cylinder, Sphere };

struct PatchNode {
    ImVector f;      // position
    ImVector nu;     // inward unit normal
    double x = 0;    // axis coordinate of the generating curve (untransformed)
    double r = 0;    // conformal factor = distance from axis
    double psi = 0;  // tangent angle of the generating curve
    double normA2 = 0;  // |A|^2 = (2 - cos(psi)/r)^2 + (cos(psi)/r)^2
};

struct UnduloidPatch {
    SurfaceKind kind = SurfaceKind::Unduloid;
    double necksize = 0;
    bool half = false;         // theta in [0, pi] (upper half M+) vs [0, 2 pi)
    bool theta_wraps = false;  // full surface of revolution
    std::vector<double> t;     // nt node coordinates, uniform
    std::vector<double> theta; // ntheta node coordinates
    double conformal_period = 0;  // 0 when no period exists
    bool has_period = false;

    std::vector<PatchNode> nodes;       // row-major: index(i, j) = i * ntheta + j
    std::vector<ProfilePoint> station;  // profile on the refined t grid, spacing dt/4
    UnitQuaternion rot;                 // applied rotation (conjugation on vectors)
    ImVector shift;                     // applied translation

    std::size_t nt() const { return t.size(); }
    std::size_t ntheta() const { return theta.size(); }
    std::size_t index(std::size_t i, std::size_t j) const { return i * ntheta() + j; }
    const PatchNode& node(std::size_t i, std::size_t j) const { return nodes[index(i, j)]; }
    double dt() const { return t[1] - t[0]; }
    double dtheta() const { return theta[1] - theta[0]; }

    // Station q on the refined t grid covers t[0] + q * dt/4; node i sits
    // at station 4 i.
    std::size_t station_of_node(std::size_t i) const { return 4 * i; }

    ImVector position(std::size_t q, double th) const;   // f at station q
    ImVector df_dt(std::size_t q, double th) const;      // d f / d t at station q
    ImVector df_dtheta(std::size_t q, double th) const;  // d f / d theta at station q
};

// Build the immersion over t in [-t_range, t_range] (absolute conformal
// units).  half = true restricts theta to [0, pi], giving the upper half
// M+ whose boundary curves lie in the i j-plane.
UnduloidPatch immerse(const DelaunayProfile& profile, bool half, double t_range,
                      std::size_t nt, std::size_t ntheta, double t_phase = 0.0);

// Unit sphere centered at the origin (the c -> 0 Delaunay limit),
// parametrized conformally by x = tanh t, r = sech t.  With half = true
// this is the upper hemisphere, whose conjugate cousin is the surface
// itself.
UnduloidPatch sphere_patch(bool half, double t_range, std::size_t nt, std::size_t ntheta);

// Rigid motion p -> rot p rot^-1 + shift applied to positions, normals
// and stored frame data.
UnduloidPatch apply_isometry(const UnduloidPatch& patch, const UnitQuaternion& rot,
                             const ImVector& shift);

// R^3-valued field sampled on patch nodes.
using VecField = std::vector<ImVector>;

VecField killing_on_patch(const UnduloidPatch& patch, const struct KillingField& field);
std::vector<double> normal_part(const UnduloidPatch& patch, const VecField& field);

struct NecksizeChangeField {
    VecField eta;                 // node-wise d f / d n
    std::vector<double> normal;   // <eta, nu>
    bool one_sided = false;       // cylinder: phase degenerate, one-sided difference
    double step = 0;
};

// Jacobi field from differentiating the unduloid family by necksize at
// fixed (t, theta), via central differences of immersions at n -/+ h.
// On the cylinder the phase of the inserted necks is a free parameter;
// it is exposed as t_phase and the difference is one-sided.
NecksizeChangeField necksize_change_field(const NecksizeParams& params,
                                          const UnduloidPatch& patch, double h,
                                          double tol = 1e-10, double t_phase = 0.0);

}  // namespace cmclab
