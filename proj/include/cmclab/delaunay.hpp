#pragma once

#include <cstddef>
#include <vector>

#include "cmclab/errors.hpp"

namespace cmclab {

// Delaunay unduloid generating curves, H = 1, axis along i.
//
// The profile (x(s), r(s)) is integrated in arclength s with tangent
// angle psi:
//     x' = cos psi,  r' = sin psi,  psi' = cos(psi)/r - 2,
// which keeps r cos(psi) - r^2 = c constant.  The neck radius a and
// bulge radius b are the roots of r - r^2 = c, so a + b = 1.  Necksize
// n = 2 pi a ranges over (0, pi]; n = pi is the cylinder of radius 1/2.

struct NecksizeParams {
    double n;  // necksize, in (0, pi]
    double a;  // neck radius n / 2 pi
    double b;  // bulge radius 1 - a
    double c;  // Delaunay constant a - a^2

    explicit NecksizeParams(double necksize);
    bool is_cylinder() const;
};

struct ProfileSample {
    double s = 0;         // arclength from the neck
    double t = 0;         // conformal coordinate (dt = ds / r); 0 until reparam
    double x = 0;         // position along the axis
    double r = 0;         // distance from the axis
    double psi = 0;       // tangent angle
    double residual = 0;  // |r cos psi - r^2 - c|
};

struct DelaunayProfile {
    NecksizeParams params;
    double tol = 0;
    std::vector<ProfileSample> samples;  // uniform in s over one period (window for n = pi)
    bool has_period = false;             // false on the cylinder
    double period_s = 0;                 // neck-to-neck arclength period
    double period_t = 0;                 // conformal period, filled by conformal_reparam
    bool conformal = false;              // t column filled
};

// Integrate one full period of the profile (neck at s = 0), sampling
// samples_per_period + 1 points.  The cylinder has no period; it is
// sampled over a fixed window and flagged.  Throws numerical_error if
// the conserved quantity drifts by more than 10 * tol.
DelaunayProfile solve_profile(const NecksizeParams& params, double tol,
                              std::size_t samples_per_period);

// Fill the conformal coordinate t (dt = ds / r) along the samples and
// record the conformal period T_t.
DelaunayProfile conformal_reparam(const DelaunayProfile& profile);

// Profile values at arbitrary conformal coordinate, used to build grids.
struct ProfilePoint {
    double x = 0, r = 0, psi = 0;
};

// Evaluate the profile at the given conformal coordinates (any order is
// accepted; evaluation mirrors through the even symmetry about the neck).
std::vector<ProfilePoint> eval_profile_t(const NecksizeParams& params,
                                         const std::vector<double>& t_stations, double tol);

// Conformal period computed directly in the t parametrization.
double conformal_period(const NecksizeParams& params, double tol);

// Absolute half-width of a symmetric t window spanning `periods`
// conformal periods in total.  The cylinder has no period and gets the
// theta-period 2 pi as its window unit.
double half_width_for_periods(const DelaunayProfile& profile, double periods);

}  // namespace cmclab
