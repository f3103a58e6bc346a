#pragma once

#include <vector>

#include "cmclab/patch.hpp"

namespace cmclab {

// Independent discrete-geometry estimates used to cross-check the
// analytic constructions.  All routines work on the structured grid,
// triangulating each quad along one diagonal.

struct MeanCurvatureStats {
    double max_abs_error = 0;  // max |H - target| over interior vertices
    double mean = 0;
    std::size_t count = 0;
};

// Cotangent-Laplacian mean curvature of the patch in R^3, compared
// against the target value (1 for all CMC surfaces here).  Uses
// barycentric vertex areas; boundary vertices are skipped.
MeanCurvatureStats discrete_mean_curvature(const UnduloidPatch& patch, double target);

// Same estimator for a mesh on S^3 c R^4 (positions given per node).
// For a surface in the unit three-sphere, Delta f = 2 H nu - 2 f, so the
// normal component of the cotangent Laplacian measures 2H.
MeanCurvatureStats discrete_mean_curvature_s3(const UnduloidPatch& patch,
                                              const std::vector<UnitQuaternion>& pos,
                                              const std::vector<Quaternion>& normal);

// Max deviation from conformality: | |f_t| - |f_th| | / r and
// |<f_t, f_th>| / r^2 from fourth-order interior differences.
double conformality_defect(const UnduloidPatch& patch);

// Discrete Jacobi operator L u = (u_tt + u_thth) / r^2 + |A|^2 u on a
// scalar field sampled at patch nodes.  Returns max |L u| over the
// evaluated interior (theta wraps on a full patch).  order is 2 or 4.
double jacobi_residual(const UnduloidPatch& patch, const std::vector<double>& u,
                       int order = 4);

}  // namespace cmclab
