#pragma once

#include <cstddef>
#include <vector>

#include "cmclab/cousin.hpp"
#include "cmclab/delaunay.hpp"
#include "cmclab/patch.hpp"

namespace cmclab {

// The classifying map at unduloid level: the upper half M+ is integrated
// to its cousin, whose k boundary curves run along Hopf circles and
// project to points v_1, ..., v_k on S^2.  For an unduloid k = 2 and the
// spherical distance d(v_1, v_2) equals the necksize.

struct KPointTuple {
    std::vector<ImVector> v;        // ordered points on S^2
    std::vector<double> spread;     // Hopf-projection spread of each boundary curve

    std::size_t k() const { return v.size(); }
    // Distance from v_{i-1} to v_i in cyclic order (i = 0 pairs v_{k-1}, v_0).
    double distance(std::size_t i) const;
    // Consecutive points distinct; k >= 3 must not alternate (p,q,...,p,q).
    void validate(double tol = 1e-6) const;
};

struct ClassifyConfig {
    std::size_t nt = 400;            // t nodes of the half patch
    std::size_t ntheta = 100;        // theta nodes over [0, pi]
    double t_range_periods = 3.0;    // half-width of the t window, in conformal periods
    double tol = 1e-10;              // profile integration tolerance
    double holonomy_tol = 1e-5;
    double spread_tol = 1e-4;        // boundary Hopf-spread failure threshold
    int substeps = 2;
};

struct ClassifyResult {
    KPointTuple tuple;
    double distance = 0;           // d(v_1, v_2)
    double t_range = 0;            // absolute half-width used
    CousinReport report;
};

ClassifyResult classify_unduloid(const NecksizeParams& params, const ClassifyConfig& cfg);

// Tangent data at a k-point tuple, with the so_3 component removed by
// least squares (the concrete form of the quotient in T D_k).
struct TangentTuple {
    std::vector<ImVector> base;    // v_i
    std::vector<ImVector> delta;   // tangent perturbations at v_i
    double max_delta() const;
    // Rate of change of d(v_{i-1}, v_i).
    double distance_rate(std::size_t i) const;
};

TangentTuple project_so3(const TangentTuple& tuple);

enum class FamilyKind { Necksize, TranslationI, TranslationJ, RotationK };

// Finite-difference differential of the classifying map along a
// one-parameter family of surfaces: tuples at parameter +-h are
// rotation-aligned (Procrustes) and differenced.  Translations and
// rotations leave the tuple fixed; the necksize family changes the
// distance at unit rate.
TangentTuple dphi_fd(const NecksizeParams& params, FamilyKind family, double h,
                     const ClassifyConfig& cfg);

// Cousin of the necksize-change field by differencing anchored cousins
// of the family itself (avoids evaluating the conformal-structure term).
QuatField eta_cousin_fd(const NecksizeParams& params, const UnduloidPatch& patch,
                        const ClassifyConfig& cfg, double h);

// dPhi of an even field through its almost-odd cousin: the fitted
// left-translation axes w_i act as rotations -rho_{w_i} on the v_i.
TangentTuple dphi_almost_odd(const QuatField& cousin_jacobi, const UnduloidPatch& patch,
                             const CousinPatch& cousin, double threshold = 1e-3);

// Least-squares decomposition of a field restricted to the two ends
// against the even deficiency basis {eta, tau_i, tau_j, rho_k}.
struct EndFit {
    double eta = 0, tau_i = 0, tau_j = 0, rho_k = 0;
    double residual = 0;         // rms residual relative to the field scale
    double gram_condition = 0;
};

struct AsymptoteFit {
    EndFit end[2];               // t < 0 and t > 0
    double window_periods = 0;
};

AsymptoteFit dA_fit(const std::vector<double>& normal_field, const UnduloidPatch& patch,
                    const NecksizeParams& params, double window_periods = 1.0,
                    double eta_step = 5e-5);

// Necksize-change rate through both differentials.
struct RateComparison {
    FamilyKind family;
    double rate_dphi = 0;   // from the classifying tuple
    double rate_da = 0;     // eta coefficient of the asymptote fit
    double difference = 0;
    AsymptoteFit fit;
};

RateComparison compare_dphi_da(const NecksizeParams& params, FamilyKind family, double h,
                               const ClassifyConfig& cfg);

}  // namespace cmclab
