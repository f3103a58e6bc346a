#pragma once

#include <complex>
#include <string>
#include <vector>

#include "cmclab/delaunay.hpp"
#include "cmclab/patch.hpp"

namespace cmclab {

// Fourier-mode analysis of the Jacobi operator L u = Delta u + |A|^2 u
// on an unduloid.  In conformal coordinates the metric is
// r^2 (dt^2 + dtheta^2), so Delta u = (u_tt + u_thth) / r^2 and the
// ansatz u = u_m(t) e^{i m theta} separates L u = 0 into the Hill
// equation
//     u_m'' = q_m(t) u_m,    q_m = m^2 - r^2 |A|^2,
// with q_m periodic of period T_t.  Along the profile
// r^2 |A|^2 = 2 (r^2 + c^2 / r^2) <= 2 (a^2 + b^2) <= 2, so every mode
// |m| >= 2 has a strictly positive potential.  On the cylinder q_m is
// the constant m^2 - 1 and the monodromy is known in closed form.

struct ModeODE {
    int m = 0;
    NecksizeParams params{1.0};
    bool cylinder = false;
    double period_t = 0;                      // conformal period (0 on the cylinder)
    double tol = 1e-11;
    std::vector<double> t_samples;            // one period
    std::vector<double> q_samples;            // potential at t_samples
};

ModeODE mode_potential(const DelaunayProfile& profile, int m);

enum class GrowthClass { BoundedOscillatory, Parabolic, Hyperbolic, Inconclusive };

const char* growth_name(GrowthClass g);

struct FloquetData {
    int m = 0;
    bool constant_coefficient = false;  // cylinder branch
    double period = 0;
    double M[2][2] = {{1, 0}, {0, 1}};  // transfer of (u, u') over one period
    std::complex<double> mu1, mu2;      // Floquet multipliers
    double det_defect = 0;              // |det M - 1|, relative to the product scale
    double est_error = 0;               // estimated integration error in M
    bool periodic_certificate = false;  // geometric solution verified periodic (|m| <= 1)
};

// Transfer matrix over one period from integrations with initial data
// (1,0) and (0,1); on the cylinder the constant-coefficient closed form
// is used instead.
FloquetData monodromy(const ModeODE& ode, double tol);

struct ModeClassification {
    GrowthClass growth = GrowthClass::Inconclusive;
    int tempered = -1;     // sub-exponential solutions of the mode ODE (2 or 0)
    bool inconclusive = true;
    double margin = 0;     // distance of max |mu| from the unit circle
};

// Growth class from the multipliers.  A verdict is only issued when
// | |mu| - 1 | clears ten times the estimated integration error, or when
// the periodic-solution certificate resolves a borderline trace.
ModeClassification classify_mode(const FloquetData& data);

struct GeometricField {
    std::string label;            // tau_i, tau_j, tau_k, rho_j, rho_k, eta
    VecField field;               // R^3-valued, on the full patch
    std::vector<double> normal;   // <V, nu>
    int fourier_mode = 0;
    bool even = false;            // parity under the mirror reflection
    double jacobi_defect = 0;     // discrete L applied to the normal part
    double off_mode_energy = 0;   // Fourier energy outside the named mode
};

// Normal parts of the Killing fields tau_i, tau_j, tau_k, rho_j, rho_k
// (rho_i is tangential) and the necksize-change field eta, on a full
// patch, with mode content and discrete Jacobi residuals.
std::vector<GeometricField> geometric_jacobi_fields(const UnduloidPatch& patch,
                                                    const NecksizeParams& params,
                                                    double fd_step = 1e-4);

struct ModeReport {
    int m = 0;
    GrowthClass growth = GrowthClass::Inconclusive;
    int tempered = -1;
    double margin = 0;
    std::complex<double> mu1, mu2;
    double det_defect = 0;
    bool certificate = false;
};

struct TemperedDimension {
    int total = 0;                  // counting sin and cos copies for m >= 1
    int even = 0;                   // modes contributing cos(m theta) terms
    bool inconclusive = false;
    bool tail_verified = false;     // q_m > 0 pointwise for all m > m_max
    double tail_margin = 0;         // (m_max+1)^2 - max r^2 |A|^2
    std::vector<ModeReport> modes;  // m = 0 .. m_max
};

// Sub-exponential solution count over modes |m| <= m_max, with the
// positivity tail argument covering all higher modes.
TemperedDimension tempered_dimension(const NecksizeParams& params, int m_max,
                                     double tol = 1e-11);

struct NondegeneracyVerdict {
    bool nondegenerate = false;
    bool inconclusive = false;
    std::string reason;
    TemperedDimension evidence;
};

// No mode admits an L^2 solution: hyperbolic modes pair decay at one end
// with growth at the other, parabolic and oscillatory modes never decay.
NondegeneracyVerdict nondegeneracy_check(const NecksizeParams& params, int m_max,
                                         double tol = 1e-11);

}  // namespace cmclab
