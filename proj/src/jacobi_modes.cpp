#include "cmclab/jacobi_modes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cmclab/meshcheck.hpp"
#include "cmclab/ode.hpp"
#include "cmclab/s3.hpp"

namespace cmclab {

namespace {

constexpr double kPi = std::numbers::pi;

double potential(int m, double r, double psi) {
    const double k2 = 2.0 * r - std::cos(psi);
    const double cp = std::cos(psi);
    return double(m) * double(m) - (k2 * k2 + cp * cp);
}

// Transfer matrix over [0, T] for u'' = q_m u, integrating the profile
// alongside so the potential is exact at every internal stage.
void transfer_matrix(const ModeODE& ode, double tol, double out[2][2]) {
    auto rhs = [m = ode.m](double, const OdeState<4>& y) -> OdeState<4> {
        const double r = y[0], psi = y[1];
        return {r * std::sin(psi), std::cos(psi) - 2.0 * r, y[3],
                potential(m, r, psi) * y[2]};
    };
    auto solver = make_dopri5<4>(rhs, tol);
    for (int col = 0; col < 2; ++col) {
        OdeState<4> y = {ode.params.a, 0.0, col == 0 ? 1.0 : 0.0, col == 0 ? 0.0 : 1.0};
        solver.integrate(0.0, y, ode.period_t);
        out[0][col] = y[2];
        out[1][col] = y[3];
    }
}

void closed_form_cylinder(int m, double T, double out[2][2]) {
    const double q = double(m) * double(m) - 1.0;
    if (q < 0) {
        const double w = std::sqrt(-q);
        out[0][0] = std::cos(w * T);
        out[0][1] = std::sin(w * T) / w;
        out[1][0] = -w * std::sin(w * T);
        out[1][1] = std::cos(w * T);
    } else if (q == 0) {
        out[0][0] = 1;
        out[0][1] = T;
        out[1][0] = 0;
        out[1][1] = 1;
    } else {
        const double w = std::sqrt(q);
        out[0][0] = std::cosh(w * T);
        out[0][1] = std::sinh(w * T) / w;
        out[1][0] = w * std::sinh(w * T);
        out[1][1] = std::cosh(w * T);
    }
}

void multipliers(FloquetData& fd) {
    const double tr = fd.M[0][0] + fd.M[1][1];
    const double det = fd.M[0][0] * fd.M[1][1] - fd.M[0][1] * fd.M[1][0];
    // relative to the size of the cancelling products: hyperbolic
    // multipliers overflow any absolute comparison long before the
    // integration degrades
    const double scale = std::max(1.0, std::abs(fd.M[0][0] * fd.M[1][1]) +
                                           std::abs(fd.M[0][1] * fd.M[1][0]));
    fd.det_defect = std::abs(det - 1.0) / scale;
    const double disc = tr * tr - 4.0;
    if (disc >= 0) {
        const double s = std::sqrt(disc);
        fd.mu1 = {(tr + s) / 2.0, 0.0};
        fd.mu2 = {(tr - s) / 2.0, 0.0};
    } else {
        const double s = std::sqrt(-disc);
        fd.mu1 = {tr / 2.0, s / 2.0};
        fd.mu2 = {tr / 2.0, -s / 2.0};
    }
}

// Initial data of the geometric periodic solutions: <tau_i, nu> = sin psi
// for mode 0, the mode-1 coefficient -cos psi of <tau_k, nu> for mode 1.
bool check_periodic_certificate(const FloquetData& fd, const NecksizeParams& p) {
    double w0, w1;
    if (std::abs(fd.m) == 0) {
        w0 = 0.0;
        w1 = 1.0 - 2.0 * p.a;
    } else if (std::abs(fd.m) == 1) {
        w0 = -1.0;
        w1 = 0.0;
    } else {
        return false;
    }
    const double r0 = fd.M[0][0] * w0 + fd.M[0][1] * w1 - w0;
    const double r1 = fd.M[1][0] * w0 + fd.M[1][1] * w1 - w1;
    const double scale = std::max(std::abs(w0), std::abs(w1));
    const double tol = std::max(1e-9, 50.0 * fd.est_error);
    return std::hypot(r0, r1) <= tol * scale;
}

}  // namespace

const char* growth_name(GrowthClass g) {
    switch (g) {
        case GrowthClass::BoundedOscillatory: return "bounded-oscillatory";
        case GrowthClass::Parabolic: return "parabolic";
        case GrowthClass::Hyperbolic: return "hyperbolic";
        default: return "inconclusive";
    }
}

ModeODE mode_potential(const DelaunayProfile& profile, int m) {
    if (!profile.conformal && !profile.params.is_cylinder())
        throw std::invalid_argument("mode_potential: profile must be conformally reparametrized");
    ModeODE ode;
    ode.m = m;
    ode.params = profile.params;
    ode.cylinder = profile.params.is_cylinder();
    ode.period_t = profile.period_t;
    ode.tol = profile.tol;
    ode.t_samples.reserve(profile.samples.size());
    ode.q_samples.reserve(profile.samples.size());
    for (const auto& smp : profile.samples) {
        ode.t_samples.push_back(smp.t);
        ode.q_samples.push_back(potential(m, smp.r, smp.psi));
    }
    return ode;
}

FloquetData monodromy(const ModeODE& ode, double tol) {
    if (!(tol > 0)) throw std::invalid_argument("monodromy: tol must be positive");
    FloquetData fd;
    fd.m = ode.m;

    if (ode.cylinder) {
        fd.constant_coefficient = true;
        fd.q_const = double(ode.m) * double(ode.m) - 1.0;
        fd.period = 2.0 * kPi;  // theta-period convention; no intrinsic t-period exists
        closed_form_cylinder(ode.m, fd.period, fd.M);
        fd.est_error = 0.0;
        multipliers(fd);
        fd.periodic_certificate = (std::abs(ode.m) == 1);
        return fd;
    }

    fd.period = ode.period_t;
    transfer_matrix(ode, tol, fd.M);
    double coarse[2][2];
    transfer_matrix(ode, tol * 100.0, coarse);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            fd.est_error = std::max(fd.est_error, std::abs(fd.M[i][j] - coarse[i][j]));
    multipliers(fd);
    fd.periodic_certificate = check_periodic_certificate(fd, ode.params);
    return fd;
}

ModeClassification classify_mode(const FloquetData& fd) {
    ModeClassification cl;
    const double mu_max = std::max(std::abs(fd.mu1), std::abs(fd.mu2));
    cl.margin = std::abs(mu_max - 1.0);
    const double guard = 10.0 * std::max(fd.est_error, 1e-13);

    if (fd.periodic_certificate) {
        // A verified periodic solution plus unit determinant forces both
        // multipliers onto 1: parabolic, solutions at most linear.
        cl.growth = GrowthClass::Parabolic;
        cl.tempered = 2;
        cl.inconclusive = false;
        return cl;
    }
    if (cl.margin <= guard) {
        const double tr = fd.M[0][0] + fd.M[1][1];
        if (std::abs(tr) < 2.0 - guard) {
            // unit-circle pair away from +-1
            cl.growth = GrowthClass::BoundedOscillatory;
            cl.tempered = 2;
            cl.inconclusive = false;
            return cl;
        }
        cl.growth = GrowthClass::Inconclusive;
        return cl;
    }
    if (mu_max > 1.0) {
        cl.growth = GrowthClass::Hyperbolic;
        cl.tempered = 0;
        cl.inconclusive = false;
        return cl;
    }
    // mu_max < 1 contradicts mu1 mu2 = 1; treat as inconclusive.
    cl.growth = GrowthClass::Inconclusive;
    return cl;
}

std::vector<GeometricField> geometric_jacobi_fields(const UnduloidPatch& patch,
                                                    const NecksizeParams& params,
                                                    double fd_step) {
    if (!patch.theta_wraps)
        throw std::invalid_argument("geometric_jacobi_fields: needs the full patch");

    std::vector<GeometricField> out;
    auto push = [&](const std::string& label, VecField field, int mode, bool even) {
        GeometricField gf;
        gf.label = label;
        gf.field = std::move(field);
        gf.normal = normal_part(patch, gf.field);
        gf.fourier_mode = mode;
        gf.even = even;
        gf.jacobi_defect = jacobi_residual(patch, gf.normal, 4);

        // Fourier energy per t-row outside the named mode.
        const std::size_t ntheta = patch.ntheta();
        double total = 0, named = 0;
        for (std::size_t i = 0; i < patch.nt(); ++i) {
            double cr = 0, ci = 0, p = 0;
            for (std::size_t j = 0; j < ntheta; ++j) {
                const double u = gf.normal[patch.index(i, j)];
                cr += u * std::cos(mode * patch.theta[j]);
                ci += u * std::sin(mode * patch.theta[j]);
                p += u * u;
            }
            cr /= double(ntheta);
            ci /= double(ntheta);
            total += p / double(ntheta);
            named += (mode == 0 ? 1.0 : 2.0) * (cr * cr + ci * ci);
        }
        gf.off_mode_energy = (total > 0) ? std::max(0.0, (total - named) / total) : 0.0;
        out.push_back(std::move(gf));
    };

    push("tau_i", killing_on_patch(patch, KillingField::translation(im_i())), 0, true);
    push("tau_j", killing_on_patch(patch, KillingField::translation(im_j())), 1, true);
    push("tau_k", killing_on_patch(patch, KillingField::translation(im_k())), 1, false);
    push("rho_j", killing_on_patch(patch, KillingField::rotation(im_j())), 1, false);
    push("rho_k", killing_on_patch(patch, KillingField::rotation(im_k())), 1, true);
    NecksizeChangeField eta = necksize_change_field(params, patch, fd_step);
    push("eta", eta.eta, 0, true);
    return out;
}

TemperedDimension tempered_dimension(const NecksizeParams& params, int m_max, double tol) {
    if (m_max < 2) throw std::invalid_argument("tempered_dimension: m_max must be >= 2");

    TemperedDimension td;
    DelaunayProfile prof = solve_profile(params, tol, 64);
    if (prof.has_period) prof = conformal_reparam(prof);

    for (int m = 0; m <= m_max; ++m) {
        ModeODE ode = mode_potential(prof, m);
        FloquetData fd = monodromy(ode, tol);
        ModeClassification cl = classify_mode(fd);
        ModeReport rep;
        rep.m = m;
        rep.growth = cl.growth;
        rep.tempered = cl.tempered;
        rep.margin = cl.margin;
        rep.mu1 = fd.mu1;
        rep.mu2 = fd.mu2;
        rep.det_defect = fd.det_defect;
        rep.certificate = fd.periodic_certificate;
        td.modes.push_back(rep);
        if (cl.inconclusive) {
            td.inconclusive = true;
            continue;
        }
        if (cl.tempered > 0) {
            td.total += (m == 0) ? cl.tempered : 2 * cl.tempered;
            td.even += cl.tempered;
        }
    }

    // Tail: max_t r^2 |A|^2 = 2 (a^2 + b^2), so q_m >= (m_max+1)^2 - 2 > 0
    // pointwise for every mode beyond m_max; a positive potential admits
    // no bounded solution.
    const double q_max = 2.0 * (params.a * params.a + params.b * params.b);
    td.tail_margin = double(m_max + 1) * double(m_max + 1) - q_max;
    td.tail_verified = td.tail_margin > 0;
    if (!td.tail_verified) td.inconclusive = true;
    return td;
}

NondegeneracyVerdict nondegeneracy_check(const NecksizeParams& params, int m_max, double tol) {
    NondegeneracyVerdict v;
    v.evidence = tempered_dimension(params, m_max, tol);
    if (v.evidence.inconclusive) {
        v.inconclusive = true;
        v.reason = "at least one mode classification is inconclusive";
        return v;
    }
    for (const ModeReport& rep : v.evidence.modes) {
        const bool no_L2 = (rep.growth == GrowthClass::Hyperbolic) ||
                           (rep.growth == GrowthClass::Parabolic) ||
                           (rep.growth == GrowthClass::BoundedOscillatory);
        if (!no_L2) {
            v.inconclusive = true;
            v.reason = "mode " + std::to_string(rep.m) + " unresolved";
            return v;
        }
        if (std::abs(rep.m) >= 2 && rep.growth != GrowthClass::Hyperbolic) {
            v.nondegenerate = false;
            v.reason = "mode " + std::to_string(rep.m) + " unexpectedly non-hyperbolic";
            return v;
        }
    }
    v.nondegenerate = true;
    v.reason = "modes 0, +-1 parabolic/oscillatory; all |m| >= 2 hyperbolic; "
               "positive-potential tail";
    return v;
}

}  // namespace cmclab
