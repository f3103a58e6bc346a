#include "cmclab/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cmclab/ode.hpp"

namespace cmclab {

namespace {

constexpr double kPi = std::numbers::pi;

// Arclength system (x, r, psi).
OdeState<3> rhs_arclength(double, const OdeState<3>& y) {
    const double r = y[1], psi = y[2];
    return {std::cos(psi), std::sin(psi), std::cos(psi) / r - 2.0};
}

// Same curve in the conformal parameter t (d/dt = r d/ds).
OdeState<3> rhs_conformal(double, const OdeState<3>& y) {
    const double r = y[1], psi = y[2];
    return {r * std::cos(psi), r * std::sin(psi), std::cos(psi) - 2.0 * r};
}

double conservation_residual(const NecksizeParams& p, double r, double psi) {
    return std::abs(r * std::cos(psi) - r * r - p.c);
}

// First s > 0 where the tangent angle returns to zero: the bulge, half
// of the neck-to-neck period.
double locate_bulge(const NecksizeParams& p, double tol) {
    auto solver = make_dopri5<3>(rhs_arclength, tol);
    const double scan = 0.05;
    double s_prev = 0;
    OdeState<3> y_prev = {0.0, p.a, 0.0};
    for (int step = 1; step * scan < 40.0; ++step) {
        const double s = step * scan;
        OdeState<3> y = y_prev;
        solver.integrate(s_prev, y, s);
        if (y[2] <= 0.0) {
            auto psi_at = [&](double sq) {
                OdeState<3> yq = y_prev;
                solver.integrate(s_prev, yq, sq);
                return yq[2];
            };
            return bisect_root(psi_at, s_prev, s, 1e-13);
        }
        s_prev = s;
        y_prev = y;
    }
    throw numerical_error("locate_bulge: no period found (necksize too close to pi?)");
}

}  // namespace

NecksizeParams::NecksizeParams(double necksize) : n(necksize) {
    if (!(necksize > 0.0) || necksize > kPi + 1e-12)
        throw std::invalid_argument("necksize must lie in (0, pi]");
    n = std::min(necksize, kPi);
    a = n / (2.0 * kPi);
    b = 1.0 - a;
    c = a - a * a;
}

bool NecksizeParams::is_cylinder() const { return n >= kPi - 1e-12; }

DelaunayProfile solve_profile(const NecksizeParams& params, double tol,
                              std::size_t samples_per_period) {
    if (!(tol > 0)) throw std::invalid_argument("solve_profile: tol must be positive");
    if (samples_per_period < 4)
        throw std::invalid_argument("solve_profile: need at least 4 samples per period");

    DelaunayProfile prof{params, tol, {}, false, 0, 0, false};

    if (params.is_cylinder()) {
        // r = 1/2, psi = 0, x = s.  No period; sample a 2 pi window.
        const double window = 2.0 * kPi;
        for (std::size_t i = 0; i <= samples_per_period; ++i) {
            ProfileSample smp;
            smp.s = window * double(i) / double(samples_per_period);
            smp.x = smp.s;
            smp.r = 0.5;
            smp.psi = 0.0;
            smp.residual = std::abs(0.5 - 0.25 - params.c);
            prof.samples.push_back(smp);
        }
        prof.has_period = false;
        return prof;
    }

    prof.has_period = true;
    prof.period_s = 2.0 * locate_bulge(params, tol);

    std::vector<double> stations(samples_per_period + 1);
    for (std::size_t i = 0; i <= samples_per_period; ++i)
        stations[i] = prof.period_s * double(i) / double(samples_per_period);

    auto solver = make_dopri5<3>(rhs_arclength, tol);
    prof.samples.reserve(stations.size());
    double worst = 0;
    solver.integrate_stations(0.0, {0.0, params.a, 0.0}, stations,
                              [&](double s, const OdeState<3>& y) {
                                  ProfileSample smp;
                                  smp.s = s;
                                  smp.x = y[0];
                                  smp.r = y[1];
                                  smp.psi = y[2];
                                  smp.residual = conservation_residual(params, y[1], y[2]);
                                  worst = std::max(worst, smp.residual);
                                  prof.samples.push_back(smp);
                              });
    if (worst > 10.0 * tol)
        throw numerical_error("solve_profile: conservation drift " + std::to_string(worst) +
                              " exceeds 10 * tol");
    return prof;
}

DelaunayProfile conformal_reparam(const DelaunayProfile& profile) {
    DelaunayProfile out = profile;
    if (profile.params.is_cylinder()) {
        // dt = ds / r = 2 ds.
        for (auto& smp : out.samples) smp.t = 2.0 * smp.s;
        out.conformal = true;
        return out;
    }

    // Augment the arclength system with t' = 1/r.
    auto rhs = [](double, const OdeState<4>& y) -> OdeState<4> {
        const double r = y[1], psi = y[2];
        return {std::cos(psi), std::sin(psi), std::cos(psi) / r - 2.0, 1.0 / r};
    };
    auto solver = make_dopri5<4>(rhs, profile.tol);
    std::vector<double> stations;
    stations.reserve(profile.samples.size());
    for (const auto& smp : profile.samples)
        if (smp.s > 0) stations.push_back(smp.s);

    std::size_t idx = 0;
    out.samples[idx++].t = 0.0;
    solver.integrate_stations(0.0, {0.0, profile.params.a, 0.0, 0.0}, stations,
                              [&](double, const OdeState<4>& y) { out.samples[idx++].t = y[3]; });
    out.period_t = out.samples.back().t;
    out.conformal = true;
    return out;
}

std::vector<ProfilePoint> eval_profile_t(const NecksizeParams& params,
                                         const std::vector<double>& t_stations, double tol) {
    std::vector<ProfilePoint> out(t_stations.size());
    if (params.is_cylinder()) {
        for (std::size_t i = 0; i < t_stations.size(); ++i)
            out[i] = {0.5 * t_stations[i], 0.5, 0.0};
        return out;
    }

    // Evaluate |t| in increasing order, then mirror: r is even about the
    // neck while x and psi are odd.
    std::vector<std::size_t> order(t_stations.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t p, std::size_t q) {
        return std::abs(t_stations[p]) < std::abs(t_stations[q]);
    });

    auto solver = make_dopri5<3>(rhs_conformal, tol);
    OdeState<3> y = {0.0, params.a, 0.0};
    double t_cur = 0.0;
    for (std::size_t i : order) {
        const double ta = std::abs(t_stations[i]);
        solver.integrate(t_cur, y, ta);
        t_cur = ta;
        if (t_stations[i] >= 0)
            out[i] = {y[0], y[1], y[2]};
        else
            out[i] = {-y[0], y[1], -y[2]};
    }
    return out;
}

double conformal_period(const NecksizeParams& params, double tol) {
    DelaunayProfile prof = solve_profile(params, tol, 16);
    if (!prof.has_period)
        throw std::invalid_argument("conformal_period: cylinder has no conformal period");
    return conformal_reparam(prof).period_t;
}

double half_width_for_periods(const DelaunayProfile& profile, double periods) {
    const double unit = profile.has_period ? profile.period_t : 2.0 * kPi;
    if (profile.has_period && !profile.conformal)
        throw std::invalid_argument("half_width_for_periods: profile lacks the conformal period");
    return 0.5 * periods * unit;
}

}  // namespace cmclab
