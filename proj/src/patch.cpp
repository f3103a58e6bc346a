#include "cmclab/patch.hpp"

#include <cmath>
#include <numbers>

#include "cmclab/s3.hpp"

namespace cmclab {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> uniform_grid(double lo, double hi, std::size_t count) {
    std::vector<double> g(count);
    for (std::size_t i = 0; i < count; ++i)
        g[i] = lo + (hi - lo) * double(i) / double(count - 1);
    return g;
}

// Node fields from a profile point.
PatchNode make_node(const ProfilePoint& p, double th) {
    PatchNode nd;
    const double cp = std::cos(p.psi), sp = std::sin(p.psi);
    const double ct = std::cos(th), st = std::sin(th);
    nd.x = p.x;
    nd.r = p.r;
    nd.psi = p.psi;
    nd.f = {p.x, p.r * ct, p.r * st};
    nd.nu = {sp, -cp * ct, -cp * st};
    const double k2 = cp / p.r;  // principal curvature around the axis
    nd.normA2 = (2.0 - k2) * (2.0 - k2) + k2 * k2;
    return nd;
}

void fill_nodes(UnduloidPatch& patch) {
    patch.nodes.resize(patch.nt() * patch.ntheta());
    for (std::size_t i = 0; i < patch.nt(); ++i) {
        const ProfilePoint& p = patch.station[patch.station_of_node(i)];
        for (std::size_t j = 0; j < patch.ntheta(); ++j)
            patch.nodes[patch.index(i, j)] = make_node(p, patch.theta[j]);
    }
}

std::vector<double> station_coordinates(double t0, double dt, std::size_t nt) {
    std::vector<double> st(4 * (nt - 1) + 1);
    for (std::size_t q = 0; q < st.size(); ++q) st[q] = t0 + dt * double(q) / 4.0;
    return st;
}

}  // namespace

ImVector UnduloidPatch::position(std::size_t q, double th) const {
    const ProfilePoint& p = station[q];
    return rot.rotate({p.x, p.r * std::cos(th), p.r * std::sin(th)}) + shift;
}

ImVector UnduloidPatch::df_dt(std::size_t q, double th) const {
    const ProfilePoint& p = station[q];
    const double cp = std::cos(p.psi), sp = std::sin(p.psi);
    return rot.rotate({p.r * cp, p.r * sp * std::cos(th), p.r * sp * std::sin(th)});
}

ImVector UnduloidPatch::df_dtheta(std::size_t q, double th) const {
    const ProfilePoint& p = station[q];
    return rot.rotate({0.0, -p.r * std::sin(th), p.r * std::cos(th)});
}

UnduloidPatch immerse(const DelaunayProfile& profile, bool half, double t_range,
                      std::size_t nt, std::size_t ntheta, double t_phase) {
    if (!(t_range > 0)) throw std::invalid_argument("immerse: t_range must be positive");
    if (nt < 16 || ntheta < 8) throw std::invalid_argument("immerse: grid too coarse");

    UnduloidPatch patch;
    patch.kind = profile.params.is_cylinder() ? SurfaceKind::Cylinder : SurfaceKind::Unduloid;
    patch.necksize = profile.params.n;
    patch.half = half;
    patch.theta_wraps = !half;
    patch.t = uniform_grid(-t_range, t_range, nt);
    patch.theta = half ? uniform_grid(0.0, kPi, ntheta)
                       : uniform_grid(0.0, 2.0 * kPi * (1.0 - 1.0 / double(ntheta)), ntheta);
    patch.has_period = profile.has_period;
    patch.conformal_period = profile.period_t;

    std::vector<double> st = station_coordinates(-t_range, patch.dt(), nt);
    if (t_phase != 0.0)
        for (double& v : st) v -= t_phase;
    patch.station = eval_profile_t(profile.params, st, profile.tol);
    fill_nodes(patch);
    return patch;
}

UnduloidPatch sphere_patch(bool half, double t_range, std::size_t nt, std::size_t ntheta) {
    if (!(t_range > 0)) throw std::invalid_argument("sphere_patch: t_range must be positive");
    if (nt < 16 || ntheta < 8) throw std::invalid_argument("sphere_patch: grid too coarse");

    UnduloidPatch patch;
    patch.kind = SurfaceKind::Sphere;
    patch.necksize = 0;
    patch.half = half;
    patch.theta_wraps = !half;
    patch.t = uniform_grid(-t_range, t_range, nt);
    patch.theta = half ? uniform_grid(0.0, kPi, ntheta)
                       : uniform_grid(0.0, 2.0 * kPi * (1.0 - 1.0 / double(ntheta)), ntheta);
    patch.has_period = false;
    patch.conformal_period = 0;

    std::vector<double> st = station_coordinates(-t_range, patch.dt(), nt);
    patch.station.resize(st.size());
    for (std::size_t q = 0; q < st.size(); ++q) {
        const double th = std::tanh(st[q]);
        const double sh = 1.0 / std::cosh(st[q]);
        // cos psi = sech t, sin psi = -tanh t; |A|^2 = 2 follows from the
        // generic formula since cos(psi)/r = 1.
        patch.station[q] = {th, sh, std::atan2(-th, sh)};
    }
    fill_nodes(patch);
    return patch;
}

UnduloidPatch apply_isometry(const UnduloidPatch& patch, const UnitQuaternion& rot,
                             const ImVector& shift) {
    UnduloidPatch out = patch;
    out.rot = rot * patch.rot;
    out.shift = rot.rotate(patch.shift) + shift;
    for (auto& nd : out.nodes) {
        nd.f = rot.rotate(nd.f) + shift;
        nd.nu = rot.rotate(nd.nu);
    }
    return out;
}

VecField killing_on_patch(const UnduloidPatch& patch, const KillingField& field) {
    VecField v(patch.nodes.size());
    for (std::size_t idx = 0; idx < patch.nodes.size(); ++idx)
        v[idx] = killing_eval(field, patch.nodes[idx].f);
    return v;
}

std::vector<double> normal_part(const UnduloidPatch& patch, const VecField& field) {
    std::vector<double> u(patch.nodes.size());
    for (std::size_t idx = 0; idx < patch.nodes.size(); ++idx)
        u[idx] = field[idx].dot(patch.nodes[idx].nu);
    return u;
}

NecksizeChangeField necksize_change_field(const NecksizeParams& params,
                                          const UnduloidPatch& patch, double h,
                                          double tol, double t_phase) {
    if (!(h > 0)) throw std::invalid_argument("necksize_change_field: h must be positive");
    const double t_range = patch.t.back();
    const std::size_t nt = patch.nt(), ntheta = patch.ntheta();

    NecksizeChangeField out;
    out.step = h;

    auto build = [&](double n, double phase) {
        DelaunayProfile prof = solve_profile(NecksizeParams(n), tol, 16);
        return immerse(prof, patch.half, t_range, nt, ntheta, phase);
    };

    if (params.is_cylinder()) {
        // No unduloid with n > pi exists: difference one-sidedly against
        // n - h, whose neck sits at t_phase.
        UnduloidPatch lo = build(params.n - h, t_phase);
        out.one_sided = true;
        out.eta.resize(patch.nodes.size());
        for (std::size_t idx = 0; idx < patch.nodes.size(); ++idx)
            out.eta[idx] = (patch.nodes[idx].f - lo.nodes[idx].f) / h;
    } else {
        if (params.n + h >= kPi || params.n - h <= 0)
            throw std::invalid_argument("necksize_change_field: n +/- h outside (0, pi)");
        UnduloidPatch lo = build(params.n - h, 0.0);
        UnduloidPatch hi = build(params.n + h, 0.0);
        out.eta.resize(patch.nodes.size());
        for (std::size_t idx = 0; idx < patch.nodes.size(); ++idx)
            out.eta[idx] = (hi.nodes[idx].f - lo.nodes[idx].f) / (2.0 * h);
    }
    out.normal = normal_part(patch, out.eta);
    return out;
}

}  // namespace cmclab
