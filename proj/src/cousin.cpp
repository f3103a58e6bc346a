#include "cmclab/cousin.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "cmclab/errors.hpp"
#include "cmclab/meshcheck.hpp"
#include "cmclab/stencil.hpp"

namespace cmclab {

namespace {

// alpha = (df o J) along an edge: moving in t the form takes the value
// df/dtheta, moving in theta it takes -df/dt.  Stations are sampled at
// half-substep spacing for the classical RK4 stages.
struct EdgeData {
    std::vector<ImVector> alpha;  // 2 * substeps + 1 stations
    double h = 0;                 // substep parameter length
};

EdgeData t_edge(const UnduloidPatch& patch, std::size_t i, std::size_t j, int substeps) {
    EdgeData e;
    e.h = patch.dt() / substeps;
    const std::size_t stride = 2 / substeps;  // substeps is 1 or 2
    const std::size_t q0 = patch.station_of_node(i);
    e.alpha.resize(2 * substeps + 1);
    for (std::size_t k = 0; k < e.alpha.size(); ++k)
        e.alpha[k] = patch.df_dtheta(q0 + k * stride, patch.theta[j]);
    return e;
}

EdgeData theta_edge(const UnduloidPatch& patch, std::size_t i, std::size_t j, int substeps) {
    EdgeData e;
    e.h = patch.dtheta() / substeps;
    const std::size_t q = patch.station_of_node(i);
    e.alpha.resize(2 * substeps + 1);
    for (std::size_t k = 0; k < e.alpha.size(); ++k) {
        const double th = patch.theta[j] + e.h / 2.0 * double(k);
        e.alpha[k] = -patch.df_dt(q, th);
    }
    return e;
}

// RK4 for the right-linear system y' = y alpha(t), y(0) = 1, returning
// the transfer quaternion over the edge.
Quaternion rk4_transfer(const EdgeData& e) {
    Quaternion y = Quaternion::one();
    const std::size_t steps = (e.alpha.size() - 1) / 2;
    for (std::size_t s = 0; s < steps; ++s) {
        const Quaternion a0 = e.alpha[2 * s].quat();
        const Quaternion a1 = e.alpha[2 * s + 1].quat();
        const Quaternion a2 = e.alpha[2 * s + 2].quat();
        const Quaternion k1 = y * a0;
        const Quaternion k2 = (y + k1 * (e.h / 2)) * a1;
        const Quaternion k3 = (y + k2 * (e.h / 2)) * a1;
        const Quaternion k4 = (y + k3 * e.h) * a2;
        y = y + (k1 + (k2 + k3) * 2.0 + k4) * (e.h / 6.0);
    }
    return y.normalized();
}

// Joint RK4 for g' = g alpha, V' = V alpha + g beta(alpha), propagating
// a cousin Jacobi field along one edge.  beta maps the station value of
// alpha to the corresponding station of dV o J (for Killing data dV is
// an algebraic expression in df, so beta is pointwise in alpha).
template <typename Beta>
void rk4_field_step(const EdgeData& e, Beta&& beta, Quaternion& g, Quaternion& V) {
    const std::size_t steps = (e.alpha.size() - 1) / 2;
    for (std::size_t s = 0; s < steps; ++s) {
        const Quaternion a[3] = {e.alpha[2 * s].quat(), e.alpha[2 * s + 1].quat(),
                                 e.alpha[2 * s + 2].quat()};
        const Quaternion b[3] = {beta(e.alpha[2 * s]), beta(e.alpha[2 * s + 1]),
                                 beta(e.alpha[2 * s + 2])};
        const Quaternion kg1 = g * a[0];
        const Quaternion kv1 = V * a[0] + g * b[0];
        const Quaternion g2 = g + kg1 * (e.h / 2), v2 = V + kv1 * (e.h / 2);
        const Quaternion kg2 = g2 * a[1];
        const Quaternion kv2 = v2 * a[1] + g2 * b[1];
        const Quaternion g3 = g + kg2 * (e.h / 2), v3 = V + kv2 * (e.h / 2);
        const Quaternion kg3 = g3 * a[1];
        const Quaternion kv3 = v3 * a[1] + g3 * b[1];
        const Quaternion g4 = g + kg3 * e.h, v4 = V + kv3 * e.h;
        const Quaternion kg4 = g4 * a[2];
        const Quaternion kv4 = v4 * a[2] + g4 * b[2];
        g = g + (kg1 + (kg2 + kg3) * 2.0 + kg4) * (e.h / 6.0);
        V = V + (kv1 + (kv2 + kv3) * 2.0 + kv4) * (e.h / 6.0);
        g = g.normalized();
    }
}

// Spanning tree of the grid: along the theta = 0 row from the anchor,
// then up each column.  visit(i_from, j_from, i_to, j_to, edge).
template <typename Visit>
void walk_tree(const UnduloidPatch& patch, std::size_t anchor_i, int substeps, Visit&& visit) {
    const std::size_t nt = patch.nt(), ntheta = patch.ntheta();
    for (std::size_t i = anchor_i; i + 1 < nt; ++i)
        visit(i, 0, i + 1, 0, t_edge(patch, i, 0, substeps), false);
    for (std::size_t i = anchor_i; i > 0; --i)
        visit(i, 0, i - 1, 0, t_edge(patch, i - 1, 0, substeps), true);
    for (std::size_t i = 0; i < nt; ++i)
        for (std::size_t j = 0; j + 1 < ntheta; ++j)
            visit(i, j, i, j + 1, theta_edge(patch, i, j, substeps), false);
}

ImVector horiz(const ImVector& v) { return {v.x, v.y, 0.0}; }

double curve_mean_and_spread(const CousinPatch& cousin, std::size_t j, ImVector& mean_out) {
    ImVector acc{0, 0, 0};
    for (std::size_t i = 0; i < cousin.nt; ++i)
        acc = acc + hopf_project_k(cousin.f[cousin.index(i, j)]);
    mean_out = acc.normalized();
    double spread = 0;
    for (std::size_t i = 0; i < cousin.nt; ++i)
        spread = std::max(spread,
                          geodesic_distance_s2(hopf_project_k(cousin.f[cousin.index(i, j)]),
                                               mean_out));
    return spread;
}

}  // namespace

const char* verdict_name(BoundaryVerdict v) {
    switch (v) {
        case BoundaryVerdict::Even: return "even";
        case BoundaryVerdict::Odd: return "odd";
        case BoundaryVerdict::AlmostEven: return "almost-even";
        case BoundaryVerdict::AlmostOdd: return "almost-odd";
        default: return "none";
    }
}

CousinPatch integrate_cousin(const UnduloidPatch& patch, double holonomy_tol, int substeps) {
    if (!patch.half)
        throw std::invalid_argument("integrate_cousin: cousin needs the simply connected half patch");
    if (substeps != 1 && substeps != 2)
        throw std::invalid_argument("integrate_cousin: substeps must be 1 or 2");

    const std::size_t nt = patch.nt(), ntheta = patch.ntheta();
    CousinPatch cousin;
    cousin.nt = nt;
    cousin.ntheta = ntheta;
    cousin.anchor_i = nt / 2;
    cousin.anchor_j = 0;
    cousin.f.assign(nt * ntheta, UnitQuaternion::one());

    // All edge transfers (needed for the holonomy certificate anyway).
    std::vector<Quaternion> Et((nt - 1) * ntheta);       // (i,j) -> (i+1,j)
    std::vector<Quaternion> Eth(nt * (ntheta - 1));      // (i,j) -> (i,j+1)
    for (std::size_t i = 0; i + 1 < nt; ++i)
        for (std::size_t j = 0; j < ntheta; ++j)
            Et[i * ntheta + j] = rk4_transfer(t_edge(patch, i, j, substeps));
    for (std::size_t i = 0; i < nt; ++i)
        for (std::size_t j = 0; j + 1 < ntheta; ++j)
            Eth[i * (ntheta - 1) + j] = rk4_transfer(theta_edge(patch, i, j, substeps));

    // Assemble along the tree.
    const std::size_t ai = cousin.anchor_i;
    for (std::size_t i = ai; i + 1 < nt; ++i)
        cousin.f[cousin.index(i + 1, 0)] =
            UnitQuaternion(cousin.f[cousin.index(i, 0)].q * Et[i * ntheta + 0]);
    for (std::size_t i = ai; i > 0; --i)
        cousin.f[cousin.index(i - 1, 0)] =
            UnitQuaternion(cousin.f[cousin.index(i, 0)].q * Et[(i - 1) * ntheta + 0].inverse());
    for (std::size_t i = 0; i < nt; ++i)
        for (std::size_t j = 0; j + 1 < ntheta; ++j)
            cousin.f[cousin.index(i, j + 1)] =
                UnitQuaternion(cousin.f[cousin.index(i, j)].q * Eth[i * (ntheta - 1) + j]);

    // Plaquette holonomy: the continuous system is integrable, so the
    // loop product must return to the identity.
    double worst = 0;
    std::size_t worst_i = 0, worst_j = 0;
    for (std::size_t i = 0; i + 1 < nt; ++i)
        for (std::size_t j = 0; j + 1 < ntheta; ++j) {
            const Quaternion loop = Et[i * ntheta + j] * Eth[(i + 1) * (ntheta - 1) + j] *
                                    Et[i * ntheta + (j + 1)].inverse() *
                                    Eth[i * (ntheta - 1) + j].inverse();
            const double res = (loop - Quaternion::one()).norm();
            if (res > worst) {
                worst = res;
                worst_i = i;
                worst_j = j;
            }
        }
    cousin.max_holonomy = worst;
    if (worst > holonomy_tol)
        throw numerical_error("integrate_cousin: plaquette holonomy " + std::to_string(worst) +
                              " at cell (" + std::to_string(worst_i) + "," +
                              std::to_string(worst_j) + ") exceeds tolerance");

    cousin.nu.resize(nt * ntheta);
    for (std::size_t i = 0; i < nt; ++i)
        for (std::size_t j = 0; j < ntheta; ++j)
            cousin.nu[cousin.index(i, j)] =
                cousin.f[cousin.index(i, j)].q * patch.node(i, j).nu.quat();
    return cousin;
}

CousinPatch gauge_transform(const CousinPatch& cousin, const UnitQuaternion& q) {
    CousinPatch out = cousin;
    for (auto& f : out.f) f = q * f;
    for (auto& n : out.nu) n = q.q * n;
    return out;
}

UnitQuaternion fit_gauge(const CousinPatch& cousin, const std::vector<UnitQuaternion>& g) {
    if (g.size() != cousin.f.size())
        throw std::invalid_argument("fit_gauge: reference size mismatch");
    Quaternion s{0, 0, 0, 0};
    for (std::size_t idx = 0; idx < g.size(); ++idx) s = s + cousin.f[idx].q * g[idx].q.conj();
    return UnitQuaternion(s.conj());
}

CousinReport verify_cousin(const CousinPatch& cousin, const UnduloidPatch& patch) {
    const std::size_t nt = patch.nt(), ntheta = patch.ntheta();
    if (cousin.nt != nt || cousin.ntheta != ntheta)
        throw std::invalid_argument("verify_cousin: grid mismatch");
    const double dt = patch.dt(), dth = patch.dtheta();

    CousinReport rep;
    rep.max_holonomy = cousin.max_holonomy;

    for (std::size_t i = 2; i + 2 < nt; ++i)
        for (std::size_t j = 2; j + 2 < ntheta; ++j) {
            const double r = patch.node(i, j).r;
            auto ft = fd_d1_c4([&](int o) { return cousin.f[cousin.index(i + o, j)].q; }, dt);
            auto fth = fd_d1_c4([&](int o) { return cousin.f[cousin.index(i, j + o)].q; }, dth);
            auto gt = fd_d1_c4([&](int o) { return patch.node(i + o, j).f; }, dt);
            auto gth = fd_d1_c4([&](int o) { return patch.node(i, j + o).f; }, dth);
            rep.isometry_defect =
                std::max(rep.isometry_defect, std::abs(ft.norm() - gt.norm()) / r);
            rep.isometry_defect =
                std::max(rep.isometry_defect, std::abs(fth.norm() - gth.norm()) / r);
            const Quaternion nu = cousin.nu[cousin.index(i, j)];
            rep.normal_defect = std::max(rep.normal_defect, std::abs(nu.dot(ft)) / r);
            rep.normal_defect = std::max(rep.normal_defect, std::abs(nu.dot(fth)) / r);
        }

    for (std::size_t i = 0; i < nt; ++i)
        for (std::size_t j = 0; j < ntheta; ++j) {
            const std::size_t v = cousin.index(i, j);
            const Quaternion fk = cousin.f[v].q * im_k().quat();
            const double lhs = cousin.nu[v].dot(fk);
            rep.vertical_identity =
                std::max(rep.vertical_identity, std::abs(lhs - patch.node(i, j).nu.dot(im_k())));
            if (j > 0 && j + 1 < ntheta)
                rep.transversality = std::max(rep.transversality, patch.node(i, j).nu.dot(im_k()));
        }

    rep.boundary_spread[0] = curve_mean_and_spread(cousin, 0, rep.hopf_image[0]);
    rep.boundary_spread[1] = curve_mean_and_spread(cousin, ntheta - 1, rep.hopf_image[1]);
    rep.hopf_distance = geodesic_distance_s2(rep.hopf_image[0], rep.hopf_image[1]);

    std::vector<UnitQuaternion> pos = cousin.f;
    rep.mean_curvature_s3 = discrete_mean_curvature_s3(patch, pos, cousin.nu).max_abs_error;
    return rep;
}

VecField transplant(const QuatField& W, const CousinPatch& cousin, double tangency_tol) {
    if (W.size() != cousin.f.size())
        throw std::invalid_argument("transplant: field size mismatch");
    double scale = 1e-300;
    for (const auto& w : W) scale = std::max(scale, w.norm());
    VecField out(W.size());
    for (std::size_t idx = 0; idx < W.size(); ++idx) {
        const Quaternion bar = cousin.f[idx].q.conj() * W[idx];
        if (std::abs(bar.re()) > tangency_tol * scale)
            throw std::invalid_argument("transplant: field is not tangent to S^3 along f~");
        out[idx] = bar.im();
    }
    return out;
}

double transplant_identity_residual(const QuatField& W, const UnduloidPatch& patch,
                                    const CousinPatch& cousin) {
    const std::size_t nt = patch.nt(), ntheta = patch.ntheta();
    const double dt = patch.dt(), dth = patch.dtheta();
    VecField bar = transplant(W, cousin);
    double scale = 1e-300;
    for (const auto& w : W) scale = std::max(scale, w.norm());

    double worst = 0;
    for (std::size_t i = 3; i + 3 < nt; ++i)
        for (std::size_t j = 3; j + 3 < ntheta; ++j) {
            const std::size_t v = cousin.index(i, j);
            const Quaternion finv = cousin.f[v].q.conj();
            auto dWt = fd_d1_c6([&](int o) { return W[cousin.index(i + o, j)]; }, dt);
            auto dWth = fd_d1_c6([&](int o) { return W[cousin.index(i, j + o)]; }, dth);
            auto dbt = fd_d1_c6([&](int o) { return bar[cousin.index(i + o, j)].quat(); }, dt);
            auto dbth = fd_d1_c6([&](int o) { return bar[cousin.index(i, j + o)].quat(); }, dth);
            const Quaternion alpha_t = patch.df_dtheta(patch.station_of_node(i), patch.theta[j]);
            const Quaternion alpha_th = -patch.df_dt(patch.station_of_node(i), patch.theta[j]);
            const Quaternion res_t = finv * dWt - dbt - alpha_t * bar[v].quat();
            const Quaternion res_th = finv * dWth - dbth - alpha_th * bar[v].quat();
            worst = std::max({worst, res_t.norm() / scale, res_th.norm() / scale});
        }
    return worst;
}

double check_eq6(const CousinPatch& cousin, const UnduloidPatch& patch, const ImVector& u) {
    require_unit(u, "check_eq6");
    const std::size_t nt = patch.nt(), ntheta = patch.ntheta();
    const double dt = patch.dt(), dth = patch.dtheta();

    VecField lbar(cousin.f.size());
    for (std::size_t idx = 0; idx < cousin.f.size(); ++idx)
        lbar[idx] = hopf_project(cousin.f[idx].inverse(), u);

    double worst = 0;
    for (std::size_t i = 3; i + 3 < nt; ++i)
        for (std::size_t j = 3; j + 3 < ntheta; ++j) {
            const std::size_t q = patch.station_of_node(i);
            const ImVector df_t = patch.df_dt(q, patch.theta[j]);
            const ImVector df_th = patch.df_dtheta(q, patch.theta[j]);
            auto dl_t = fd_d1_c6([&](int o) { return lbar[cousin.index(i + o, j)]; }, dt);
            auto dl_th = fd_d1_c6([&](int o) { return lbar[cousin.index(i, j + o)]; }, dth);
            const ImVector res_t = 2.0 * df_t.cross(lbar[cousin.index(i, j)]) - dl_th;
            const ImVector res_th = 2.0 * df_th.cross(lbar[cousin.index(i, j)]) + dl_t;
            worst = std::max({worst, res_t.norm(), res_th.norm()});
        }
    return worst;
}

QuatField integrate_cousin_field(const KillingField& V, const UnduloidPatch& patch,
                                 const CousinPatch& cousin, const Quaternion& anchor_value) {
    if (V.kind != KillingKind::Translation && V.kind != KillingKind::Rotation)
        throw std::invalid_argument("integrate_cousin_field: V must be tau_u or rho_u");
    // For V = rho_u, dV = df u - u df, so dV o J = alpha u - u alpha;
    // for V = tau_u the inhomogeneity vanishes.
    const bool rotation = (V.kind == KillingKind::Rotation);
    const Quaternion u = V.axis.quat();
    auto beta = [&](const ImVector& alpha) -> Quaternion {
        if (!rotation) return {0, 0, 0, 0};
        const Quaternion a = alpha.quat();
        return a * u - u * a;
    };

    QuatField field(cousin.f.size());
    field[cousin.index(cousin.anchor_i, cousin.anchor_j)] = anchor_value;
    walk_tree(patch, cousin.anchor_i, 2,
              [&](std::size_t fi, std::size_t fj, std::size_t ti, std::size_t tj,
                  EdgeData edge, bool reversed) {
                  if (reversed) {
                      // integrate backwards: flip stations and the sign of h
                      std::reverse(edge.alpha.begin(), edge.alpha.end());
                      edge.h = -edge.h;
                  }
                  Quaternion g = cousin.f[cousin.index(fi, fj)].q;
                  Quaternion val = field[cousin.index(fi, fj)];
                  rk4_field_step(edge, beta, g, val);
                  field[cousin.index(ti, tj)] = val;
              });
    return field;
}

CousinFieldResult cousin_field(const KillingField& V, const UnduloidPatch& patch,
                               const CousinPatch& cousin, double fail_tol) {
    CousinFieldResult res;
    res.closed_form.resize(cousin.f.size());
    for (std::size_t idx = 0; idx < cousin.f.size(); ++idx)
        res.closed_form[idx] = (V.kind == KillingKind::Rotation)
                                   ? cousin.f[idx].q * V.axis.quat()
                                   : Quaternion{0, 0, 0, 0};

    const Quaternion anchor = res.closed_form[cousin.index(cousin.anchor_i, cousin.anchor_j)];
    res.integrated = integrate_cousin_field(V, patch, cousin, anchor);

    // The residual left translation l_w satisfies (V_int - V_cf) f~^-1 = w.
    Quaternion wacc{0, 0, 0, 0};
    for (std::size_t idx = 0; idx < cousin.f.size(); ++idx)
        wacc = wacc + (res.integrated[idx] - res.closed_form[idx]) * cousin.f[idx].q.conj();
    wacc = wacc / double(cousin.f.size());
    res.fitted_w = wacc.im();
    for (std::size_t idx = 0; idx < cousin.f.size(); ++idx) {
        const Quaternion diff =
            res.integrated[idx] - res.closed_form[idx] - res.fitted_w.quat() * cousin.f[idx].q;
        res.discrepancy = std::max(res.discrepancy, diff.norm());
    }
    if (res.discrepancy > fail_tol)
        throw numerical_error("cousin_field: integrated field deviates from the closed form by " +
                              std::to_string(res.discrepancy));
    return res;
}

namespace {

struct CurveFrame {
    std::size_t j = 0;   // boundary row
    int dir = 1;         // +1 at theta = 0, -1 at theta = pi: inward conormal
};

// One-sided conormal derivative of a node-sampled field along a
// boundary curve; r d/dn points into the patch on both curves.
template <typename Field>
auto conormal_derivative(const Field& F, const UnduloidPatch& patch, const CurveFrame& c,
                         std::size_t i) {
    const std::size_t ntheta = patch.ntheta();
    auto at = [&](int o) { return F[patch.index(i, c.j + std::size_t(c.dir * o))]; };
    (void)ntheta;
    return fd_d1_onesided2(at, patch.dtheta()) * (1.0 / patch.node(i, c.j).r);
}

}  // namespace

BoundaryClassification classify_boundary_mplus(const VecField& V, const UnduloidPatch& patch,
                                               const CousinPatch& cousin, double threshold) {
    if (V.size() != patch.nodes.size())
        throw std::invalid_argument("classify_boundary_mplus: field size mismatch");
    BoundaryClassification out;
    for (const auto& v : V) out.field_scale = std::max(out.field_scale, v.norm());
    const double scale = std::max(out.field_scale, 1e-300);
    const std::size_t nt = patch.nt();

    const CurveFrame frames[2] = {{0, +1}, {patch.ntheta() - 1, -1}};
    for (int c = 0; c < 2; ++c) {
        CurveClassification& cc = out.curve[c];
        curve_mean_and_spread(cousin, frames[c].j, cc.hopf_image);

        double vert_sum = 0;
        std::vector<double> vert(nt);
        for (std::size_t i = 0; i < nt; ++i) {
            vert[i] = V[patch.index(i, frames[c].j)].dot(im_k());
            vert_sum += vert[i];
        }
        const double v_mean = vert_sum / double(nt);
        cc.fitted = {0, 0, v_mean};

        double even_res = 0, odd_res = 0, almost_even_res = 0;
        for (std::size_t i = 2; i + 2 < nt; ++i) {
            const ImVector val = V[patch.index(i, frames[c].j)];
            const ImVector dn = conormal_derivative(V, patch, frames[c], i);
            even_res = std::max({even_res, std::abs(vert[i]), horiz(dn).norm()});
            odd_res = std::max({odd_res, horiz(val).norm(), std::abs(dn.dot(im_k()))});
            almost_even_res =
                std::max({almost_even_res, std::abs(vert[i] - v_mean), horiz(dn).norm()});
        }
        cc.even_residual = even_res / scale;
        cc.odd_residual = odd_res / scale;
        cc.almost_even_residual = almost_even_res / scale;
        cc.almost_odd_residual = HUGE_VAL;

        if (cc.even_residual <= threshold)
            cc.verdict = BoundaryVerdict::Even;
        else if (cc.odd_residual <= threshold)
            cc.verdict = BoundaryVerdict::Odd;
        else if (cc.almost_even_residual <= threshold)
            cc.verdict = BoundaryVerdict::AlmostEven;
        else
            cc.verdict = BoundaryVerdict::None;
    }
    return out;
}

BoundaryClassification classify_boundary_mtilde(const QuatField& W, const UnduloidPatch& patch,
                                                const CousinPatch& cousin, double threshold) {
    if (W.size() != patch.nodes.size())
        throw std::invalid_argument("classify_boundary_mtilde: field size mismatch");
    BoundaryClassification out;
    for (const auto& w : W) out.field_scale = std::max(out.field_scale, w.norm());
    const double scale = std::max(out.field_scale, 1e-300);
    const std::size_t nt = patch.nt();
    const double dt = patch.dt();

    VecField bar = transplant(W, cousin, 1e-6);

    const CurveFrame frames[2] = {{0, +1}, {patch.ntheta() - 1, -1}};
    for (int c = 0; c < 2; ++c) {
        CurveClassification& cc = out.curve[c];
        curve_mean_and_spread(cousin, frames[c].j, cc.hopf_image);

        // Least-squares left translation: horizontal part of
        // W-bar - f~^{-1} w f~ minimized over w.  The direction w = v_i
        // transplants exactly to k, so the system is singular along it
        // and the minimum-norm solution is perpendicular to v_i.
        Eigen::MatrixXd A(2 * (nt - 4), 3);
        Eigen::VectorXd b(2 * (nt - 4));
        std::size_t row = 0;
        for (std::size_t i = 2; i + 2 < nt; ++i) {
            const UnitQuaternion finv = cousin.f[cousin.index(i, frames[c].j)].inverse();
            const ImVector cols[3] = {finv.rotate(im_i()), finv.rotate(im_j()),
                                      finv.rotate(im_k())};
            const ImVector rhs = bar[patch.index(i, frames[c].j)];
            A(row, 0) = cols[0].x;
            A(row, 1) = cols[1].x;
            A(row, 2) = cols[2].x;
            b(row) = rhs.x;
            ++row;
            A(row, 0) = cols[0].y;
            A(row, 1) = cols[1].y;
            A(row, 2) = cols[2].y;
            b(row) = rhs.y;
            ++row;
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
        svd.setThreshold(1e-6);
        const Eigen::Vector3d w = svd.solve(b);
        cc.fitted = {w(0), w(1), w(2)};

        auto lbar_at = [&](std::size_t i, std::size_t j) {
            return hopf_project(cousin.f[cousin.index(i, j)].inverse(),
                                cc.fitted.normalized()) *
                   cc.fitted.norm();
        };

        double odd_res = 0, even_res = 0, almost_odd_res = 0, omega_res = 0;
        for (std::size_t i = 2; i + 2 < nt; ++i) {
            const std::size_t j = frames[c].j;
            const ImVector val = bar[patch.index(i, j)];
            const ImVector dn = conormal_derivative(bar, patch, frames[c], i);
            odd_res = std::max({odd_res, horiz(val).norm(), std::abs(dn.dot(im_k()))});
            even_res = std::max({even_res, std::abs(val.dot(im_k())), horiz(dn).norm()});

            // subtract the fitted left translation and re-test oddness
            ImVector corr[3];
            for (int o = 0; o < 3; ++o)
                corr[o] = bar[patch.index(i, j + std::size_t(frames[c].dir * o))] -
                          (cc.fitted.norm() > 0
                               ? lbar_at(i, j + std::size_t(frames[c].dir * o))
                               : ImVector{0, 0, 0});
            auto corr_at = [&](int o) { return corr[o]; };
            const ImVector dnc =
                fd_d1_onesided2(corr_at, patch.dtheta()) * (1.0 / patch.node(i, j).r);
            almost_odd_res =
                std::max({almost_odd_res, horiz(corr[0]).norm(), std::abs(dnc.dot(im_k()))});

            // form omega = 2 df x W-bar - d W-bar o J along the curve
            const std::size_t q = patch.station_of_node(i);
            const ImVector df_t = patch.df_dt(q, patch.theta[j]);
            const ImVector df_th = patch.df_dtheta(q, patch.theta[j]);
            auto bar_t = [&](int o) { return bar[patch.index(i + o, j)]; };
            auto bar_n = [&](int o) {
                return bar[patch.index(i, j + std::size_t(frames[c].dir * o))];
            };
            const ImVector db_t = fd_d1_c2(bar_t, dt);
            const ImVector db_th =
                fd_d1_onesided2(bar_n, patch.dtheta()) * double(frames[c].dir);
            const ImVector omega_t = 2.0 * df_t.cross(val) - db_th;
            const ImVector omega_th = 2.0 * df_th.cross(val) + db_t;
            omega_res = std::max({omega_res, std::abs(omega_t.dot(im_k())),
                                  horiz(omega_th).norm()});
        }
        cc.odd_residual = odd_res / scale;
        cc.even_residual = even_res / scale;
        cc.almost_odd_residual = almost_odd_res / scale;
        cc.almost_even_residual = HUGE_VAL;
        cc.omega_residual = omega_res / scale;

        if (cc.odd_residual <= threshold)
            cc.verdict = BoundaryVerdict::Odd;
        else if (cc.even_residual <= threshold)
            cc.verdict = BoundaryVerdict::Even;
        else if (cc.almost_odd_residual <= threshold)
            cc.verdict = BoundaryVerdict::AlmostOdd;
        else
            cc.verdict = BoundaryVerdict::None;
    }
    return out;
}

std::pair<VecField, VecField> even_odd_decompose(const VecField& V, const UnduloidPatch& patch) {
    if (!patch.theta_wraps)
        throw std::invalid_argument("even_odd_decompose: needs a sigma-symmetric full patch");
    if (V.size() != patch.nodes.size())
        throw std::invalid_argument("even_odd_decompose: field size mismatch");
    const std::size_t ntheta = patch.ntheta();
    VecField even(V.size()), odd(V.size());
    for (std::size_t i = 0; i < patch.nt(); ++i)
        for (std::size_t j = 0; j < ntheta; ++j) {
            const ImVector a = V[patch.index(i, j)];
            const ImVector m = V[patch.index(i, (ntheta - j) % ntheta)];
            const ImVector sm{m.x, m.y, -m.z};  // sigma V(sigma p)
            even[patch.index(i, j)] = (a + sm) * 0.5;
            odd[patch.index(i, j)] = (a - sm) * 0.5;
        }
    return {even, odd};
}

}  // namespace cmclab
