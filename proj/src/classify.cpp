#include "cmclab/classify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "cmclab/errors.hpp"

namespace cmclab {

namespace {

constexpr double kPi = std::numbers::pi;

UnduloidPatch build_half_patch(const NecksizeParams& params, const ClassifyConfig& cfg,
                               double& t_range_out) {
    DelaunayProfile prof = solve_profile(params, cfg.tol, 32);
    if (prof.has_period) prof = conformal_reparam(prof);
    t_range_out = half_width_for_periods(prof, cfg.t_range_periods);
    return immerse(prof, true, t_range_out, cfg.nt, cfg.ntheta);
}

KPointTuple tuple_from_report(const CousinReport& rep) {
    KPointTuple tuple;
    tuple.v = {rep.hopf_image[0], rep.hopf_image[1]};
    tuple.spread = {rep.boundary_spread[0], rep.boundary_spread[1]};
    return tuple;
}

// Best rotation mapping the points a_i onto b_i (Kabsch).
UnitQuaternion procrustes(const std::vector<ImVector>& a, const std::vector<ImVector>& b) {
    Eigen::Matrix3d C = Eigen::Matrix3d::Zero();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Eigen::Vector3d va(a[i].x, a[i].y, a[i].z);
        const Eigen::Vector3d vb(b[i].x, b[i].y, b[i].z);
        C += vb * va.transpose();
    }
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(C, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::Matrix3d R = svd.matrixU() * svd.matrixV().transpose();
    if (R.determinant() < 0) {
        Eigen::Matrix3d D = Eigen::Matrix3d::Identity();
        D(2, 2) = -1;
        R = svd.matrixU() * D * svd.matrixV().transpose();
    }
    // rotation matrix -> unit quaternion
    Eigen::Quaterniond q(R);
    return UnitQuaternion(Quaternion{q.w(), q.x(), q.y(), q.z()});
}

}  // namespace

double KPointTuple::distance(std::size_t i) const {
    const std::size_t prev = (i + v.size() - 1) % v.size();
    return geodesic_distance_s2(v[prev], v[i]);
}

void KPointTuple::validate(double tol) const {
    if (v.size() < 2) throw std::invalid_argument("KPointTuple: need k >= 2 points");
    for (std::size_t i = 0; i < v.size(); ++i)
        if (distance(i) <= tol)
            throw std::invalid_argument("KPointTuple: consecutive points coincide");
    if (v.size() >= 4 && v.size() % 2 == 0) {
        bool alternating = true;
        for (std::size_t i = 0; i + 2 < v.size() && alternating; ++i)
            if (geodesic_distance_s2(v[i], v[i + 2]) > tol) alternating = false;
        if (alternating)
            throw std::invalid_argument("KPointTuple: alternating two-point tuples are excluded");
    }
}

double TangentTuple::max_delta() const {
    double m = 0;
    for (const auto& d : delta) m = std::max(m, d.norm());
    return m;
}

double TangentTuple::distance_rate(std::size_t i) const {
    const std::size_t prev = (i + base.size() - 1) % base.size();
    const double d = geodesic_distance_s2(base[prev], base[i]);
    const double s = std::sin(d);
    // d/de arccos<v_p, v_i> under v -> v + e delta
    return -(delta[prev].dot(base[i]) + delta[i].dot(base[prev])) / s;
}

TangentTuple project_so3(const TangentTuple& tuple) {
    // Remove the least-squares infinitesimal rotation: delta_i minus
    // rho_u(v_i) = -2 u x v_i over u.
    Eigen::MatrixXd A(3 * tuple.base.size(), 3);
    Eigen::VectorXd b(3 * tuple.base.size());
    for (std::size_t i = 0; i < tuple.base.size(); ++i) {
        const ImVector& v = tuple.base[i];
        // rho_u(v) = -2 u x v = 2 v x u: matrix 2 [v]_x
        const double vx[3][3] = {{0, -v.z, v.y}, {v.z, 0, -v.x}, {-v.y, v.x, 0}};
        for (int r = 0; r < 3; ++r)
            for (int cc = 0; cc < 3; ++cc) A(3 * i + r, cc) = 2.0 * vx[r][cc];
        b(3 * i + 0) = tuple.delta[i].x;
        b(3 * i + 1) = tuple.delta[i].y;
        b(3 * i + 2) = tuple.delta[i].z;
    }
    const Eigen::Vector3d u = A.colPivHouseholderQr().solve(b);
    TangentTuple out = tuple;
    const ImVector uu{u(0), u(1), u(2)};
    for (std::size_t i = 0; i < out.base.size(); ++i) {
        out.delta[i] = out.delta[i] - 2.0 * out.base[i].cross(uu);
        // keep tangency
        out.delta[i] = out.delta[i] - out.base[i] * out.delta[i].dot(out.base[i]);
    }
    return out;
}

ClassifyResult classify_unduloid(const NecksizeParams& params, const ClassifyConfig& cfg) {
    ClassifyResult res;
    UnduloidPatch patch = build_half_patch(params, cfg, res.t_range);
    CousinPatch cousin = integrate_cousin(patch, cfg.holonomy_tol, cfg.substeps);
    res.report = verify_cousin(cousin, patch);
    if (std::max(res.report.boundary_spread[0], res.report.boundary_spread[1]) > cfg.spread_tol)
        throw numerical_error("classify_unduloid: boundary Hopf spread exceeds tolerance");
    res.tuple = tuple_from_report(res.report);
    res.tuple.validate();
    res.distance = res.report.hopf_distance;
    return res;
}

namespace {

// classify after applying a rigid motion to the patch
KPointTuple classify_transformed(const NecksizeParams& params, const ClassifyConfig& cfg,
                                 const UnitQuaternion& rot, const ImVector& shift,
                                 double& dist_out) {
    double t_range;
    UnduloidPatch patch = build_half_patch(params, cfg, t_range);
    patch = apply_isometry(patch, rot, shift);
    CousinPatch cousin = integrate_cousin(patch, cfg.holonomy_tol, cfg.substeps);
    CousinReport rep = verify_cousin(cousin, patch);
    dist_out = rep.hopf_distance;
    return tuple_from_report(rep);
}

}  // namespace

TangentTuple dphi_fd(const NecksizeParams& params, FamilyKind family, double h,
                     const ClassifyConfig& cfg) {
    if (!(h > 0)) throw std::invalid_argument("dphi_fd: h must be positive");
    KPointTuple plus, minus;
    double dplus = 0, dminus = 0;

    switch (family) {
        case FamilyKind::Necksize: {
            if (params.n + h >= kPi || params.n - h <= 0)
                throw std::invalid_argument("dphi_fd: necksize step leaves (0, pi)");
            ClassifyResult rp = classify_unduloid(NecksizeParams(params.n + h), cfg);
            ClassifyResult rm = classify_unduloid(NecksizeParams(params.n - h), cfg);
            plus = rp.tuple;
            minus = rm.tuple;
            break;
        }
        case FamilyKind::TranslationI:
        case FamilyKind::TranslationJ: {
            const ImVector u = (family == FamilyKind::TranslationI) ? im_i() : im_j();
            plus = classify_transformed(params, cfg, UnitQuaternion::one(), u * h, dplus);
            minus = classify_transformed(params, cfg, UnitQuaternion::one(), u * (-h), dminus);
            break;
        }
        case FamilyKind::RotationK: {
            // p -> e^{-e k} p e^{e k}: velocity rho_k
            plus = classify_transformed(params, cfg, UnitQuaternion::exp(im_k() * (-h)),
                                        {0, 0, 0}, dplus);
            minus = classify_transformed(params, cfg, UnitQuaternion::exp(im_k() * h),
                                         {0, 0, 0}, dminus);
            break;
        }
    }

    // Rotation-align the +h tuple onto the -h tuple before differencing.
    UnitQuaternion R = procrustes(plus.v, minus.v);
    TangentTuple raw;
    raw.base.resize(plus.v.size());
    raw.delta.resize(plus.v.size());
    for (std::size_t i = 0; i < plus.v.size(); ++i) {
        const ImVector vp = R.rotate(plus.v[i]);
        raw.base[i] = (vp + minus.v[i]).normalized();
        raw.delta[i] = (vp - minus.v[i]) / (2.0 * h);
        raw.delta[i] = raw.delta[i] - raw.base[i] * raw.delta[i].dot(raw.base[i]);
    }
    return project_so3(raw);
}

QuatField eta_cousin_fd(const NecksizeParams& params, const UnduloidPatch& patch,
                        const ClassifyConfig& cfg, double h) {
    if (params.is_cylinder())
        throw std::invalid_argument("eta_cousin_fd: cylinder necksize family is one-sided");
    const double t_range = patch.t.back();

    auto cousin_at = [&](double n) {
        DelaunayProfile prof = conformal_reparam(solve_profile(NecksizeParams(n), cfg.tol, 32));
        UnduloidPatch p = immerse(prof, true, t_range, patch.nt(), patch.ntheta());
        return integrate_cousin(p, cfg.holonomy_tol, cfg.substeps);
    };
    CousinPatch cp = cousin_at(params.n + h);
    CousinPatch cm = cousin_at(params.n - h);

    QuatField field(patch.nodes.size());
    for (std::size_t idx = 0; idx < field.size(); ++idx)
        field[idx] = (cp.f[idx].q - cm.f[idx].q) / (2.0 * h);
    return field;
}

TangentTuple dphi_almost_odd(const QuatField& cousin_jacobi, const UnduloidPatch& patch,
                             const CousinPatch& cousin, double threshold) {
    BoundaryClassification cls =
        classify_boundary_mtilde(cousin_jacobi, patch, cousin, threshold);
    TangentTuple raw;
    for (int c = 0; c < 2; ++c) {
        const CurveClassification& cc = cls.curve[c];
        if (cc.verdict != BoundaryVerdict::AlmostOdd && cc.verdict != BoundaryVerdict::Odd)
            throw numerical_error(
                std::string("dphi_almost_odd: cousin field is not almost odd (verdict ") +
                verdict_name(cc.verdict) + ")");
        raw.base.push_back(cc.hopf_image);
        // -rho_w at v: 2 w x v
        raw.delta.push_back(2.0 * cc.fitted.cross(cc.hopf_image));
    }
    return project_so3(raw);
}

AsymptoteFit dA_fit(const std::vector<double>& normal_field, const UnduloidPatch& patch,
                    const NecksizeParams& params, double window_periods, double eta_step) {
    if (normal_field.size() != patch.nodes.size())
        throw std::invalid_argument("dA_fit: field size mismatch");
    if (!patch.has_period)
        throw std::invalid_argument("dA_fit: asymptote fit needs a periodic profile");

    AsymptoteFit fit;
    fit.window_periods = window_periods;
    const double window = window_periods * patch.conformal_period;
    const double t_max = patch.t.back();
    if (window > t_max)
        throw std::invalid_argument("dA_fit: window longer than the sampled range");

    // Basis normal parts on the whole patch.
    std::vector<std::vector<double>> basis;
    basis.push_back(necksize_change_field(params, patch, eta_step).normal);
    basis.push_back(normal_part(patch, killing_on_patch(patch, KillingField::translation(im_i()))));
    basis.push_back(normal_part(patch, killing_on_patch(patch, KillingField::translation(im_j()))));
    basis.push_back(normal_part(patch, killing_on_patch(patch, KillingField::rotation(im_k()))));

    double scale = 1e-300;
    for (double u : normal_field) scale = std::max(scale, std::abs(u));

    for (int end = 0; end < 2; ++end) {
        std::vector<std::size_t> sel;
        for (std::size_t i = 0; i < patch.nt(); ++i) {
            const bool in_window = (end == 0) ? (patch.t[i] <= -(t_max - window))
                                              : (patch.t[i] >= t_max - window);
            if (!in_window) continue;
            for (std::size_t j = 0; j < patch.ntheta(); ++j) sel.push_back(patch.index(i, j));
        }
        Eigen::MatrixXd A(sel.size(), 4);
        Eigen::VectorXd b(sel.size());
        for (std::size_t r = 0; r < sel.size(); ++r) {
            for (int cc = 0; cc < 4; ++cc) A(r, cc) = basis[cc][sel[r]];
            b(r) = normal_field[sel[r]];
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const double cond = svd.singularValues()(0) / svd.singularValues()(3);
        if (!(cond < 1e8))
            throw numerical_error("dA_fit: deficiency basis Gram matrix is ill-conditioned");
        const Eigen::Vector4d x = svd.solve(b);
        EndFit& ef = fit.end[end];
        ef.eta = x(0);
        ef.tau_i = x(1);
        ef.tau_j = x(2);
        ef.rho_k = x(3);
        ef.gram_condition = cond;
        ef.residual = (A * x - b).norm() / std::sqrt(double(sel.size())) / scale;
    }
    return fit;
}

RateComparison compare_dphi_da(const NecksizeParams& params, FamilyKind family, double h,
                               const ClassifyConfig& cfg) {
    RateComparison rc;
    rc.family = family;

    // dPhi route: rate of change of the gauge-invariant distance.
    if (family == FamilyKind::Necksize) {
        ClassifyResult rp = classify_unduloid(NecksizeParams(params.n + h), cfg);
        ClassifyResult rm = classify_unduloid(NecksizeParams(params.n - h), cfg);
        rc.rate_dphi = (rp.distance - rm.distance) / (2.0 * h);
    } else {
        double dp = 0, dm = 0;
        switch (family) {
            case FamilyKind::TranslationI:
                classify_transformed(params, cfg, UnitQuaternion::one(), im_i() * h, dp);
                classify_transformed(params, cfg, UnitQuaternion::one(), im_i() * (-h), dm);
                break;
            case FamilyKind::TranslationJ:
                classify_transformed(params, cfg, UnitQuaternion::one(), im_j() * h, dp);
                classify_transformed(params, cfg, UnitQuaternion::one(), im_j() * (-h), dm);
                break;
            default:
                classify_transformed(params, cfg, UnitQuaternion::exp(im_k() * (-h)), {0, 0, 0},
                                     dp);
                classify_transformed(params, cfg, UnitQuaternion::exp(im_k() * h), {0, 0, 0}, dm);
                break;
        }
        rc.rate_dphi = (dp - dm) / (2.0 * h);
    }

    // dA route: eta coefficient of the family's variation field fitted
    // against the end basis.
    double t_range;
    UnduloidPatch patch = build_half_patch(params, cfg, t_range);
    VecField variation(patch.nodes.size());
    switch (family) {
        case FamilyKind::Necksize: {
            NecksizeChangeField eta = necksize_change_field(params, patch, h);
            variation = eta.eta;
            break;
        }
        case FamilyKind::TranslationI:
            variation = killing_on_patch(patch, KillingField::translation(im_i()));
            break;
        case FamilyKind::TranslationJ:
            variation = killing_on_patch(patch, KillingField::translation(im_j()));
            break;
        case FamilyKind::RotationK:
            variation = killing_on_patch(patch, KillingField::rotation(im_k()));
            break;
    }
    rc.fit = dA_fit(normal_part(patch, variation), patch, params);
    rc.rate_da = 0.5 * (rc.fit.end[0].eta + rc.fit.end[1].eta);
    rc.difference = std::abs(rc.rate_dphi - rc.rate_da);
    return rc;
}

}  // namespace cmclab
