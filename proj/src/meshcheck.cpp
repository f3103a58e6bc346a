#include "cmclab/meshcheck.hpp"

#include <array>
#include <cmath>
#include <functional>

#include "cmclab/stencil.hpp"

namespace cmclab {

namespace {

using A4 = std::array<double, 4>;

A4 sub(const A4& a, const A4& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]}; }
double dot(const A4& a, const A4& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

// Cotangent mean-curvature estimator over the structured grid, generic
// in the ambient dimension.  position/normal are node accessors.
MeanCurvatureStats cotan_mean_curvature(std::size_t nt, std::size_t ntheta, bool wraps,
                                        const std::function<A4(std::size_t)>& position,
                                        const std::function<A4(std::size_t)>& normal,
                                        double target) {
    const auto idx = [&](std::size_t i, std::size_t j) { return i * ntheta + j; };
    std::vector<A4> lap(nt * ntheta, A4{0, 0, 0, 0});
    std::vector<double> area(nt * ntheta, 0.0);

    auto add_triangle = [&](std::size_t a, std::size_t b, std::size_t c) {
        const A4 pa = position(a), pb = position(b), pc = position(c);
        const std::size_t v[3] = {a, b, c};
        const A4 p[3] = {pa, pb, pc};
        // triangle area from the Gram determinant
        const A4 e1 = sub(p[1], p[0]), e2 = sub(p[2], p[0]);
        const double gram = dot(e1, e1) * dot(e2, e2) - dot(e1, e2) * dot(e1, e2);
        const double tri_area = 0.5 * std::sqrt(std::max(gram, 0.0));
        for (int k = 0; k < 3; ++k) area[v[k]] += tri_area / 3.0;
        // cotangent weight at each corner for the opposite edge
        for (int k = 0; k < 3; ++k) {
            const int r = k;
            const int pi = (k + 1) % 3, qi = (k + 2) % 3;
            const A4 u = sub(p[pi], p[r]), w = sub(p[qi], p[r]);
            const double cr = dot(u, u) * dot(w, w) - dot(u, w) * dot(u, w);
            const double cot = dot(u, w) / std::sqrt(std::max(cr, 1e-300));
            const A4 diff = sub(p[qi], p[pi]);
            for (int d = 0; d < 4; ++d) {
                lap[v[pi]][d] += 0.5 * cot * diff[d];
                lap[v[qi]][d] -= 0.5 * cot * diff[d];
            }
        }
    };

    const std::size_t jmax = wraps ? ntheta : ntheta - 1;
    for (std::size_t i = 0; i + 1 < nt; ++i)
        for (std::size_t j = 0; j < jmax; ++j) {
            const std::size_t jn = (j + 1) % ntheta;
            add_triangle(idx(i, j), idx(i + 1, j), idx(i + 1, jn));
            add_triangle(idx(i, j), idx(i + 1, jn), idx(i, jn));
        }

    MeanCurvatureStats stats;
    double sum = 0;
    for (std::size_t i = 1; i + 1 < nt; ++i) {
        const std::size_t jlo = wraps ? 0 : 1;
        const std::size_t jhi = wraps ? ntheta : ntheta - 1;
        for (std::size_t j = jlo; j < jhi; ++j) {
            const std::size_t v = idx(i, j);
            A4 L = lap[v];
            for (int d = 0; d < 4; ++d) L[d] /= area[v];
            const double H = 0.5 * dot(L, normal(v));
            stats.max_abs_error = std::max(stats.max_abs_error, std::abs(H - target));
            sum += H;
            ++stats.count;
        }
    }
    if (stats.count) stats.mean = sum / double(stats.count);
    return stats;
}

}  // namespace

MeanCurvatureStats discrete_mean_curvature(const UnduloidPatch& patch, double target) {
    auto pos = [&](std::size_t v) -> A4 {
        const ImVector& f = patch.nodes[v].f;
        return {f.x, f.y, f.z, 0.0};
    };
    auto nor = [&](std::size_t v) -> A4 {
        const ImVector& nu = patch.nodes[v].nu;
        return {nu.x, nu.y, nu.z, 0.0};
    };
    return cotan_mean_curvature(patch.nt(), patch.ntheta(), patch.theta_wraps, pos, nor, target);
}

MeanCurvatureStats discrete_mean_curvature_s3(const UnduloidPatch& patch,
                                              const std::vector<UnitQuaternion>& position,
                                              const std::vector<Quaternion>& normal) {
    auto pos = [&](std::size_t v) -> A4 {
        const Quaternion& q = position[v].q;
        return {q.w, q.x, q.y, q.z};
    };
    auto nor = [&](std::size_t v) -> A4 {
        const Quaternion& q = normal[v];
        return {q.w, q.x, q.y, q.z};
    };
    // <f, nu> = 0, so the -2f term of Delta f = 2H nu - 2f drops out.
    return cotan_mean_curvature(patch.nt(), patch.ntheta(), patch.theta_wraps, pos, nor, 0.0);
}

double conformality_defect(const UnduloidPatch& patch) {
    const std::size_t nt = patch.nt(), ntheta = patch.ntheta();
    const double dt = patch.dt(), dth = patch.dtheta();
    double worst = 0;
    for (std::size_t i = 2; i + 2 < nt; ++i) {
        const std::size_t jlo = patch.theta_wraps ? 0 : 2;
        const std::size_t jhi = patch.theta_wraps ? ntheta : ntheta - 2;
        for (std::size_t j = jlo; j < jhi; ++j) {
            auto f_t = fd_d1_c4(
                [&](int o) { return patch.node(i + o, j).f; }, dt);
            auto f_th = fd_d1_c4(
                [&](int o) { return patch.node(i, (j + ntheta + o) % ntheta).f; }, dth);
            const double r = patch.node(i, j).r;
            worst = std::max(worst, std::abs(f_t.norm() - r) / r);
            worst = std::max(worst, std::abs(f_th.norm() - r) / r);
            worst = std::max(worst, std::abs(f_t.dot(f_th)) / (r * r));
        }
    }
    return worst;
}

double jacobi_residual(const UnduloidPatch& patch, const std::vector<double>& u, int order) {
    if (u.size() != patch.nodes.size())
        throw std::invalid_argument("jacobi_residual: field size mismatch");
    const std::size_t nt = patch.nt(), ntheta = patch.ntheta();
    const double dt = patch.dt(), dth = patch.dtheta();
    const std::size_t margin = (order >= 4) ? 2 : 1;
    double worst = 0;
    for (std::size_t i = margin; i + margin < nt; ++i) {
        const std::size_t jlo = patch.theta_wraps ? 0 : margin;
        const std::size_t jhi = patch.theta_wraps ? ntheta : ntheta - margin;
        for (std::size_t j = jlo; j < jhi; ++j) {
            auto ut = [&](int o) { return u[patch.index(i + o, j)]; };
            auto uth = [&](int o) { return u[patch.index(i, (j + ntheta + o) % ntheta)]; };
            const double u_tt = (order >= 4) ? fd_d2_c4(ut, dt) : fd_d2_c2(ut, dt);
            const double u_thth = (order >= 4) ? fd_d2_c4(uth, dth) : fd_d2_c2(uth, dth);
            const PatchNode& nd = patch.node(i, j);
            const double L = (u_tt + u_thth) / (nd.r * nd.r) + nd.normA2 * u[patch.index(i, j)];
            worst = std::max(worst, std::abs(L));
        }
    }
    return worst;
}

}  // namespace cmclab
