#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cmclab/delaunay.hpp"
#include "cmclab/meshcheck.hpp"
#include "cmclab/patch.hpp"

using namespace cmclab;

namespace {
constexpr double kPi = std::numbers::pi;

// Simpson quadrature of 1/r over one arclength period, as an
// independent check of the conformal period.
double quadrature_period_t(const NecksizeParams& params, double tol) {
    DelaunayProfile prof = solve_profile(params, tol, 4096);
    double acc = 0;
    for (std::size_t i = 0; i + 2 < prof.samples.size(); i += 2) {
        const double h = prof.samples[i + 1].s - prof.samples[i].s;
        acc += h / 3.0 *
               (1.0 / prof.samples[i].r + 4.0 / prof.samples[i + 1].r +
                1.0 / prof.samples[i + 2].r);
    }
    return acc;
}

}  // namespace

TEST_CASE("necksize parameters") {
    NecksizeParams p(kPi / 2);
    CHECK(p.a == doctest::Approx(0.25));
    CHECK(p.b == doctest::Approx(0.75));
    CHECK(p.c == doctest::Approx(3.0 / 16.0));
    CHECK(p.a + p.b == doctest::Approx(1.0));
    CHECK_FALSE(p.is_cylinder());
    CHECK(NecksizeParams(kPi).is_cylinder());
    CHECK_THROWS_AS(NecksizeParams(0.0), std::invalid_argument);
    CHECK_THROWS_AS(NecksizeParams(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(NecksizeParams(3.5), std::invalid_argument);
}

TEST_CASE("cylinder profile") {
    DelaunayProfile prof = solve_profile(NecksizeParams(kPi), 1e-10, 64);
    CHECK_FALSE(prof.has_period);
    for (const auto& smp : prof.samples) {
        CHECK(smp.r == doctest::Approx(0.5));
        CHECK(smp.psi == 0.0);
    }
    CHECK(NecksizeParams(kPi).c == doctest::Approx(0.25));
}

TEST_CASE("profile honours the conserved quantity and the neck radius") {
    for (double n : {0.3, 0.9, kPi / 2, 2.4}) {
        NecksizeParams params(n);
        DelaunayProfile prof = solve_profile(params, 1e-10, 256);
        REQUIRE(prof.has_period);
        double rmin = 1, rmax = 0, worst = 0;
        for (const auto& smp : prof.samples) {
            rmin = std::min(rmin, smp.r);
            rmax = std::max(rmax, smp.r);
            worst = std::max(worst, smp.residual);
        }
        // min/max of r are the roots a, b of r - r^2 = c
        CHECK(std::abs(rmin - params.a) < 1e-9);
        CHECK(std::abs(rmax - params.b) < 1e-9);
        CHECK(worst <= 1e-9);

        // periodicity: the last sample returns to the neck
        const auto& last = prof.samples.back();
        CHECK(std::abs(last.r - params.a) < 1e-8);
        CHECK(std::abs(last.psi) < 1e-7);

        // the arclength period of every H = 1 unduloid is pi: with
        // u = r^2, the period integral du / sqrt((u - a^2)(b^2 - u))
        // evaluates to pi independent of c
        CHECK(prof.period_s == doctest::Approx(kPi).epsilon(1e-10));
    }
}

TEST_CASE("conformal reparametrization") {
    SUBCASE("cylinder: t = 2s") {
        DelaunayProfile prof = conformal_reparam(solve_profile(NecksizeParams(kPi), 1e-10, 32));
        for (const auto& smp : prof.samples) CHECK(smp.t == doctest::Approx(2.0 * smp.s));
    }
    SUBCASE("quadrature oracle at n = pi/2") {
        NecksizeParams params(kPi / 2);
        DelaunayProfile prof = conformal_reparam(solve_profile(params, 1e-12, 64));
        const double independent = quadrature_period_t(params, 1e-12);
        CHECK(std::abs(prof.period_t - independent) < 1e-7);
    }
}

TEST_CASE("profile evaluation in the conformal parameter matches the arclength run") {
    NecksizeParams params(1.1);
    DelaunayProfile prof = conformal_reparam(solve_profile(params, 1e-12, 128));
    std::vector<double> ts;
    for (const auto& smp : prof.samples) ts.push_back(smp.t);
    std::vector<ProfilePoint> pts = eval_profile_t(params, ts, 1e-12);
    for (std::size_t i = 0; i < ts.size(); ++i) {
        CHECK(std::abs(pts[i].r - prof.samples[i].r) < 1e-9);
        CHECK(std::abs(pts[i].x - prof.samples[i].x) < 1e-9);
        CHECK(std::abs(pts[i].psi - prof.samples[i].psi) < 1e-9);
    }

    // mirrored stations: r even, x and psi odd
    std::vector<ProfilePoint> neg = eval_profile_t(params, {-ts[5], ts[5]}, 1e-12);
    CHECK(neg[0].r == doctest::Approx(neg[1].r));
    CHECK(neg[0].x == doctest::Approx(-neg[1].x));
    CHECK(neg[0].psi == doctest::Approx(-neg[1].psi));
}

TEST_CASE("immersion geometry") {
    NecksizeParams params(kPi / 2);
    DelaunayProfile prof = conformal_reparam(solve_profile(params, 1e-10, 64));
    UnduloidPatch patch = immerse(prof, false, 1.5 * prof.period_t, 160, 64);

    SUBCASE("conformality under fourth-order differences") {
        const double coarse = conformality_defect(patch);
        CHECK(coarse < 1e-4);
        UnduloidPatch fine = immerse(prof, false, 1.5 * prof.period_t, 320, 128);
        CHECK(conformality_defect(fine) < coarse / 8.0);
    }
    SUBCASE("metric in (t, theta) equals r^2 (dt^2 + dtheta^2)") {
        // spot check |f_t| = |f_theta| = r via the stored stations
        for (std::size_t i : {std::size_t(3), std::size_t(80), std::size_t(120)}) {
            const std::size_t q = patch.station_of_node(i);
            const double r = patch.node(i, 7).r;
            CHECK(patch.df_dt(q, patch.theta[7]).norm() == doctest::Approx(r).epsilon(1e-12));
            CHECK(patch.df_dtheta(q, patch.theta[7]).norm() ==
                  doctest::Approx(r).epsilon(1e-12));
            CHECK(std::abs(patch.df_dt(q, patch.theta[7]).dot(patch.df_dtheta(q, patch.theta[7]))) <
                  1e-14);
        }
    }
    SUBCASE("frame convention: e_t x e_theta is the inward normal") {
        for (std::size_t i : {std::size_t(10), std::size_t(100)}) {
            const std::size_t q = patch.station_of_node(i);
            const PatchNode& nd = patch.node(i, 5);
            const ImVector e1 = patch.df_dt(q, patch.theta[5]) / nd.r;
            const ImVector e2 = patch.df_dtheta(q, patch.theta[5]) / nd.r;
            CHECK((e1.cross(e2) - nd.nu).norm() < 1e-12);
        }
    }
}

TEST_CASE("cylinder patch: |A|^2 = 4 and distance 1/2 from the axis") {
    DelaunayProfile prof = solve_profile(NecksizeParams(kPi), 1e-10, 32);
    UnduloidPatch patch = immerse(prof, false, 6.0, 64, 32);
    for (const auto& nd : patch.nodes) {
        CHECK(nd.normA2 == doctest::Approx(4.0));
        CHECK(std::hypot(nd.f.y, nd.f.z) == doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("half patch boundaries lie in the i j-plane with downward normal inside") {
    NecksizeParams params(1.8);
    DelaunayProfile prof = conformal_reparam(solve_profile(params, 1e-10, 64));
    UnduloidPatch patch = immerse(prof, true, prof.period_t, 80, 33);
    for (std::size_t i = 0; i < patch.nt(); ++i) {
        CHECK(patch.node(i, 0).f.z == 0.0);
        CHECK(patch.node(i, patch.ntheta() - 1).f.z == doctest::Approx(0.0).epsilon(1e-12));
        for (std::size_t j = 1; j + 1 < patch.ntheta(); ++j)
            CHECK(patch.node(i, j).nu.dot(im_k()) < 0.0);
    }
}

TEST_CASE("discrete mean curvature of the mesh approaches 1") {
    NecksizeParams params(1.5);
    DelaunayProfile prof = conformal_reparam(solve_profile(params, 1e-10, 64));
    const double window = 1.5 * prof.period_t;
    UnduloidPatch coarse = immerse(prof, false, window, 100, 50);
    UnduloidPatch fine = immerse(prof, false, window, 200, 100);
    const double e_coarse = discrete_mean_curvature(coarse, 1.0).max_abs_error;
    const double e_fine = discrete_mean_curvature(fine, 1.0).max_abs_error;
    CHECK(e_fine < 5e-3);
    CHECK(e_fine < e_coarse);
}

TEST_CASE("necksize change field") {
    NecksizeParams params(1.5);
    DelaunayProfile prof = conformal_reparam(solve_profile(params, 1e-10, 64));
    UnduloidPatch patch = immerse(prof, false, 1.5 * prof.period_t, 200, 100);
    NecksizeChangeField eta = necksize_change_field(params, patch, 1e-4);
    CHECK_FALSE(eta.one_sided);

    SUBCASE("normal part solves the discrete Jacobi equation") {
        // one-period window, unit sup norm
        UnduloidPatch narrow = immerse(prof, false, 0.5 * prof.period_t, 200, 100);
        NecksizeChangeField en = necksize_change_field(params, narrow, 1e-4);
        double scale = 0;
        for (double u : en.normal) scale = std::max(scale, std::abs(u));
        std::vector<double> unit(en.normal);
        for (double& u : unit) u /= scale;
        CHECK(jacobi_residual(narrow, unit, 4) < 1e-4);
    }
    SUBCASE("at most linear growth along the sampled range") {
        // sup over |t| <= T grows no faster than ~T: compare window halves
        double inner = 0, outer = 0;
        for (std::size_t i = 0; i < patch.nt(); ++i)
            for (std::size_t j = 0; j < patch.ntheta(); ++j) {
                const double v = eta.eta[patch.index(i, j)].norm();
                if (std::abs(patch.t[i]) < patch.t.back() / 2)
                    inner = std::max(inner, v);
                else
                    outer = std::max(outer, v);
            }
        CHECK(outer < 4.0 * std::max(inner, 1.0));
    }
    SUBCASE("cylinder is one-sided and flagged") {
        DelaunayProfile cyl = solve_profile(NecksizeParams(kPi), 1e-10, 32);
        UnduloidPatch cp = immerse(cyl, false, 6.0, 100, 50);
        NecksizeChangeField ec = necksize_change_field(NecksizeParams(kPi), cp, 1e-4);
        CHECK(ec.one_sided);
    }
    SUBCASE("h too large is rejected near the ends of (0, pi)") {
        CHECK_THROWS_AS(necksize_change_field(NecksizeParams(3.1), patch, 0.2),
                        std::invalid_argument);
    }
}
