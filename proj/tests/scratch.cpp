// temporary measurement harness (not registered with ctest)
#include <chrono>
#include <cstdio>
#include <numbers>

#include "cmclab/classify.hpp"
#include "cmclab/cousin.hpp"
#include "cmclab/delaunay.hpp"
#include "cmclab/jacobi_modes.hpp"
#include "cmclab/meshcheck.hpp"
#include "cmclab/patch.hpp"

using namespace cmclab;
using clk = std::chrono::steady_clock;

double ms(clk::time_point a, clk::time_point b) {
    return std::chrono::duration<double, std::milli>(b - a).count();
}

int main() {
    constexpr double kPi = std::numbers::pi;

    std::printf("== criterion 1: mesh H at 200x100, 3 periods total ==\n");
    for (double n : {0.3, 0.9, 1.5, 2.1, 2.7, kPi}) {
        DelaunayProfile prof = solve_profile(NecksizeParams(n), 1e-10, 64);
        if (prof.has_period) prof = conformal_reparam(prof);
        UnduloidPatch patch = immerse(prof, false, half_width_for_periods(prof, 3.0), 200, 100);
        MeanCurvatureStats mc = discrete_mean_curvature(patch, 1.0);
        std::printf("n=%.2f  |H-1|max=%.3e  mean=%.6f\n", n, mc.max_abs_error, mc.mean);
    }

    std::printf("\n== criterion 2/4: cousin at 400x100, 3 periods total ==\n");
    for (double n : {0.3, 0.9, 1.5, 2.1, 2.7}) {
        NecksizeParams params(n);
        DelaunayProfile prof = conformal_reparam(solve_profile(params, 1e-10, 64));
        UnduloidPatch patch = immerse(prof, true, half_width_for_periods(prof, 3.0), 400, 100);
        auto t0 = clk::now();
        CousinPatch cousin = integrate_cousin(patch, 1e-3);
        CousinReport rep = verify_cousin(cousin, patch);
        CousinFieldResult rk = cousin_field(KillingField::rotation(im_k()), patch, cousin, 1.0);
        QuatField li(cousin.f.size());
        for (std::size_t idx = 0; idx < li.size(); ++idx)
            li[idx] = im_i().quat() * cousin.f[idx].q;
        const double eq5 = transplant_identity_residual(li, patch, cousin);
        const double eq6 = check_eq6(cousin, patch, im_i());
        auto t1 = clk::now();
        std::printf(
            "n=%.1f holo=%.2e iso=%.2e spread=%.2e derr=%.2e | L3.3=%.2e eq5=%.2e eq6=%.2e "
            "(%.0f ms)\n",
            n, cousin.max_holonomy, rep.isometry_defect,
            std::max(rep.boundary_spread[0], rep.boundary_spread[1]),
            std::abs(rep.hopf_distance - n), rk.discrepancy, eq5, eq6, ms(t0, t1));
    }

    std::printf("\n== criterion 4: eq6 convergence order ==\n");
    {
        NecksizeParams params(1.5);
        DelaunayProfile prof = conformal_reparam(solve_profile(params, 1e-10, 64));
        double prev = 0;
        for (int s = 1; s <= 4; ++s) {
            const std::size_t nt = 100 * s, nth = 25 * s;
            UnduloidPatch patch =
                immerse(prof, true, half_width_for_periods(prof, 3.0), nt, nth);
            CousinPatch cousin = integrate_cousin(patch, 1e-2);
            const double eq6 = check_eq6(cousin, patch, im_i());
            std::printf("grid %zux%zu: eq6=%.3e  ratio=%.1f\n", nt, nth, eq6,
                        prev > 0 ? prev / eq6 : 0.0);
            prev = eq6;
        }
    }

    std::printf("\n== hemisphere eq6 at 200x200 ==\n");
    {
        UnduloidPatch hemi = sphere_patch(true, 3.0, 200, 200);
        CousinPatch cousin = integrate_cousin(hemi, 1e-3);
        std::printf("eq6(u=k)=%.3e  eq5(l_i)=%.3e\n", check_eq6(cousin, hemi, im_k()),
                    transplant_identity_residual(
                        [&] {
                            QuatField li(cousin.f.size());
                            for (std::size_t idx = 0; idx < li.size(); ++idx)
                                li[idx] = im_i().quat() * cousin.f[idx].q;
                            return li;
                        }(),
                        hemi, cousin));
    }

    std::printf("\n== hemisphere tangential rho_u: integrated - r_u = l_u ==\n");
    {
        UnduloidPatch hemi = sphere_patch(true, 2.5, 160, 160);
        CousinPatch cousin = integrate_cousin(hemi, 1e-3);
        // anchor value (r_u - l_u)(anchor)
        const ImVector u = im_j();
        const std::size_t a = cousin.index(cousin.anchor_i, cousin.anchor_j);
        const Quaternion anchor = cousin.f[a].q * u.quat() - u.quat() * cousin.f[a].q;
        QuatField integ = integrate_cousin_field(KillingField::rotation(u), hemi, cousin, anchor);
        // fit w in (r_u - integ) = l_w, expect w = u
        Quaternion wacc{0, 0, 0, 0};
        for (std::size_t idx = 0; idx < integ.size(); ++idx)
            wacc = wacc + (cousin.f[idx].q * u.quat() - integ[idx]) * cousin.f[idx].q.conj();
        wacc = wacc / double(integ.size());
        double worst = 0;
        for (std::size_t idx = 0; idx < integ.size(); ++idx)
            worst = std::max(worst, (cousin.f[idx].q * u.quat() - integ[idx] -
                                     wacc.im().quat() * cousin.f[idx].q)
                                        .norm());
        std::printf("fitted w=(%.6f %.6f %.6f) re=%.1e  residual=%.3e\n", wacc.im().x,
                    wacc.im().y, wacc.im().z, wacc.re(), worst);
    }

    std::printf("\n== criterion 8: boundary classification at n=1.5 ==\n");
    {
        NecksizeParams params(1.5);
        DelaunayProfile prof = conformal_reparam(solve_profile(params, 1e-10, 64));
        UnduloidPatch patch = immerse(prof, true, half_width_for_periods(prof, 3.0), 400, 100);
        CousinPatch cousin = integrate_cousin(patch, 1e-3);

        VecField ti = killing_on_patch(patch, KillingField::translation(im_i()));
        BoundaryClassification c1 = classify_boundary_mplus(ti, patch, cousin);
        std::printf("tau_i: %s/%s  even_res=(%.1e, %.1e)\n", verdict_name(c1.curve[0].verdict),
                    verdict_name(c1.curve[1].verdict), c1.curve[0].even_residual,
                    c1.curve[1].even_residual);

        QuatField rk(cousin.f.size());
        for (std::size_t idx = 0; idx < rk.size(); ++idx)
            rk[idx] = cousin.f[idx].q * im_k().quat();
        BoundaryClassification c2 = classify_boundary_mtilde(rk, patch, cousin);
        std::printf("r_k:   %s/%s  odd_res=(%.1e, %.1e) |w|=(%.1e, %.1e)\n",
                    verdict_name(c2.curve[0].verdict), verdict_name(c2.curve[1].verdict),
                    c2.curve[0].odd_residual, c2.curve[1].odd_residual,
                    c2.curve[0].fitted.norm(), c2.curve[1].fitted.norm());

        const ImVector u = ImVector{1, 2, 2}.normalized();
        QuatField lu(cousin.f.size());
        for (std::size_t idx = 0; idx < lu.size(); ++idx)
            lu[idx] = u.quat() * cousin.f[idx].q;
        BoundaryClassification c3 = classify_boundary_mtilde(lu, patch, cousin);
        for (int c = 0; c < 2; ++c) {
            const ImVector v = c3.curve[c].hopf_image;
            const ImVector uperp = u - v * u.dot(v);
            std::printf(
                "l_u:   %s  a_odd=%.2e omega=%.2e  w_err=%.2e (|w|=%.3f |uperp|=%.3f)\n",
                verdict_name(c3.curve[c].verdict), c3.curve[c].almost_odd_residual,
                c3.curve[c].omega_residual, (c3.curve[c].fitted - uperp).norm(),
                c3.curve[c].fitted.norm(), uperp.norm());
        }

        ClassifyConfig ccfg;
        QuatField etac = eta_cousin_fd(params, patch, ccfg, 1e-4);
        BoundaryClassification c4 = classify_boundary_mtilde(etac, patch, cousin);
        std::printf("eta~:  %s/%s a_odd=(%.2e, %.2e) w0=(%.4f %.4f %.4f) w1=(%.4f %.4f %.4f)\n",
                    verdict_name(c4.curve[0].verdict), verdict_name(c4.curve[1].verdict),
                    c4.curve[0].almost_odd_residual, c4.curve[1].almost_odd_residual,
                    c4.curve[0].fitted.x, c4.curve[0].fitted.y, c4.curve[0].fitted.z,
                    c4.curve[1].fitted.x, c4.curve[1].fitted.y, c4.curve[1].fitted.z);

        auto t0 = clk::now();
        TangentTuple viaodd = dphi_almost_odd(etac, patch, cousin);
        auto t1 = clk::now();
        std::printf("dphi via almost-odd: ddist=%.6f (%.0f ms)\n", viaodd.distance_rate(1),
                    ms(t0, t1));
    }

    std::printf("\n== criterion 7: dPhi vs dA ==\n");
    {
        ClassifyConfig cfg;
        for (FamilyKind fam : {FamilyKind::Necksize, FamilyKind::TranslationJ,
                               FamilyKind::RotationK}) {
            auto t0 = clk::now();
            RateComparison rc = compare_dphi_da(NecksizeParams(1.5), fam, 1e-4, cfg);
            auto t1 = clk::now();
            std::printf("family %d: dphi=%.6e  da=%.6e  diff=%.2e (%.0f ms)\n", int(rc.family),
                        rc.rate_dphi, rc.rate_da, rc.difference, ms(t0, t1));
        }
        auto t0 = clk::now();
        TangentTuple tt = dphi_fd(NecksizeParams(1.5), FamilyKind::TranslationI, 1e-4, cfg);
        auto t1 = clk::now();
        std::printf("dphi_fd translation-i: max|delta|=%.3e (%.0f ms)\n", tt.max_delta(),
                    ms(t0, t1));
        TangentTuple tn = dphi_fd(NecksizeParams(1.5), FamilyKind::Necksize, 1e-4, cfg);
        std::printf("dphi_fd necksize: ddist=%.6f max|delta|=%.3e\n", tn.distance_rate(1),
                    tn.max_delta());
    }

    std::printf("\n== dA basis fits ==\n");
    {
        NecksizeParams params(1.5);
        DelaunayProfile prof = conformal_reparam(solve_profile(params, 1e-10, 64));
        UnduloidPatch patch = immerse(prof, true, half_width_for_periods(prof, 3.0), 400, 100);
        for (const char* name : {"tau_i", "eta", "rho_k"}) {
            std::vector<double> normal;
            if (std::string(name) == "tau_i")
                normal = normal_part(patch, killing_on_patch(patch, KillingField::translation(im_i())));
            else if (std::string(name) == "eta")
                normal = necksize_change_field(params, patch, 2e-4).normal;
            else
                normal = normal_part(patch, killing_on_patch(patch, KillingField::rotation(im_k())));
            AsymptoteFit fit = dA_fit(normal, patch, params);
            std::printf("%-6s end+: eta=%.6f ti=%.6f tj=%.6f rk=%.6f res=%.2e cond=%.1e\n", name,
                        fit.end[1].eta, fit.end[1].tau_i, fit.end[1].tau_j, fit.end[1].rho_k,
                        fit.end[1].residual, fit.end[1].gram_condition);
        }
    }

    std::printf("\n== modes: sweep margins ==\n");
    for (double n : {0.3, 0.9, 1.5, 2.1, 2.7, kPi}) {
        auto t0 = clk::now();
        NondegeneracyVerdict v = nondegeneracy_check(NecksizeParams(n), 8);
        auto t1 = clk::now();
        double min_margin = 1e300, max_det = 0;
        for (const auto& rep : v.evidence.modes) {
            if (rep.m >= 2) min_margin = std::min(min_margin, rep.margin);
            max_det = std::max(max_det, rep.det_defect);
        }
        std::printf("n=%.2f nondeg=%d inconcl=%d total=%d even=%d margin2=%.2e det=%.1e (%0.f ms)\n",
                    n, int(v.nondegenerate), int(v.inconclusive), v.evidence.total,
                    v.evidence.even, min_margin, max_det, ms(t0, t1));
    }

    return 0;
}
