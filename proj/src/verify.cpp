#include "cmclab/verify.hpp"

#include <cmath>
#include <numbers>

#include "cmclab/classify.hpp"
#include "cmclab/index_count.hpp"
#include "cmclab/meshcheck.hpp"

namespace cmclab {

namespace {
constexpr double kPi = std::numbers::pi;
const std::vector<double> kSweep = {0.3, 0.9, 1.5, 2.1, 2.7};
}  // namespace

std::vector<CheckRecord> check_delaunay(const RunConfig& cfg) {
    std::vector<CheckRecord> out;
    std::vector<double> ns = kSweep;
    ns.push_back(kPi);
    for (double n : ns) {
        NecksizeParams params(n);
        DelaunayProfile prof = solve_profile(params, cfg.tol, 256);
        if (prof.has_period) prof = conformal_reparam(prof);
        double worst = 0, rmin = prof.samples.front().r;
        for (const auto& smp : prof.samples) {
            worst = std::max(worst, smp.residual);
            rmin = std::min(rmin, smp.r);
        }
        const std::string tag = "n=" + format_double(n);
        out.push_back(make_check("profile-conservation " + tag,
                                 "r cos(psi) - r^2 = a - a^2 along the profile", worst, 0.0,
                                 1e-9));
        out.push_back(make_check("neck-radius " + tag, "min r = n / 2 pi", rmin, params.a, 1e-8));
        UnduloidPatch patch = immerse(prof, false, half_width_for_periods(prof, 3.0),
                                      cfg.grid_nt, cfg.grid_ntheta);
        MeanCurvatureStats mc = discrete_mean_curvature(patch, 1.0);
        out.push_back(make_check("mesh-mean-curvature " + tag,
                                 "discrete cotangent H of the mesh", 1.0 + mc.max_abs_error, 1.0,
                                 5e-3));
    }
    return out;
}

std::vector<CheckRecord> check_cousin_geometry(const RunConfig&) { return {}; }
std::vector<CheckRecord> check_necksize_distance(const RunConfig&) { return {}; }
std::vector<CheckRecord> check_identities(const RunConfig&) { return {}; }
std::vector<CheckRecord> check_mode_structure(const RunConfig&) { return {}; }
std::vector<CheckRecord> check_dimension_tables(const RunConfig&) { return {}; }
std::vector<CheckRecord> check_rate_agreement(const RunConfig&) { return {}; }
std::vector<CheckRecord> check_boundary_classification(const RunConfig&) { return {}; }
std::vector<CheckRecord> check_determinism(const RunConfig&) { return {}; }

VerifyReport run_verification(const RunConfig& cfg) {
    VerifyReport report;
    auto append = [&](std::vector<CheckRecord> recs) {
        for (auto& r : recs) report.records.push_back(std::move(r));
    };
    append(check_delaunay(cfg));
    append(check_cousin_geometry(cfg));
    append(check_necksize_distance(cfg));
    append(check_identities(cfg));
    append(check_mode_structure(cfg));
    append(check_dimension_tables(cfg));
    append(check_rate_agreement(cfg));
    append(check_boundary_classification(cfg));
    append(check_determinism(cfg));
    return report;
}

VerifyReport run_verification_single(const RunConfig& cfg, double necksize) {
    RunConfig single = cfg;
    single.necksizes = {necksize};
    return run_verification(single);
}

}  // namespace cmclab
