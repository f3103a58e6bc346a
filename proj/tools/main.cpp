// Command-line driver: generate unduloid meshes, run the Floquet mode
// analysis, integrate conjugate cousins, evaluate the classifying map
// and emit machine-readable verification reports.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <string>

#include <json.hpp>

#include "cmclab/classify.hpp"
#include "cmclab/errors.hpp"
#include "cmclab/index_count.hpp"
#include "cmclab/io.hpp"
#include "cmclab/verify.hpp"

using namespace cmclab;
using ordered_json = nlohmann::ordered_json;

namespace {

struct CliOptions {
    RunConfig cfg;
    std::string config_path;
    std::string grid = "";
    double necksize = -1;
    bool full = false;
    int k_max = 6;
    int m_max = -1;
    bool half = false;
    std::vector<double> proj_center = {1, 0, 0, 0};
};

void apply_overrides(CliOptions& opt) {
    if (!opt.config_path.empty()) opt.cfg = config_from_json_file(opt.config_path);
    if (opt.necksize > 0) opt.cfg.necksizes = {opt.necksize};
    if (opt.m_max > 0) opt.cfg.m_max = opt.m_max;
    if (!opt.grid.empty()) {
        const auto x = opt.grid.find('x');
        if (x == std::string::npos) throw CLI::ValidationError("--grid expects NTxNTHETA");
        opt.cfg.grid_nt = std::stoul(opt.grid.substr(0, x));
        opt.cfg.grid_ntheta = std::stoul(opt.grid.substr(x + 1));
    }
    opt.cfg.validate();
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
    std::filesystem::create_directories(cfg.output_dir);
    return (std::filesystem::path(cfg.output_dir) / name).string();
}

std::string necksize_tag(double n) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "n%.4f", n);
    return buf;
}

// profile with enough samples for export, plus the half-width of its
// t window
std::pair<DelaunayProfile, double> profile_and_window(double n, const RunConfig& cfg) {
    DelaunayProfile prof = solve_profile(NecksizeParams(n), cfg.tol, 256);
    if (prof.has_period) prof = conformal_reparam(prof);
    return {prof, half_width_for_periods(prof, cfg.t_range_periods)};
}

int cmd_gen(const CliOptions& opt) {
    for (double n : opt.cfg.necksizes) {
        auto [prof, t_range] = profile_and_window(n, opt.cfg);
        UnduloidPatch patch =
            immerse(prof, opt.half, t_range, opt.cfg.grid_nt, opt.cfg.grid_ntheta);
        const std::string tag = necksize_tag(n);
        write_file(out_path(opt.cfg, "profile_" + tag + ".csv"), csv_from_profile(prof));
        write_file(out_path(opt.cfg, "unduloid_" + tag + ".obj"), obj_from_patch(patch));
        std::cout << "wrote unduloid_" << tag << ".obj (" << patch.nodes.size()
                  << " vertices)\n";
    }
    return 0;
}

int cmd_modes(const CliOptions& opt) {
    bool all_good = true;
    for (double n : opt.cfg.necksizes) {
        NecksizeParams params(n);
        NondegeneracyVerdict verdict = nondegeneracy_check(params, opt.cfg.m_max, 1e-11);
        const std::string tag = necksize_tag(n);
        write_file(out_path(opt.cfg, "modes_" + tag + ".csv"),
                   csv_from_modes(verdict.evidence));

        ordered_json j;
        j["necksize"] = n;
        j["m_max"] = opt.cfg.m_max;
        j["nondegenerate"] = verdict.nondegenerate;
        j["inconclusive"] = verdict.inconclusive;
        j["reason"] = verdict.reason;
        j["tempered_total"] = verdict.evidence.total;
        j["tempered_even"] = verdict.evidence.even;
        j["tail_margin"] = verdict.evidence.tail_margin;
        write_file(out_path(opt.cfg, "nondegeneracy_" + tag + ".json"), j.dump(2) + "\n");
        std::cout << "n = " << n << ": "
                  << (verdict.nondegenerate ? "nondegenerate" : "not nondegenerate")
                  << " (tempered " << verdict.evidence.total << ", even "
                  << verdict.evidence.even << ")\n";
        all_good = all_good && verdict.nondegenerate && !verdict.inconclusive;
    }
    return all_good ? 0 : 1;
}

int cmd_cousin(const CliOptions& opt) {
    bool all_good = true;
    for (double n : opt.cfg.necksizes) {
        auto [prof, t_range] = profile_and_window(n, opt.cfg);
        UnduloidPatch patch =
            immerse(prof, true, t_range, opt.cfg.grid_nt, opt.cfg.grid_ntheta);
        CousinPatch cousin = integrate_cousin(patch, opt.cfg.holonomy_tol);
        CousinReport rep = verify_cousin(cousin, patch);
        const std::string tag = necksize_tag(n);
        const Quaternion c{opt.proj_center[0], opt.proj_center[1], opt.proj_center[2],
                           opt.proj_center[3]};
        write_file(out_path(opt.cfg, "cousin_" + tag + ".obj"),
                   obj_from_cousin(cousin, UnitQuaternion(c)));

        ordered_json j;
        j["necksize"] = n;
        j["isometry_defect"] = rep.isometry_defect;
        j["max_holonomy"] = rep.max_holonomy;
        j["boundary_spread"] = {rep.boundary_spread[0], rep.boundary_spread[1]};
        j["hopf_distance"] = rep.hopf_distance;
        j["normal_defect"] = rep.normal_defect;
        j["vertical_identity"] = rep.vertical_identity;
        j["mean_curvature_s3"] = rep.mean_curvature_s3;
        write_file(out_path(opt.cfg, "cousin_" + tag + ".json"), j.dump(2) + "\n");
        std::cout << "n = " << n << ": holonomy " << rep.max_holonomy << ", isometry defect "
                  << rep.isometry_defect << "\n";
        all_good = all_good && rep.max_holonomy <= opt.cfg.holonomy_tol;
    }
    return all_good ? 0 : 1;
}

int cmd_classify(const CliOptions& opt) {
    bool all_good = true;
    ordered_json sweep = ordered_json::array();
    for (double n : opt.cfg.necksizes) {
        ClassifyConfig ccfg;
        ccfg.nt = opt.cfg.grid_nt;
        ccfg.ntheta = opt.cfg.grid_ntheta;
        ccfg.t_range_periods = opt.cfg.t_range_periods;
        ccfg.tol = opt.cfg.tol;
        ccfg.holonomy_tol = opt.cfg.holonomy_tol;
        ClassifyResult res = classify_unduloid(NecksizeParams(n), ccfg);
        ordered_json j;
        j["n"] = n;
        j["v1"] = {res.tuple.v[0].x, res.tuple.v[0].y, res.tuple.v[0].z};
        j["v2"] = {res.tuple.v[1].x, res.tuple.v[1].y, res.tuple.v[1].z};
        j["distance"] = res.distance;
        j["distance_error"] = std::abs(res.distance - n);
        j["spread"] = {res.tuple.spread[0], res.tuple.spread[1]};
        sweep.push_back(j);
        std::cout << "n = " << n << ": d(v1,v2) = " << res.distance << " (error "
                  << std::abs(res.distance - n) << ")\n";
        all_good = all_good && std::abs(res.distance - n) <= 5e-3;
    }
    write_file(out_path(opt.cfg, "classify.json"), sweep.dump(2) + "\n");
    return all_good ? 0 : 1;
}

int cmd_verify(const CliOptions& opt) {
    VerifyReport report = opt.full ? run_verification(opt.cfg)
                                   : run_verification_single(opt.cfg, opt.cfg.necksizes.at(0));
    write_file(out_path(opt.cfg, "verify.json"), report_to_json(report));
    std::size_t passed = 0;
    for (const auto& rec : report.records) {
        if (!rec.pass && !rec.informational)
            std::cout << "FAIL " << rec.name << ": computed " << format_double(rec.computed)
                      << ", target " << format_double(rec.target) << " +/- "
                      << format_double(rec.tolerance) << "\n";
        if (rec.pass) ++passed;
    }
    std::cout << (report.pass() ? "PASS" : "FAIL") << " (" << passed << "/"
              << report.records.size() << " checks)\n";
    return report.pass() ? 0 : 1;
}

int cmd_dims(const CliOptions& opt) {
    ordered_json tables = ordered_json::array();
    for (int k = 2; k <= opt.k_max; ++k)
        for (bool coplanar : {true, false}) {
            DimReport rep = moduli_dims(k, coplanar, true);
            ordered_json j;
            j["k"] = rep.k;
            j["coplanar"] = rep.coplanar;
            j["deficiency"] = rep.deficiency;
            j["half_deficiency"] = rep.half_deficiency;
            j["premoduli"] = rep.premoduli;
            j["moduli"] = rep.moduli;
            tables.push_back(j);
        }
    write_file(out_path(opt.cfg, "dims.json"), tables.dump(2) + "\n");
    std::cout << "wrote dims.json (k = 2.." << opt.k_max << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Delaunay unduloids, conjugate cousins in S^3, and their Jacobi fields"};
    app.require_subcommand(1);

    CliOptions opt;
    app.add_option("--config", opt.config_path, "JSON config file (flags override)");

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--necksize", opt.necksize, "necksize in (0, pi]");
        sub->add_option("--grid", opt.grid, "grid as NTxNTHETA, e.g. 200x100");
        sub->add_option("--t-range-periods", opt.cfg.t_range_periods,
                        "half-width of the t window in conformal periods");
        sub->add_option("--tol", opt.cfg.tol, "profile integrator tolerance");
        sub->add_option("--out", opt.cfg.output_dir, "output directory");
        sub->add_option("--seed", opt.cfg.seed, "seed for sampled checks");
    };

    CLI::App* gen = app.add_subcommand("gen", "profile CSV and unduloid mesh OBJ");
    add_common(gen);
    gen->add_flag("--half", opt.half, "restrict theta to [0, pi] (upper half M+)");

    CLI::App* modes = app.add_subcommand("modes", "Floquet mode sweep and nondegeneracy verdict");
    add_common(modes);
    modes->add_option("--m-max", opt.m_max, "highest Fourier mode integrated");

    CLI::App* cousin = app.add_subcommand("cousin", "conjugate cousin mesh and identity residuals");
    add_common(cousin);
    cousin->add_option("--proj-center", opt.proj_center,
                       "stereographic projection center (w x y z)")
        ->expected(4);

    CLI::App* classify = app.add_subcommand("classify", "Hopf-projected boundary tuple and necksize distance");
    add_common(classify);

    CLI::App* verify = app.add_subcommand("verify", "verification report (JSON)");
    add_common(verify);
    verify->add_flag("--full", opt.full, "run the full sweep suite");

    CLI::App* dims = app.add_subcommand("dims", "moduli dimension tables");
    add_common(dims);
    dims->add_option("--k-max", opt.k_max, "largest end count tabulated");

    try {
        app.parse(argc, argv);
        apply_overrides(opt);
        if (gen->parsed()) return cmd_gen(opt);
        if (modes->parsed()) return cmd_modes(opt);
        if (cousin->parsed()) return cmd_cousin(opt);
        if (classify->parsed()) return cmd_classify(opt);
        if (verify->parsed()) return cmd_verify(opt);
        if (dims->parsed()) return cmd_dims(opt);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
