#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cmclab/cousin.hpp"
#include "cmclab/delaunay.hpp"
#include "cmclab/jacobi_modes.hpp"
#include "cmclab/patch.hpp"

namespace cmclab {

// Run configuration shared by the CLI subcommands.  An identical config
// (including the seed for sampled property checks) must produce
// byte-identical artifacts.
struct RunConfig {
    std::vector<double> necksizes = {1.0};
    std::size_t grid_nt = 200;
    std::size_t grid_ntheta = 100;
    double t_range_periods = 3.0;
    double tol = 1e-10;
    int m_max = 8;
    double fd_step = 1e-4;
    double holonomy_tol = 1e-5;
    std::uint64_t seed = 12001;
    std::string output_dir = ".";

    void validate() const;
};

RunConfig config_from_json_file(const std::string& path);
std::string config_to_json(const RunConfig& cfg);

// One verification record; a suite passes when every non-informational
// record passes.
struct CheckRecord {
    std::string name;
    std::string anchor;  // the identity or count being checked
    double computed = 0;
    double target = 0;
    double tolerance = 0;
    bool pass = false;
    bool informational = false;
};

struct VerifyReport {
    std::vector<CheckRecord> records;
    bool pass() const;
};

CheckRecord make_check(const std::string& name, const std::string& anchor, double computed,
                       double target, double tolerance);

// Stable-key-order JSON with round-trip-exact numbers.
std::string report_to_json(const VerifyReport& report);
VerifyReport report_from_json(const std::string& text);
void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

// Wavefront OBJ of a patch: vertices in row-major grid order, quad
// faces (wrapping in theta on a full patch).
std::string obj_from_patch(const UnduloidPatch& patch);

// Cousin mesh, stereographically projected from the antipode of
// `center` onto the tangent space at `center`.
std::string obj_from_cousin(const CousinPatch& cousin, const UnitQuaternion& center);

// CSV with columns s, t, x, r, tangent_angle, conservation_residual.
std::string csv_from_profile(const DelaunayProfile& profile);

// CSV with one row per mode: m, re/im of both multipliers, class,
// tempered count, margin.  Negative modes coincide with positive ones
// (the potential depends on m^2); noted in the header.
std::string csv_from_modes(const TemperedDimension& modes);

// 17 significant digits, round-trip exact.
std::string format_double(double v);

}  // namespace cmclab
