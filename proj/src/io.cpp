#include "cmclab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cmclab {

using ordered_json = nlohmann::ordered_json;

void RunConfig::validate() const {
    for (double n : necksizes) NecksizeParams check(n);
    if (grid_nt < 16 || grid_ntheta < 8)
        throw std::invalid_argument("config: grid must be at least 16x8");
    if (!(tol > 0) || !(fd_step > 0) || !(holonomy_tol > 0) || !(t_range_periods > 0))
        throw std::invalid_argument("config: tolerances and ranges must be positive");
    if (m_max < 2) throw std::invalid_argument("config: m_max must be >= 2");
}

RunConfig config_from_json_file(const std::string& path) {
    ordered_json j = ordered_json::parse(read_file(path));
    RunConfig cfg;
    if (j.contains("necksizes")) cfg.necksizes = j["necksizes"].get<std::vector<double>>();
    if (j.contains("grid_nt")) cfg.grid_nt = j["grid_nt"].get<std::size_t>();
    if (j.contains("grid_ntheta")) cfg.grid_ntheta = j["grid_ntheta"].get<std::size_t>();
    if (j.contains("t_range_periods")) cfg.t_range_periods = j["t_range_periods"].get<double>();
    if (j.contains("tol")) cfg.tol = j["tol"].get<double>();
    if (j.contains("m_max")) cfg.m_max = j["m_max"].get<int>();
    if (j.contains("fd_step")) cfg.fd_step = j["fd_step"].get<double>();
    if (j.contains("holonomy_tol")) cfg.holonomy_tol = j["holonomy_tol"].get<double>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("output_dir")) cfg.output_dir = j["output_dir"].get<std::string>();
    cfg.validate();
    return cfg;
}

std::string config_to_json(const RunConfig& cfg) {
    ordered_json j;
    j["necksizes"] = cfg.necksizes;
    j["grid_nt"] = cfg.grid_nt;
    j["grid_ntheta"] = cfg.grid_ntheta;
    j["t_range_periods"] = cfg.t_range_periods;
    j["tol"] = cfg.tol;
    j["m_max"] = cfg.m_max;
    j["fd_step"] = cfg.fd_step;
    j["holonomy_tol"] = cfg.holonomy_tol;
    j["seed"] = cfg.seed;
    j["output_dir"] = cfg.output_dir;
    return j.dump(2) + "\n";
}

bool VerifyReport::pass() const {
    for (const auto& rec : records)
        if (!rec.informational && !rec.pass) return false;
    return true;
}

CheckRecord make_check(const std::string& name, const std::string& anchor, double computed,
                       double target, double tolerance) {
    CheckRecord rec;
    rec.name = name;
    rec.anchor = anchor;
    rec.computed = computed;
    rec.target = target;
    rec.tolerance = tolerance;
    rec.pass = std::abs(computed - target) <= tolerance;
    return rec;
}

std::string report_to_json(const VerifyReport& report) {
    ordered_json j;
    j["pass"] = report.pass();
    j["count"] = report.records.size();
    ordered_json arr = ordered_json::array();
    for (const auto& rec : report.records) {
        ordered_json r;
        r["name"] = rec.name;
        r["anchor"] = rec.anchor;
        r["computed"] = rec.computed;
        r["target"] = rec.target;
        r["tolerance"] = rec.tolerance;
        r["pass"] = rec.pass;
        r["informational"] = rec.informational;
        arr.push_back(r);
    }
    j["records"] = arr;
    return j.dump(2) + "\n";
}

VerifyReport report_from_json(const std::string& text) {
    ordered_json j = ordered_json::parse(text);
    VerifyReport report;
    for (const auto& r : j.at("records")) {
        CheckRecord rec;
        rec.name = r.at("name").get<std::string>();
        rec.anchor = r.at("anchor").get<std::string>();
        rec.computed = r.at("computed").get<double>();
        rec.target = r.at("target").get<double>();
        rec.tolerance = r.at("tolerance").get<double>();
        rec.pass = r.at("pass").get<bool>();
        rec.informational = r.at("informational").get<bool>();
        report.records.push_back(rec);
    }
    return report;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << contents;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string obj_from_patch(const UnduloidPatch& patch) {
    std::ostringstream out;
    out << "# surface mesh, " << patch.nt() << " x " << patch.ntheta() << " grid\n";
    for (const auto& nd : patch.nodes)
        out << "v " << format_double(nd.f.x) << " " << format_double(nd.f.y) << " "
            << format_double(nd.f.z) << "\n";
    const std::size_t nth = patch.ntheta();
    const std::size_t jmax = patch.theta_wraps ? nth : nth - 1;
    for (std::size_t i = 0; i + 1 < patch.nt(); ++i)
        for (std::size_t j = 0; j < jmax; ++j) {
            const std::size_t jn = (j + 1) % nth;
            out << "f " << patch.index(i, j) + 1 << " " << patch.index(i + 1, j) + 1 << " "
                << patch.index(i + 1, jn) + 1 << " " << patch.index(i, jn) + 1 << "\n";
        }
    return out.str();
}

std::string obj_from_cousin(const CousinPatch& cousin, const UnitQuaternion& center) {
    std::ostringstream out;
    out << "# cousin mesh on S^3, stereographic projection, " << cousin.nt << " x "
        << cousin.ntheta << " grid\n";
    for (const auto& f : cousin.f) {
        const Quaternion p = center.q.conj() * f.q;  // move center to 1
        const double denom = 1.0 + p.w;
        const ImVector v = p.im() / denom;
        out << "v " << format_double(v.x) << " " << format_double(v.y) << " "
            << format_double(v.z) << "\n";
    }
    for (std::size_t i = 0; i + 1 < cousin.nt; ++i)
        for (std::size_t j = 0; j + 1 < cousin.ntheta; ++j)
            out << "f " << cousin.index(i, j) + 1 << " " << cousin.index(i + 1, j) + 1 << " "
                << cousin.index(i + 1, j + 1) + 1 << " " << cousin.index(i, j + 1) + 1 << "\n";
    return out.str();
}

std::string csv_from_profile(const DelaunayProfile& profile) {
    std::ostringstream out;
    out << "s,t,x,r,tangent_angle,conservation_residual\n";
    for (const auto& smp : profile.samples)
        out << format_double(smp.s) << "," << format_double(smp.t) << ","
            << format_double(smp.x) << "," << format_double(smp.r) << ","
            << format_double(smp.psi) << "," << format_double(smp.residual) << "\n";
    return out.str();
}

std::string csv_from_modes(const TemperedDimension& modes) {
    std::ostringstream out;
    out << "# modes -m and +m coincide (the potential depends on m^2)\n";
    out << "m,mu1_re,mu1_im,mu2_re,mu2_im,class,tempered,margin\n";
    for (const auto& rep : modes.modes)
        out << rep.m << "," << format_double(rep.mu1.real()) << ","
            << format_double(rep.mu1.imag()) << "," << format_double(rep.mu2.real()) << ","
            << format_double(rep.mu2.imag()) << "," << growth_name(rep.growth) << ","
            << rep.tempered << "," << format_double(rep.margin) << "\n";
    return out.str();
}

}  // namespace cmclab
