#include "amfield/export.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace amfield {

namespace {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

json report_to_json(const ResidualReport& r) {
    json j;
    j["equation"] = equation_name(r.equation);
    j["scenario"] = r.scenario;
    j["max_abs"] = r.max_abs;
    j["max_rel"] = r.max_rel;
    j["l2_rel"] = r.l2_rel;
    j["scale_at_max"] = r.scale_at_max;
    j["worst_point"] = {r.worst_point.x(), r.worst_point.y(),
                        r.worst_point.z()};
    j["worst_time"] = r.worst_time;
    j["points"] = r.points;
    j["derivative_mode"] =
        r.mode == DerivativeMode::Analytic ? "analytic" : "fd";
    j["fd_order"] = r.fd_order;
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    j["exact"] = r.exact;
    j["note"] = r.note;
    return j;
}

void write_field_map_csv(const std::string& path, const ScalarGrid& grid,
                         const std::string& quantity,
                         const std::string& component,
                         const std::string& units_label, double time) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "x,y,z,t," << quantity << "_" << component << "[" << units_label
        << "]\n";
    const GridSpec& g = grid.spec;
    for (int iz = 0; iz < g.nz; ++iz)
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix) {
                const Vec3 p = g.point(ix, iy, iz);
                out << g17(p.x()) << ',' << g17(p.y()) << ',' << g17(p.z())
                    << ',' << g17(time) << ','
                    << g17(grid.at(ix, iy, iz)) << '\n';
            }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_spin_term_maps(const SpinTermMaps& maps, const std::string& dir) {
    static const char* term_names[4] = {"dt_spin", "div_helicity_current",
                                        "grad_helicity", "tau_em"};
    static const char* comp_names[3] = {"rho", "phi", "z"};
    for (int term = 0; term < 4; ++term)
        for (int c = 0; c < 3; ++c) {
            const std::string path = dir + "/" + term_names[term] + "_" +
                                     comp_names[c] + ".csv";
            write_field_map_csv(path, maps.maps[term][c], term_names[term],
                                comp_names[c], "N*m^-2", maps.grid.t0);
        }
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace amfield
