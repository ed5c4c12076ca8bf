#pragma once

#include <string>

#include "amfield/scenario.hpp"

namespace amfield {

json report_to_json(const ResidualReport& r);

// CSV with one header row "x,y,z,t,<quantity>_<component>[<units>]" and
// one row per grid point, row-major with x fastest, %.17g throughout.
void write_field_map_csv(const std::string& path, const ScalarGrid& grid,
                         const std::string& quantity,
                         const std::string& component,
                         const std::string& units_label, double time);

// The 12 Fig. 2 panels: 4 terms x rho/phi/z components.
void write_spin_term_maps(const SpinTermMaps& maps, const std::string& dir);

void write_json_file(const std::string& path, const json& j);

}  // namespace amfield
