#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "maxshape/audit.hpp"
#include "maxshape/functionals.hpp"
#include "maxshape/grid.hpp"

namespace maxshape {

// Wire schemas:
//   CurveNetwork  {"vertices":[[x,y],...], "edges":[[i,j],...]}
//   DomainSpec    {"polygon":[[x,y],...]}
nlohmann::json to_json(const CurveNetwork& net);
CurveNetwork network_from_json(const nlohmann::json& j, double tolerance = 1e-3);
nlohmann::json to_json(const DomainSpec& domain);
DomainSpec domain_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Spectrum& spec);
nlohmann::json to_json(const PropertyRecord& rec);
nlohmann::json to_json(const AhlforsReport& rep);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// CSV emitters (deterministic formatting, 17 significant digits).
std::string grid_csv(const Grid& grid);                 // i,j,class
std::string field_csv(const DensityField& field);       // i,j,value
std::string profiles_csv(const AhlforsReport& report);  // point_id,r,density,pass

std::string format_double(double v);  // shortest round-trip representation

}  // namespace maxshape
