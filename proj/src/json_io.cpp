#include "maxshape/json_io.hpp"

#include <charconv>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace maxshape {

using nlohmann::json;

json to_json(const CurveNetwork& net) {
  json j;
  j["vertices"] = json::array();
  for (const auto& v : net.vertices) j["vertices"].push_back({v.x, v.y});
  j["edges"] = json::array();
  for (const auto& e : net.edges) j["edges"].push_back({e[0], e[1]});
  return j;
}

CurveNetwork network_from_json(const json& j, double tolerance) {
  CurveNetwork net;
  net.tolerance = tolerance;
  if (!j.contains("vertices") || !j.contains("edges"))
    throw Error(ErrorCode::InvalidInput, "network JSON needs 'vertices' and 'edges'");
  for (const auto& v : j.at("vertices")) net.vertices.push_back({v.at(0), v.at(1)});
  for (const auto& e : j.at("edges"))
    net.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
  return net;
}

json to_json(const DomainSpec& domain) {
  json j;
  j["polygon"] = json::array();
  for (const auto& p : domain.boundary) j["polygon"].push_back({p.x, p.y});
  return j;
}

DomainSpec domain_from_json(const json& j) {
  DomainSpec d;
  if (!j.contains("polygon")) throw Error(ErrorCode::InvalidInput, "domain JSON needs 'polygon'");
  for (const auto& p : j.at("polygon")) d.boundary.push_back({p.at(0), p.at(1)});
  d.validate();
  return d;
}

json to_json(const Spectrum& spec) {
  json j;
  j["values"] = spec.values;
  j["residuals"] = spec.residuals;
  return j;
}

json to_json(const PropertyRecord& rec) {
  return json{{"check", rec.check},
              {"functional", rec.functional},
              {"fixture", rec.fixture},
              {"pass", rec.pass},
              {"gap", rec.gap},
              {"tolerance", rec.tolerance}};
}

json to_json(const AhlforsReport& rep) {
  json j;
  j["c1"] = rep.c1;
  j["c2"] = rep.c2;
  j["slack_h"] = rep.slack_h;
  j["worst_c1"] = rep.worst_c1;
  j["worst_c2"] = rep.worst_c2;
  j["pass"] = rep.all_pass;
  j["points"] = rep.profiles.size();
  return j;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path);
  out << content;
}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string grid_csv(const Grid& grid) {
  std::ostringstream os;
  os << "i,j,class\n";
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i)
      os << i << ',' << j << ',' << static_cast<int>(grid.node_class[grid.index(i, j)]) << '\n';
  return os.str();
}

std::string field_csv(const DensityField& field) {
  std::ostringstream os;
  os << "i,j,value\n";
  const Grid& g = *field.grid;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      os << i << ',' << j << ',' << format_double(field.values[g.index(i, j)]) << '\n';
  return os.str();
}

std::string profiles_csv(const AhlforsReport& report) {
  std::ostringstream os;
  os << "point_id,r,density,pass\n";
  for (const auto& prof : report.profiles)
    for (std::size_t k = 0; k < prof.radii.size(); ++k)
      os << prof.point_id << ',' << format_double(prof.radii[k]) << ','
         << format_double(prof.densities[k]) << ',' << (prof.flags[k] ? 1 : 0) << '\n';
  return os.str();
}

}  // namespace maxshape
