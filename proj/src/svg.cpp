#include "maxshape/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "maxshape/json_io.hpp"

namespace maxshape {

namespace {

struct Mapper {
  double sx, sy, scale;
  int width, height;
  Mapper(const BBox& bb, int w) {
    const double dx = bb.hi.x - bb.lo.x, dy = bb.hi.y - bb.lo.y;
    const double margin = 0.05 * std::max(dx, dy);
    scale = w / (dx + 2 * margin);
    sx = bb.lo.x - margin;
    sy = bb.lo.y - margin;
    width = w;
    height = static_cast<int>(std::lround((dy + 2 * margin) * scale));
  }
  double X(double x) const { return (x - sx) * scale; }
  double Y(double y) const { return height - (y - sy) * scale; }
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

void emit_header(std::ostringstream& os, int w, int h) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
     << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
}

void emit_polygon(std::ostringstream& os, const Mapper& m, const std::vector<Point2>& pts,
                  const std::string& style) {
  os << "<polygon points=\"";
  for (const auto& p : pts) os << fmt(m.X(p.x)) << ',' << fmt(m.Y(p.y)) << ' ';
  os << "\" " << style << "/>\n";
}

void emit_network(std::ostringstream& os, const Mapper& m, const CurveNetwork& net,
                  const std::string& stroke) {
  for (const auto& e : net.edges) {
    const Point2 a = net.vertices[e[0]], b = net.vertices[e[1]];
    os << "<line x1=\"" << fmt(m.X(a.x)) << "\" y1=\"" << fmt(m.Y(a.y)) << "\" x2=\""
       << fmt(m.X(b.x)) << "\" y2=\"" << fmt(m.Y(b.y)) << "\" stroke=\"" << stroke
       << "\" stroke-width=\"2\"/>\n";
  }
}

// five-stop blue->yellow colormap
std::string heat_color(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const double stops[5][3] = {
      {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}};
  const double pos = t * 4.0;
  const int k = std::min(3, static_cast<int>(pos));
  const double f = pos - k;
  std::ostringstream os;
  os << "rgb(" << static_cast<int>(stops[k][0] + f * (stops[k + 1][0] - stops[k][0])) << ','
     << static_cast<int>(stops[k][1] + f * (stops[k + 1][1] - stops[k][1])) << ','
     << static_cast<int>(stops[k][2] + f * (stops[k + 1][2] - stops[k][2])) << ')';
  return os.str();
}

}  // namespace

std::string svg_network(const DomainSpec& domain, const CurveNetwork& net, int width) {
  const Mapper m(domain.bounding_box(), width);
  std::ostringstream os;
  emit_header(os, m.width, m.height);
  emit_polygon(os, m, domain.boundary, "fill=\"#f2f2f2\" stroke=\"#333333\" stroke-width=\"1.5\"");
  emit_network(os, m, net, "#c0392b");
  os << "</svg>\n";
  return os.str();
}

std::string svg_heatmap(const DensityField& field, const CurveNetwork* overlay, int width) {
  const Grid& g = *field.grid;
  const Mapper m(g.domain.bounding_box(), width);
  double vmax = 0.0;
  for (double v : field.values) vmax = std::max(vmax, v);
  if (vmax <= 0.0) vmax = 1.0;
  std::ostringstream os;
  emit_header(os, m.width, m.height);
  const double cell = g.h * m.scale;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const int idx = g.index(i, j);
      if (g.node_class[idx] != NodeClass::Interior) continue;
      const Point2 p = g.node_point(i, j);
      os << "<rect x=\"" << fmt(m.X(p.x) - cell / 2) << "\" y=\"" << fmt(m.Y(p.y) - cell / 2)
         << "\" width=\"" << fmt(cell) << "\" height=\"" << fmt(cell) << "\" fill=\""
         << heat_color(field.values[idx] / vmax) << "\"/>\n";
    }
  emit_polygon(os, m, g.domain.boundary, "fill=\"none\" stroke=\"#333333\" stroke-width=\"1.5\"");
  if (overlay) emit_network(os, m, *overlay, "#ffffff");
  os << "</svg>\n";
  return os.str();
}

std::string svg_density_chart(const AhlforsReport& report, int width, int height) {
  std::ostringstream os;
  emit_header(os, width, height);
  double rmin = 1e300, rmax = 0.0, dmax = 0.0;
  for (const auto& prof : report.profiles)
    for (std::size_t k = 0; k < prof.radii.size(); ++k) {
      rmin = std::min(rmin, prof.radii[k]);
      rmax = std::max(rmax, prof.radii[k]);
      dmax = std::max(dmax, prof.densities[k]);
    }
  if (report.profiles.empty() || rmax <= 0.0) {
    os << "</svg>\n";
    return os.str();
  }
  dmax = std::max(dmax, report.c2) * 1.1;
  const double lr0 = std::log(rmin), lr1 = std::log(rmax);
  auto X = [&](double r) {
    return 50.0 + (width - 70.0) * (std::log(r) - lr0) / std::max(lr1 - lr0, 1e-12);
  };
  auto Y = [&](double d) { return height - 30.0 - (height - 60.0) * d / dmax; };
  // axes and the c1/c2 guide lines
  os << "<line x1=\"50\" y1=\"" << fmt(height - 30.0) << "\" x2=\"" << fmt(width - 20.0)
     << "\" y2=\"" << fmt(height - 30.0) << "\" stroke=\"#000\"/>\n";
  os << "<line x1=\"50\" y1=\"30\" x2=\"50\" y2=\"" << fmt(height - 30.0)
     << "\" stroke=\"#000\"/>\n";
  for (double guide : {report.c1, report.c2}) {
    os << "<line x1=\"50\" y1=\"" << fmt(Y(guide)) << "\" x2=\"" << fmt(width - 20.0) << "\" y2=\""
       << fmt(Y(guide)) << "\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n";
  }
  int hue = 0;
  for (const auto& prof : report.profiles) {
    os << "<polyline fill=\"none\" stroke=\"hsl(" << (hue * 47) % 360
       << ",70%,45%)\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < prof.radii.size(); ++k)
      os << fmt(X(prof.radii[k])) << ',' << fmt(Y(prof.densities[k])) << ' ';
    os << "\"/>\n";
    ++hue;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace maxshape
