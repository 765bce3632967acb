#include "artifact.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace catenoid::cli {

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;
  return fmt::format("{:.9g}", value);
}

void write_csv(std::ostream& os, const Table& table) {
  os << "# schema=" << kSchemaVersion << '\n';
  for (const auto& [key, value] : table.metadata) {
    os << "# " << key << '=' << value << '\n';
  }
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    os << (i ? "," : "") << table.columns[i];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
}

Table curve_table(const CurveArtifact& curve) {
  Table t{curve.metadata, {"param", "x", "y"}, {}};
  t.rows.reserve(curve.x.size());
  for (std::size_t i = 0; i < curve.x.size(); ++i) {
    t.rows.push_back({format_number(curve.param[i]), format_number(curve.x[i]),
                      format_number(curve.y[i])});
  }
  return t;
}

void write_svg(std::ostream& os, const CurveArtifact& curve) {
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  double ymin = xmin;
  double ymax = -xmin;
  for (std::size_t i = 0; i < curve.x.size(); ++i) {
    xmin = std::min(xmin, curve.x[i]);
    xmax = std::max(xmax, curve.x[i]);
    ymin = std::min(ymin, curve.y[i]);
    ymax = std::max(ymax, curve.y[i]);
  }
  if (curve.frame == Frame::unit_disk) {
    const double r = curve.frame_radius;
    xmin = std::min(xmin, -r);
    xmax = std::max(xmax, r);
    ymin = std::min(ymin, -r);
    ymax = std::max(ymax, r);
  } else {
    ymin = std::min(ymin, 0.0);
  }
  if (!(xmax > xmin)) xmax = xmin + 1.0;
  if (!(ymax > ymin)) ymax = ymin + 1.0;
  const double pad = 0.05 * std::max(xmax - xmin, ymax - ymin);
  xmin -= pad;
  xmax += pad;
  ymin -= pad;
  ymax += pad;
  const double width = xmax - xmin;
  const double height = ymax - ymin;
  const double stroke = 0.004 * std::max(width, height);

  // SVG y grows downwards; flip so the plot has the usual orientation.
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"600\" "
     << "height=\"" << format_number(600.0 * height / width) << "\" viewBox=\""
     << format_number(xmin) << ' ' << format_number(-ymax) << ' '
     << format_number(width) << ' ' << format_number(height) << "\">\n";
  for (const auto& [key, value] : curve.metadata) {
    os << "<!-- " << key << '=' << value << " -->\n";
  }
  if (curve.frame == Frame::unit_disk) {
    os << "<circle cx=\"0\" cy=\"0\" r=\"" << format_number(curve.frame_radius)
       << "\" fill=\"none\" stroke=\"gray\" stroke-width=\"" << format_number(stroke)
       << "\"/>\n";
  } else {
    os << "<line x1=\"" << format_number(xmin) << "\" y1=\"0\" x2=\""
       << format_number(xmax) << "\" y2=\"0\" stroke=\"gray\" stroke-width=\""
       << format_number(stroke) << "\"/>\n";
  }
  os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\""
     << format_number(stroke) << "\" points=\"";
  for (std::size_t i = 0; i < curve.x.size(); ++i) {
    os << (i ? " " : "") << format_number(curve.x[i]) << ','
       << format_number(-curve.y[i]);
  }
  os << "\"/>\n</svg>\n";
}

}  // namespace catenoid::cli
