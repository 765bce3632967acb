#pragma once

// Output artifacts of the command-line tool: versioned CSV tables and SVG
// curve plots. Numbers are written with 9 significant digits so that
// repeated runs are byte-identical.

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace catenoid::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kGenerator = "catenoid 1.0.0";

/// "{:.9g}"; -0 is printed as 0.
std::string format_number(double value);

/// Key/value pairs emitted as "# key=value" lines after the schema header.
using Metadata = std::vector<std::pair<std::string, std::string>>;

struct Table {
  Metadata metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(std::ostream& os, const Table& table);

enum class Frame { unit_disk, axis };

struct CurveArtifact {
  Metadata metadata;
  std::vector<double> param;
  std::vector<double> x;
  std::vector<double> y;
  Frame frame = Frame::axis;
  double frame_radius = 1.0;  // disk radius for Frame::unit_disk
};

/// Columns param, x, y.
Table curve_table(const CurveArtifact& curve);

/// SVG 1.1: one polyline plus the frame, viewport padded by 5%.
void write_svg(std::ostream& os, const CurveArtifact& curve);

}  // namespace catenoid::cli
