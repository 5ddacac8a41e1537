#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "curvebump/grid.hpp"
#include "curvebump/harness.hpp"
#include "curvebump/levelset.hpp"
#include "curvebump/sample.hpp"

namespace curvebump::cli {

inline constexpr int kSchemaVersion = 1;

nlohmann::json grid_json(const GridSpec& grid);

/// [{kind: points, coordinates}], [{kind: polyline, closed, vertices}, ...]
/// or [{kind: mesh, vertices, triangles}]; empty geometry gives [].
nlohmann::json pieces_json(const BoundaryGeometry& boundary);

/// Node mask as a string of '0' and '1' in grid order.
std::string mask_string(const std::vector<bool>& mask);

/// Pretty-printed with a trailing newline; doubles round-trip exactly.
std::string dump(const nlohmann::json& document);

/// Writes through a temporary file in the same directory and renames it
/// into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);

nlohmann::json report_json(const ExperimentReport& report);
/// One row per cell.
std::string report_csv(const ExperimentReport& report);

struct SvgLayer {
  const BoundaryGeometry* boundary = nullptr;
  std::string color;
  double width = 1.5;
  bool dashed = false;
};

/// Static figure for d <= 2. d=2: data points shaded by density plus
/// boundary layers. d=1: the density curve over the grid, data rug and
/// boundary points. `density_at_points` has one value per sample row;
/// `density_on_grid` is used for d=1 only.
std::string render_svg(const SampleMatrix& sample, const std::vector<double>& density_at_points,
                       const GridSpec& grid, const std::vector<double>& density_on_grid,
                       const std::vector<SvgLayer>& layers, const std::string& title);

}  // namespace curvebump::cli
