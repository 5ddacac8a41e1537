#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "curvebump/curvature.hpp"
#include "curvebump/density.hpp"
#include "curvebump/grid.hpp"

namespace curvebump {

/// A scalar field sampled on a grid. When `sampler` is set it evaluates the
/// same continuous field off-grid; extraction uses it for 1-D bisection and
/// for resolving ambiguous marching-squares cells.
struct ScalarFieldGrid {
  GridSpec grid;
  std::vector<double> values;
  std::function<double(const Vector&)> sampler;

  /// Field with `offset` added to every value (and to the sampler).
  ScalarFieldGrid shifted(double offset) const;
};

/// Samples (-1)^s phi(f) on every node, so every bump is the >= 0 region.
/// The returned sampler refers to `model`, which must outlive the field.
/// Throws Error(input) on dimension mismatch and Error(input) naming the node
/// when a value is not finite.
ScalarFieldGrid evaluate_field(const DensityModel& model, const CurvatureFieldSpec& spec,
                               const GridSpec& grid);

/// Builds a field from an arbitrary function; `fn` also serves as the sampler.
ScalarFieldGrid sample_function(const GridSpec& grid, std::function<double(const Vector&)> fn);

struct Polyline {
  std::vector<std::array<double, 2>> vertices;
  bool closed = false;  // closed loops repeat the first vertex at the end
};

struct TriangleMesh {
  std::vector<std::array<double, 3>> vertices;
  std::vector<std::array<int, 3>> triangles;

  /// V - E + F over the welded mesh.
  long euler_characteristic() const;
};

/// The zero level set of a field: points (d=1), polylines (d=2) or a
/// triangle mesh (d=3).
struct BoundaryGeometry {
  int dimension = 0;
  std::vector<double> points;
  std::vector<Polyline> polylines;
  TriangleMesh mesh;

  bool empty() const noexcept;
  /// Every vertex as a point in R^d (closing duplicates dropped).
  std::vector<Vector> vertices() const;
};

/// Roots of a 1-D field: strict sign changes between nodes are refined by
/// bisection on the sampler (|phi| <= 1e-10 or 80 iterations); nodes equal to
/// zero are emitted once. Without a sampler the crossing is interpolated.
BoundaryGeometry extract_zero_level_1d(const ScalarFieldGrid& field);

/// Marching squares with linear edge interpolation. Segments are chained into
/// polylines; saddle cells are split by the sign of the field at the cell
/// center (sampler if present, otherwise the corner mean).
BoundaryGeometry extract_zero_level_2d(const ScalarFieldGrid& field);

/// Marching cubes with the classic 256-case table and welded edge vertices.
/// Triangle normals point toward increasing field values.
BoundaryGeometry extract_zero_level_3d(const ScalarFieldGrid& field);

/// Dispatches on the grid dimension.
BoundaryGeometry extract_zero_level(const ScalarFieldGrid& field);

struct ComponentLabels {
  std::vector<int> labels;  // -1 outside, otherwise 0-based component id
  int count = 0;
};

/// Face-adjacent flood fill of the nodes with value >= 0.
ComponentLabels connected_components(const ScalarFieldGrid& field);
ComponentLabels connected_components(const GridSpec& grid, const std::vector<bool>& mask);

/// Symmetric Hausdorff distance between finite point sets.
/// Throws Error(undefined) if either set is empty.
double hausdorff_distance(std::span<const Vector> a, std::span<const Vector> b);

}  // namespace curvebump
