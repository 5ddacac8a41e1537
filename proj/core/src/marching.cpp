#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>

#include "curvebump/error.hpp"
#include "curvebump/levelset.hpp"

namespace curvebump {

namespace {

constexpr double kBisectionTolerance = 1e-10;
constexpr int kBisectionIterations = 80;

bool inside(double v) noexcept { return v >= 0.0; }

// Fraction along a -> b where the linear interpolant vanishes.
double crossing(double va, double vb) noexcept {
  if (va == vb) return 0.5;
  return std::clamp(va / (va - vb), 0.0, 1.0);
}

}  // namespace

BoundaryGeometry extract_zero_level_1d(const ScalarFieldGrid& field) {
  const GridSpec& grid = field.grid;
  if (grid.dimension() != 1) throw Error(ErrorKind::input, "1-D extraction needs a 1-D grid");
  BoundaryGeometry out;
  out.dimension = 1;
  const std::vector<double>& v = field.values;
  const int n = grid.resolution()[0];
  for (int k = 0; k < n; ++k) {
    if (v[k] == 0.0) {
      out.points.push_back(grid.coordinate(0, k));
      continue;
    }
    if (k + 1 >= n || v[k + 1] == 0.0 || (v[k] > 0.0) == (v[k + 1] > 0.0)) continue;
    double lo = grid.coordinate(0, k);
    double hi = grid.coordinate(0, k + 1);
    if (!field.sampler) {
      out.points.push_back(lo + crossing(v[k], v[k + 1]) * (hi - lo));
      continue;
    }
    const bool lo_positive = v[k] > 0.0;
    double mid = 0.5 * (lo + hi);
    Vector x(1);
    for (int it = 0; it < kBisectionIterations; ++it) {
      mid = 0.5 * (lo + hi);
      x[0] = mid;
      const double fm = field.sampler(x);
      if (std::abs(fm) <= kBisectionTolerance) break;
      if ((fm > 0.0) == lo_positive)
        lo = mid;
      else
        hi = mid;
    }
    out.points.push_back(mid);
  }
  std::sort(out.points.begin(), out.points.end());
  return out;
}

BoundaryGeometry extract_zero_level_2d(const ScalarFieldGrid& field) {
  const GridSpec& grid = field.grid;
  if (grid.dimension() != 2) throw Error(ErrorKind::input, "2-D extraction needs a 2-D grid");
  const int nx = grid.resolution()[0];
  const int ny = grid.resolution()[1];
  const std::vector<double>& v = field.values;
  auto node = [ny](int ix, int iy) { return static_cast<std::size_t>(ix) * ny + iy; };
  // Edge ids: x-directed edges first, then y-directed edges.
  const std::int64_t x_edges = static_cast<std::int64_t>(nx - 1) * ny;
  auto x_edge = [ny](int ix, int iy) { return static_cast<std::int64_t>(ix) * ny + iy; };
  auto y_edge = [ny, x_edges](int ix, int iy) {
    return x_edges + static_cast<std::int64_t>(ix) * (ny - 1) + iy;
  };

  std::unordered_map<std::int64_t, std::array<double, 2>> points;
  std::unordered_map<std::int64_t, std::array<std::int64_t, 2>> links;
  auto add_link = [&links](std::int64_t from, std::int64_t to) {
    auto [it, fresh] = links.try_emplace(from, std::array<std::int64_t, 2>{-1, -1});
    auto& slot = it->second;
    if (slot[0] < 0)
      slot[0] = to;
    else
      slot[1] = to;
  };
  auto edge_point = [&](std::int64_t id, int ax, int ay, int bx, int by) {
    if (points.contains(id)) return;
    const double t = crossing(v[node(ax, ay)], v[node(bx, by)]);
    const double x0 = grid.coordinate(0, ax), y0 = grid.coordinate(1, ay);
    const double x1 = grid.coordinate(0, bx), y1 = grid.coordinate(1, by);
    points[id] = {x0 + t * (x1 - x0), y0 + t * (y1 - y0)};
  };

  for (int ix = 0; ix + 1 < nx; ++ix) {
    for (int iy = 0; iy + 1 < ny; ++iy) {
      const double v00 = v[node(ix, iy)], v10 = v[node(ix + 1, iy)];
      const double v11 = v[node(ix + 1, iy + 1)], v01 = v[node(ix, iy + 1)];
      const bool b0 = inside(v00), b1 = inside(v10), b2 = inside(v11), b3 = inside(v01);
      if (b0 == b1 && b1 == b2 && b2 == b3) continue;
      const std::int64_t bottom = x_edge(ix, iy), top = x_edge(ix, iy + 1);
      const std::int64_t left = y_edge(ix, iy), right = y_edge(ix + 1, iy);
      if (b0 != b1) edge_point(bottom, ix, iy, ix + 1, iy);
      if (b1 != b2) edge_point(right, ix + 1, iy, ix + 1, iy + 1);
      if (b3 != b2) edge_point(top, ix, iy + 1, ix + 1, iy + 1);
      if (b0 != b3) edge_point(left, ix, iy, ix, iy + 1);

      auto segment = [&](std::int64_t a, std::int64_t b) {
        add_link(a, b);
        add_link(b, a);
      };
      if (b0 == b2 && b1 == b3) {
        double center;
        if (field.sampler) {
          Vector c(2);
          c << 0.5 * (grid.coordinate(0, ix) + grid.coordinate(0, ix + 1)),
              0.5 * (grid.coordinate(1, iy) + grid.coordinate(1, iy + 1));
          center = field.sampler(c);
        } else {
          center = 0.25 * (v00 + v10 + v11 + v01);
        }
        if (inside(center) == b0) {
          // Corners 0 and 2 join through the center; cut off corners 1 and 3.
          segment(bottom, right);
          segment(top, left);
        } else {
          segment(left, bottom);
          segment(right, top);
        }
        continue;
      }
      std::int64_t ends[2];
      int count = 0;
      if (b0 != b1) ends[count++] = bottom;
      if (b1 != b2) ends[count++] = right;
      if (b3 != b2) ends[count++] = top;
      if (b0 != b3) ends[count++] = left;
      segment(ends[0], ends[1]);
    }
  }

  BoundaryGeometry out;
  out.dimension = 2;
  std::unordered_set<std::int64_t> visited;
  std::vector<std::int64_t> order;
  order.reserve(links.size());
  for (const auto& [id, _] : links) order.push_back(id);
  std::sort(order.begin(), order.end());

  auto walk = [&](std::int64_t start) {
    Polyline line;
    std::int64_t previous = -1, current = start;
    while (true) {
      visited.insert(current);
      line.vertices.push_back(points.at(current));
      const auto& next = links.at(current);
      std::int64_t step = -1;
      for (std::int64_t candidate : next)
        if (candidate >= 0 && candidate != previous && !visited.contains(candidate)) {
          step = candidate;
          break;
        }
      if (step < 0) {
        const bool closes = line.vertices.size() > 2 &&
                            (next[0] == start || next[1] == start) && current != start;
        if (closes) {
          line.vertices.push_back(points.at(start));
          line.closed = true;
        }
        break;
      }
      previous = current;
      current = step;
    }
    if (line.vertices.size() >= 2) out.polylines.push_back(std::move(line));
  };

  // Open chains start at domain-boundary ends; the rest are loops.
  for (std::int64_t id : order) {
    const auto& l = links.at(id);
    if (!visited.contains(id) && (l[0] < 0 || l[1] < 0)) walk(id);
  }
  for (std::int64_t id : order)
    if (!visited.contains(id)) walk(id);
  return out;
}

namespace {

// Corner offsets and edge endpoints in the classic table's numbering.
constexpr int kCorner[8][3] = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                               {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
constexpr int kEdge[12][2] = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 5}, {5, 6},
                              {6, 7}, {7, 4}, {0, 4}, {1, 5}, {2, 6}, {3, 7}};

constexpr signed char kTriangleTable[256][16] = {
#include "marching_cubes_table.inc"
};

}  // namespace

BoundaryGeometry extract_zero_level_3d(const ScalarFieldGrid& field) {
  const GridSpec& grid = field.grid;
  if (grid.dimension() != 3) throw Error(ErrorKind::input, "3-D extraction needs a 3-D grid");
  const int nx = grid.resolution()[0], ny = grid.resolution()[1], nz = grid.resolution()[2];
  const std::vector<double>& v = field.values;
  auto flat = [ny, nz](int ix, int iy, int iz) {
    return (static_cast<std::size_t>(ix) * ny + iy) * nz + iz;
  };

  BoundaryGeometry out;
  out.dimension = 3;
  TriangleMesh& mesh = out.mesh;
  std::unordered_map<std::int64_t, int> edge_vertex;

  auto vertex_on = [&](const int (&a)[3], const int (&b)[3]) {
    // Grid edges are keyed by their lower endpoint and axis.
    int lower[3] = {std::min(a[0], b[0]), std::min(a[1], b[1]), std::min(a[2], b[2])};
    const int axis = a[0] != b[0] ? 0 : (a[1] != b[1] ? 1 : 2);
    const std::int64_t key =
        static_cast<std::int64_t>(flat(lower[0], lower[1], lower[2])) * 3 + axis;
    if (auto it = edge_vertex.find(key); it != edge_vertex.end()) return it->second;
    const double va = v[flat(a[0], a[1], a[2])];
    const double vb = v[flat(b[0], b[1], b[2])];
    const double t = crossing(va, vb);
    std::array<double, 3> p{};
    for (int ax = 0; ax < 3; ++ax) {
      const double ca = grid.coordinate(ax, a[ax]);
      const double cb = grid.coordinate(ax, b[ax]);
      p[ax] = ca + t * (cb - ca);
    }
    const int index = static_cast<int>(mesh.vertices.size());
    mesh.vertices.push_back(p);
    edge_vertex.emplace(key, index);
    return index;
  };

  for (int ix = 0; ix + 1 < nx; ++ix)
    for (int iy = 0; iy + 1 < ny; ++iy)
      for (int iz = 0; iz + 1 < nz; ++iz) {
        int corners[8][3];
        int cube = 0;
        for (int c = 0; c < 8; ++c) {
          corners[c][0] = ix + kCorner[c][0];
          corners[c][1] = iy + kCorner[c][1];
          corners[c][2] = iz + kCorner[c][2];
          if (!inside(v[flat(corners[c][0], corners[c][1], corners[c][2])])) cube |= 1 << c;
        }
        if (cube == 0 || cube == 255) continue;
        const signed char* row = kTriangleTable[cube];
        for (int t = 0; row[t] >= 0; t += 3) {
          std::array<int, 3> tri;
          for (int s = 0; s < 3; ++s) {
            const int e = row[t + s];
            tri[s] = vertex_on(corners[kEdge[e][0]], corners[kEdge[e][1]]);
          }
          // Table winding faces the set corners; flip so normals point inward.
          std::swap(tri[1], tri[2]);
          mesh.triangles.push_back(tri);
        }
      }
  return out;
}

BoundaryGeometry extract_zero_level(const ScalarFieldGrid& field) {
  switch (field.grid.dimension()) {
    case 1: return extract_zero_level_1d(field);
    case 2: return extract_zero_level_2d(field);
    case 3: return extract_zero_level_3d(field);
  }
  throw Error(ErrorKind::input, "extraction supports dimensions 1 to 3");
}

}  // namespace curvebump
