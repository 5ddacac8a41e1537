#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <set>

#include "curvebump/error.hpp"
#include "curvebump/levelset.hpp"
#include "curvebump/random.hpp"

namespace curvebump {

long TriangleMesh::euler_characteristic() const {
  std::set<std::pair<int, int>> edges;
  for (const auto& t : triangles)
    for (int s = 0; s < 3; ++s) {
      const int a = t[s], b = t[(s + 1) % 3];
      edges.emplace(std::min(a, b), std::max(a, b));
    }
  return static_cast<long>(vertices.size()) - static_cast<long>(edges.size()) +
         static_cast<long>(triangles.size());
}

bool BoundaryGeometry::empty() const noexcept {
  return points.empty() && polylines.empty() && mesh.vertices.empty();
}

std::vector<Vector> BoundaryGeometry::vertices() const {
  std::vector<Vector> out;
  if (dimension == 1) {
    for (double p : points) out.push_back(Vector::Constant(1, p));
  } else if (dimension == 2) {
    for (const Polyline& line : polylines) {
      const std::size_t count = line.vertices.size() - (line.closed ? 1 : 0);
      for (std::size_t k = 0; k < count; ++k) {
        Vector p(2);
        p << line.vertices[k][0], line.vertices[k][1];
        out.push_back(p);
      }
    }
  } else if (dimension == 3) {
    for (const auto& v : mesh.vertices) {
      Vector p(3);
      p << v[0], v[1], v[2];
      out.push_back(p);
    }
  }
  return out;
}

ComponentLabels connected_components(const GridSpec& grid, const std::vector<bool>& mask) {
  if (mask.size() != grid.node_count())
    throw Error(ErrorKind::input, "mask size does not match the grid");
  const int d = grid.dimension();
  ComponentLabels out;
  out.labels.assign(mask.size(), -1);
  std::deque<std::size_t> queue;
  for (std::size_t seed = 0; seed < mask.size(); ++seed) {
    if (!mask[seed] || out.labels[seed] >= 0) continue;
    const int label = out.count++;
    out.labels[seed] = label;
    queue.push_back(seed);
    while (!queue.empty()) {
      const std::size_t k = queue.front();
      queue.pop_front();
      auto multi = grid.multi_index(k);
      for (int a = 0; a < d; ++a)
        for (int step : {-1, 1}) {
          const int moved = multi[a] + step;
          if (moved < 0 || moved >= grid.resolution()[a]) continue;
          auto neighbor = multi;
          neighbor[a] = moved;
          const std::size_t nk = grid.flat_index(neighbor);
          if (mask[nk] && out.labels[nk] < 0) {
            out.labels[nk] = label;
            queue.push_back(nk);
          }
        }
    }
  }
  return out;
}

ComponentLabels connected_components(const ScalarFieldGrid& field) {
  std::vector<bool> mask(field.values.size());
  for (std::size_t k = 0; k < mask.size(); ++k) mask[k] = field.values[k] >= 0.0;
  return connected_components(field.grid, mask);
}

namespace {

// Directed max-min distance with early break: once a point of `to` comes
// closer than the running maximum, the current `from` point cannot raise it.
double directed_hausdorff_squared(const std::vector<const Vector*>& from,
                                  const std::vector<const Vector*>& to) {
  double running = 0.0;
  for (const Vector* a : from) {
    double nearest = std::numeric_limits<double>::infinity();
    bool dominated = false;
    for (const Vector* b : to) {
      const double dist = (*a - *b).squaredNorm();
      if (dist < running) {
        dominated = true;
        break;
      }
      nearest = std::min(nearest, dist);
    }
    if (!dominated) running = std::max(running, nearest);
  }
  return running;
}

std::vector<const Vector*> shuffled(std::span<const Vector> points, std::uint64_t seed) {
  std::vector<const Vector*> out;
  out.reserve(points.size());
  for (const Vector& p : points) out.push_back(&p);
  Random rng(seed);
  for (std::size_t i = out.size(); i > 1; --i) std::swap(out[i - 1], out[rng.below(i)]);
  return out;
}

}  // namespace

double hausdorff_distance(std::span<const Vector> a, std::span<const Vector> b) {
  if (a.empty() || b.empty())
    throw Error(ErrorKind::undefined, "Hausdorff distance is undefined for an empty set");
  if (a.front().size() != b.front().size())
    throw Error(ErrorKind::input, "point sets have different dimensions");
  // Random visiting order makes the early break effective on ordered curves.
  const auto pa = shuffled(a, 0x5eed);
  const auto pb = shuffled(b, 0xfeed);
  return std::sqrt(std::max(directed_hausdorff_squared(pa, pb), directed_hausdorff_squared(pb, pa)));
}

}  // namespace curvebump
