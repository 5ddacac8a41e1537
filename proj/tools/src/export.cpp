#include "curvebump/cli/export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "curvebump/error.hpp"

namespace curvebump::cli {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
  return quoted + "\"";
}

std::string shortest(double v) {
  nlohmann::json j = v;
  return j.dump();
}

// Viridis-like ramp, t in [0, 1].
std::string ramp(double t) {
  static constexpr double stops[5][3] = {
      {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}};
  t = std::clamp(t, 0.0, 1.0) * 4.0;
  const int k = std::min(3, static_cast<int>(t));
  const double f = t - k;
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                static_cast<int>(std::lround(stops[k][0] + f * (stops[k + 1][0] - stops[k][0]))),
                static_cast<int>(std::lround(stops[k][1] + f * (stops[k + 1][1] - stops[k][1]))),
                static_cast<int>(std::lround(stops[k][2] + f * (stops[k + 1][2] - stops[k][2]))));
  return buf;
}

}  // namespace

nlohmann::json grid_json(const GridSpec& grid) {
  nlohmann::json j;
  j["lower"] = std::vector<double>(grid.lower().data(), grid.lower().data() + grid.dimension());
  j["upper"] = std::vector<double>(grid.upper().data(), grid.upper().data() + grid.dimension());
  j["resolution"] = grid.resolution();
  return j;
}

nlohmann::json pieces_json(const BoundaryGeometry& boundary) {
  nlohmann::json pieces = nlohmann::json::array();
  if (boundary.empty()) return pieces;
  switch (boundary.dimension) {
    case 1:
      pieces.push_back({{"kind", "points"}, {"coordinates", boundary.points}});
      break;
    case 2:
      for (const Polyline& line : boundary.polylines)
        pieces.push_back({{"kind", "polyline"}, {"closed", line.closed}, {"vertices", line.vertices}});
      break;
    default:
      pieces.push_back({{"kind", "mesh"},
                        {"vertices", boundary.mesh.vertices},
                        {"triangles", boundary.mesh.triangles},
                        {"euler_characteristic", boundary.mesh.euler_characteristic()}});
  }
  return pieces;
}

std::string mask_string(const std::vector<bool>& mask) {
  std::string s(mask.size(), '0');
  for (std::size_t k = 0; k < mask.size(); ++k)
    if (mask[k]) s[k] = '1';
  return s;
}

std::string dump(const nlohmann::json& document) { return document.dump(2) + "\n"; }

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path target = path.empty() ? std::filesystem::path("out") : path;
  std::filesystem::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::input, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error(ErrorKind::input, "write failed for " + target.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorKind::input, "cannot move output into place at " + target.string());
  }
}

nlohmann::json report_json(const ExperimentReport& report) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["experiment"] = report.experiment;
  j["config"] = report.config;
  j["cells"] = nlohmann::json::array();
  for (const ExperimentCell& cell : report.cells) {
    nlohmann::json c;
    c["label"] = cell.label;
    c["n"] = cell.n;
    c["bandwidth"] = cell.bandwidth;
    c["mean"] = std::isfinite(cell.mean) ? nlohmann::json(cell.mean) : nlohmann::json(nullptr);
    c["sd"] = cell.sd;
    c["replicates"] = cell.replicates;
    c["failures"] = cell.failures;
    c["seeds"] = cell.seeds;
    c["values"] = cell.values;
    for (const auto& [key, value] : cell.extra) c[key] = value;
    j["cells"].push_back(std::move(c));
  }
  return j;
}

std::string report_csv(const ExperimentReport& report) {
  std::vector<std::string> extra;
  for (const ExperimentCell& cell : report.cells)
    for (const auto& kv : cell.extra)
      if (std::find(extra.begin(), extra.end(), kv.first) == extra.end()) extra.push_back(kv.first);
  std::ostringstream out;
  out << "experiment,label,n,bandwidth,mean,sd,replicates,failures";
  for (const auto& key : extra) out << ',' << csv_field(key);
  out << ",seeds\n";
  for (const ExperimentCell& cell : report.cells) {
    out << csv_field(report.experiment) << ',' << csv_field(cell.label) << ',' << cell.n << ','
        << shortest(cell.bandwidth) << ',' << (std::isfinite(cell.mean) ? shortest(cell.mean) : "")
        << ',' << shortest(cell.sd) << ',' << cell.replicates << ',' << cell.failures;
    for (const auto& key : extra) {
      out << ',';
      if (auto it = cell.extra.find(key); it != cell.extra.end()) out << shortest(it->second);
    }
    std::string seeds;
    for (std::size_t k = 0; k < cell.seeds.size(); ++k)
      seeds += (k ? " " : "") + std::to_string(cell.seeds[k]);
    out << ',' << seeds << '\n';
  }
  return out.str();
}

std::string render_svg(const SampleMatrix& sample, const std::vector<double>& density_at_points,
                       const GridSpec& grid, const std::vector<double>& density_on_grid,
                       const std::vector<SvgLayer>& layers, const std::string& title) {
  const int d = grid.dimension();
  if (d > 2) throw Error(ErrorKind::configuration, "SVG export is only available for d <= 2");
  constexpr double W = 640.0, H = 520.0, M = 40.0;
  const double x0 = grid.lower()[0], x1 = grid.upper()[0];
  double y0 = 0.0, y1 = 1.0;
  if (d == 2) {
    y0 = grid.lower()[1];
    y1 = grid.upper()[1];
  } else {
    y1 = 1.05 * std::max(1e-300, *std::max_element(density_on_grid.begin(), density_on_grid.end()));
  }
  const auto px = [&](double x) { return M + (x - x0) / (x1 - x0) * (W - 2 * M); };
  const auto py = [&](double y) { return H - M - (y - y0) / (y1 - y0) * (H - 2 * M); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<rect x=\"" << M << "\" y=\"" << M << "\" width=\"" << W - 2 * M << "\" height=\""
      << H - 2 * M << "\" fill=\"none\" stroke=\"#888\"/>\n";
  svg << "<text x=\"" << M << "\" y=\"" << M - 12 << "\" font-family=\"sans-serif\" font-size=\"14\">"
      << title << "</text>\n";

  const double dmax = density_at_points.empty()
                          ? 1.0
                          : std::max(1e-300, *std::max_element(density_at_points.begin(),
                                                               density_at_points.end()));
  if (d == 2) {
    std::vector<std::size_t> order(sample.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    if (!density_at_points.empty())
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return density_at_points[a] < density_at_points[b];
      });
    svg << "<g stroke=\"none\">\n";
    for (std::size_t i : order) {
      const double t = density_at_points.empty() ? 0.5 : density_at_points[i] / dmax;
      svg << "<circle cx=\"" << fmt(px(sample.at(i, 0))) << "\" cy=\"" << fmt(py(sample.at(i, 1)))
          << "\" r=\"2\" fill=\"" << ramp(t) << "\" fill-opacity=\"0.7\"/>\n";
    }
    svg << "</g>\n";
  } else {
    svg << "<polyline fill=\"none\" stroke=\"#333\" stroke-width=\"1.5\" points=\"";
    for (int k = 0; k < grid.resolution()[0]; ++k)
      svg << (k ? " " : "") << fmt(px(grid.coordinate(0, k))) << ',' << fmt(py(density_on_grid[k]));
    svg << "\"/>\n<g stroke=\"#555\" stroke-opacity=\"0.4\">\n";
    const std::size_t step = std::max<std::size_t>(1, sample.size() / 2000);
    for (std::size_t i = 0; i < sample.size(); i += step) {
      const double x = px(sample.at(i, 0));
      svg << "<line x1=\"" << fmt(x) << "\" x2=\"" << fmt(x) << "\" y1=\"" << H - M << "\" y2=\""
          << H - M - 8 << "\"/>\n";
    }
    svg << "</g>\n";
  }

  for (const SvgLayer& layer : layers) {
    if (!layer.boundary) continue;
    const std::string dash = layer.dashed ? " stroke-dasharray=\"6 4\"" : "";
    if (d == 2) {
      for (const Polyline& line : layer.boundary->polylines) {
        svg << "<polyline fill=\"none\" stroke=\"" << layer.color << "\" stroke-width=\""
            << layer.width << '"' << dash << " points=\"";
        for (std::size_t k = 0; k < line.vertices.size(); ++k)
          svg << (k ? " " : "") << fmt(px(line.vertices[k][0])) << ',' << fmt(py(line.vertices[k][1]));
        svg << "\"/>\n";
      }
    } else {
      for (double x : layer.boundary->points)
        svg << "<line x1=\"" << fmt(px(x)) << "\" x2=\"" << fmt(px(x)) << "\" y1=\"" << M
            << "\" y2=\"" << H - M << "\" stroke=\"" << layer.color << "\" stroke-width=\""
            << layer.width << '"' << dash << "/>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace curvebump::cli
