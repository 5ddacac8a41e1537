#include "curvebump/cli/commands.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <limits>
#include <memory>
#include <ostream>

#include <CLI11.hpp>

#include "curvebump/cli/csv.hpp"
#include "curvebump/cli/export.hpp"
#include "curvebump/curvature.hpp"
#include "curvebump/harness.hpp"
#include "curvebump/inference.hpp"
#include "curvebump/kde.hpp"
#include "curvebump/levelset.hpp"
#include "curvebump/mixture.hpp"

namespace curvebump::cli {

namespace {

double parse_real(const std::string& token, const std::string& what) {
  double v = 0.0;
  const char* begin = token.data() + (!token.empty() && token.front() == '+' ? 1 : 0);
  const auto [ptr, ec] = std::from_chars(begin, token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw Error(ErrorKind::configuration, "invalid " + what + " '" + token + "'");
  return v;
}

std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

BandwidthSpec choose_bandwidth(const std::string& option, const SampleMatrix& sample) {
  if (option.empty() || option == "auto") return select_bandwidth_normal_scale(sample, 2);
  const double h = parse_real(option, "bandwidth");
  if (!(h > 0.0) || !std::isfinite(h))
    throw Error(ErrorKind::configuration, "bandwidth must be positive");
  return BandwidthSpec::fixed(h);
}

std::vector<int> grid_resolution(const std::string& option, int d) {
  if (option.empty() || option == "auto") {
    const int nodes = d == 1 ? 1001 : (d == 2 ? 201 : 61);
    return std::vector<int>(d, nodes);
  }
  const auto parts = split_list(option, ',');
  if (parts.size() != 1 && static_cast<int>(parts.size()) != d)
    throw Error(ErrorKind::configuration, "--grid needs 1 or " + std::to_string(d) + " node counts");
  std::vector<int> res;
  for (const auto& p : parts) {
    const double v = parse_real(p, "grid size");
    if (v != std::floor(v) || v < 2 || v > 1e8)
      throw Error(ErrorKind::configuration, "grid size must be an integer >= 2");
    res.push_back(static_cast<int>(v));
  }
  if (res.size() == 1) res.assign(d, res.front());
  return res;
}

GridSpec make_grid(const std::string& grid_option, const std::string& bounds_option,
                   const SampleMatrix& sample, double h) {
  const int d = sample.dimension();
  Vector lower(d), upper(d);
  if (bounds_option.empty() || bounds_option == "auto") {
    lower = sample.lower_bounds().array() - 3.0 * h;
    upper = sample.upper_bounds().array() + 3.0 * h;
  } else {
    const auto axes = split_list(bounds_option, ',');
    if (static_cast<int>(axes.size()) != d)
      throw Error(ErrorKind::configuration,
                  "--bounds needs " + std::to_string(d) + " lo:hi ranges");
    for (int a = 0; a < d; ++a) {
      const auto ends = split_list(axes[a], ':');
      if (ends.size() != 2) throw Error(ErrorKind::configuration, "bounds range must be lo:hi");
      lower[a] = parse_real(ends[0], "bound");
      upper[a] = parse_real(ends[1], "bound");
    }
  }
  for (int a = 0; a < d; ++a)
    if (!(lower[a] < upper[a]))
      throw Error(ErrorKind::configuration, "bounds must satisfy lo < hi on every axis");
  const std::vector<int> res = grid_resolution(grid_option, d);
  double nodes = 1.0;
  for (int r : res) nodes *= r;
  if (nodes > static_cast<double>(kMaxGridNodes))
    throw Error(ErrorKind::resource, "grid has too many nodes; reduce --grid");
  return GridSpec(lower, upper, res);
}

struct Fitted {
  SampleMatrix sample;
  std::unique_ptr<KernelDensity> kde;  // field.sampler refers to it
  GridSpec grid;
  CurvatureFieldSpec spec;
  ScalarFieldGrid field;
  BoundaryGeometry boundary;
  int components;
};

Fitted fit_pipeline(const FitConfig& config) {
  const Functional functional = parse_functional(config.functional);
  const CsvTable table = read_csv(config.input);
  require_rows(table);
  SampleMatrix sample = to_sample(table, resolve_columns(table, config.columns));
  const CurvatureFieldSpec spec(functional);
  require_bump_semantics(spec, sample.dimension());
  const BandwidthSpec h = choose_bandwidth(config.bandwidth, sample);
  GridSpec grid = make_grid(config.grid, config.bounds, sample, h.h);
  auto kde = std::make_unique<KernelDensity>(sample, h);
  ScalarFieldGrid field = evaluate_field(*kde, spec, grid);
  BoundaryGeometry boundary = extract_zero_level(field);
  const int components = connected_components(field).count;
  return Fitted{std::move(sample), std::move(kde), std::move(grid), spec,
                std::move(field), std::move(boundary), components};
}

nlohmann::json base_document(const FitConfig& config, const Fitted& fit) {
  nlohmann::json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["dimension"] = fit.sample.dimension();
  doc["functional"] = to_string(fit.spec.functional());
  doc["sign_selector"] = fit.spec.sign_selector();
  doc["bandwidth"] = fit.kde->bandwidth().h;
  doc["grid"] = grid_json(fit.grid);
  doc["pieces"] = pieces_json(fit.boundary);
  doc["components"] = fit.components;
  doc["config"] = {{"input", config.input},
                   {"columns", config.columns},
                   {"bandwidth", config.bandwidth},
                   {"grid", config.grid},
                   {"bounds", config.bounds},
                   {"seed", config.seed},
                   {"n", fit.sample.size()}};
  return doc;
}

std::vector<double> density_at_points(const KernelDensity& kde) {
  const SampleMatrix& s = kde.sample();
  std::vector<double> values(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) values[i] = kde.value(s.point(i));
  return values;
}

void write_svg(const std::string& path, const Fitted& fit, const std::vector<SvgLayer>& layers,
               const std::string& title) {
  if (path.empty()) return;
  if (fit.sample.dimension() > 2)
    throw Error(ErrorKind::configuration, "--svg is only available for 1 or 2 columns");
  std::vector<double> on_grid;
  std::vector<double> at_points;
  if (fit.sample.dimension() == 1)
    on_grid = fit.kde->derivatives_on_grid(fit.grid).values;
  else
    at_points = density_at_points(*fit.kde);
  write_atomic(path, render_svg(fit.sample, at_points, fit.grid, on_grid, layers, title));
}

GaussianMixture model_by_name(const std::string& name) {
  if (name == "boomerang") return boomerang_mixture();
  if (name == "normal1") return GaussianMixture::standard_normal(1);
  if (name == "normal2") return GaussianMixture::standard_normal(2);
  if (name == "normal3") return GaussianMixture::standard_normal(3);
  throw Error(ErrorKind::configuration, "unknown model '" + name + "' (boomerang, normal1, normal2, normal3)");
}

std::string lowercase_extension(const std::string& path) {
  std::string ext = std::filesystem::path(path).extension().string();
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext;
}

}  // namespace

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::configuration:
    case ErrorKind::constraint:
    case ErrorKind::unsupported:
      return kUsage;
    case ErrorKind::resource:
      return kResource;
    default:
      return kData;
  }
}

nlohmann::json fit_document(const FitConfig& config) {
  const Fitted fit = fit_pipeline(config);
  return base_document(config, fit);
}

void cmd_fit(const FitConfig& config) {
  const Fitted fit = fit_pipeline(config);
  write_atomic(config.out, dump(base_document(config, fit)));
  write_svg(config.svg, fit, {{&fit.boundary, "#d62728", 2.0, false}},
            std::string(to_string(fit.spec.functional())) + " bump");
}

namespace {

struct ConfidenceResult {
  Fitted fit;
  ConfidenceRegionPair regions;
  ConfidenceMargin margin;
};

ConfidenceResult confidence_pipeline(const ConfidenceConfig& config) {
  const Functional functional = parse_functional(config.functional);
  if (functional != Functional::laplacian && functional != Functional::concave &&
      functional != Functional::convex && functional != Functional::hessian_determinant)
    throw Error(ErrorKind::unsupported, "inference unsupported for this functional: " +
                                            std::string(to_string(functional)));
  BootstrapPlan plan;
  plan.replicates = config.bootstrap;
  plan.resample_size = config.resample_size;
  plan.alpha = config.alpha;
  plan.seed = config.seed;
  plan.validate();

  Fitted fit = fit_pipeline(config);
  const int d = fit.sample.dimension();
  const double h = fit.kde->bandwidth().h;
  ConfidenceMargin margin;
  if (functional == Functional::laplacian) {
    const auto errors =
        bootstrap_sup_errors(*fit.kde, fit.grid, plan, {SecondOrderOperator::laplacian()});
    margin = margin_laplacian(errors.begin()->second, config.alpha);
  } else {
    const auto errors = bootstrap_sup_errors(*fit.kde, fit.grid, plan, hessian_operators(d));
    margin = functional == Functional::hessian_determinant
                 ? margin_gaussian(errors, config.alpha, h, default_gaussian_margin_scale(h))
                 : margin_eigenvalue(errors, d, config.alpha);
  }
  ConfidenceRegionPair regions = confidence_regions(fit.field, margin);
  if (!mask_subset(regions.lower_mask, regions.estimate_mask) ||
      !mask_subset(regions.estimate_mask, regions.upper_mask))
    throw Error(ErrorKind::undefined, "confidence regions are not nested");
  return ConfidenceResult{std::move(fit), std::move(regions), margin};
}

nlohmann::json confidence_json(const ConfidenceConfig& config, const ConfidenceResult& r) {
  nlohmann::json doc = base_document(config, r.fit);
  const bool finite = std::isfinite(r.margin.zeta);
  doc["zeta"] = finite ? nlohmann::json(r.margin.zeta) : nlohmann::json("inf");
  doc["margin"] = {{"method", to_string(r.margin.method)},
                   {"alpha", r.margin.alpha},
                   {"replicates", r.margin.replicates},
                   {"resample_size", config.resample_size.value_or(r.fit.sample.size())},
                   {"scale", r.margin.scale}};
  doc["low_replicate_warning"] = config.bootstrap < kLowReplicateThreshold;
  if (config.bootstrap < kLowReplicateThreshold)
    doc["warnings"] = {"bootstrap uses only " + std::to_string(config.bootstrap) +
                       " replicates; margins are unreliable below " +
                       std::to_string(kLowReplicateThreshold)};
  const GridSpec& grid = r.fit.grid;
  const auto region = [&](const BoundaryGeometry& boundary, const std::vector<bool>& mask) {
    return nlohmann::json{{"pieces", pieces_json(boundary)},
                          {"components", connected_components(grid, mask).count},
                          {"mask", mask_string(mask)}};
  };
  doc["upper"] = region(r.regions.upper, r.regions.upper_mask);
  doc["lower"] = region(r.regions.lower, r.regions.lower_mask);
  doc["estimate_mask"] = mask_string(r.regions.estimate_mask);
  doc["config"]["alpha"] = config.alpha;
  doc["config"]["bootstrap"] = config.bootstrap;
  return doc;
}

}  // namespace

nlohmann::json confidence_document(const ConfidenceConfig& config) {
  return confidence_json(config, confidence_pipeline(config));
}

void cmd_confidence(const ConfidenceConfig& config) {
  const ConfidenceResult r = confidence_pipeline(config);
  write_atomic(config.out, dump(confidence_json(config, r)));
  write_svg(config.svg, r.fit,
            {{&r.regions.upper, "#1f77b4", 1.5, true},
             {&r.fit.boundary, "#d62728", 2.0, false},
             {&r.regions.lower, "#2ca02c", 1.5, true}},
            std::string(to_string(r.fit.spec.functional())) + " bump, alpha = " +
                nlohmann::json(config.alpha).dump());
}

void cmd_simulate(const SimulateConfig& config) {
  const Functional functional = parse_functional(config.functional);
  ExperimentReport report;
  if (config.experiment == "convergence") {
    const GaussianMixture gmm = model_by_name(config.model.empty() ? "boomerang" : config.model);
    ConvergenceOptions options;
    if (!config.sizes.empty()) options.sample_sizes = config.sizes;
    options.replicates = config.replicates;
    options.seed = config.seed;
    options.density_floor = config.density_floor;
    if (config.grid != "auto")
      options.grid = default_experiment_grid(gmm.dimension(), grid_resolution(config.grid, 1).front());
    report = run_convergence_experiment(gmm, functional, options);
  } else if (config.experiment == "coverage") {
    const GaussianMixture gmm = model_by_name(config.model.empty() ? "normal1" : config.model);
    CoverageOptions options;
    options.n = config.n;
    if (config.bandwidth != "auto") {
      options.bandwidth = parse_real(config.bandwidth, "bandwidth");
      if (!(*options.bandwidth > 0.0)) throw Error(ErrorKind::configuration, "bandwidth must be positive");
    }
    options.alpha = config.alpha;
    options.bootstrap = config.bootstrap;
    options.replicates = config.replicates;
    options.seed = config.seed;
    options.zeta_override = config.zeta_override;
    if (config.grid != "auto")
      options.grid = default_experiment_grid(gmm.dimension(), grid_resolution(config.grid, 1).front());
    report = run_coverage_experiment(gmm, functional, options);
  } else {
    throw Error(ErrorKind::configuration,
                "unknown experiment '" + config.experiment + "' (convergence, coverage)");
  }
  write_atomic(config.out, lowercase_extension(config.out) == ".csv" ? report_csv(report)
                                                                     : dump(report_json(report)));
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Curvature bumps of kernel density estimates", "curvebump"};
  app.require_subcommand(1);

  FitConfig fit;
  ConfidenceConfig conf;
  SimulateConfig sim;

  const auto common = [](CLI::App* cmd, FitConfig& c) {
    cmd->add_option("--input", c.input, "CSV file of points")->required();
    cmd->add_option("--columns", c.columns, "Column names or 1-based indices, comma separated");
    cmd->add_option("--functional", c.functional,
                    "concave, convex, laplacian, mean-curvature, hessian-determinant, gaussian-curvature");
    cmd->add_option("--bandwidth", c.bandwidth, "auto or a positive real");
    cmd->add_option("--grid", c.grid, "auto, N, or N1,N2[,N3] nodes per axis");
    cmd->add_option("--bounds", c.bounds, "auto or lo:hi per axis, comma separated");
    cmd->add_option("--seed", c.seed, "Random seed");
    cmd->add_option("--out", c.out, "Output JSON path");
    cmd->add_option("--svg", c.svg, "Optional SVG figure path (1 or 2 columns)");
  };

  CLI::App* fit_cmd = app.add_subcommand("fit", "Estimate a curvature bump and write its boundary");
  common(fit_cmd, fit);

  CLI::App* conf_cmd = app.add_subcommand("confidence", "Bootstrap confidence regions for a bump");
  common(conf_cmd, conf);
  conf_cmd->add_option("--alpha", conf.alpha, "Miscoverage level in (0, 1)");
  conf_cmd->add_option("--bootstrap", conf.bootstrap, "Bootstrap replicates");
  std::size_t resample_size = 0;
  CLI::Option* resample_opt =
      conf_cmd->add_option("--resample-size", resample_size, "Bootstrap resample size (default n)");

  CLI::App* sim_cmd = app.add_subcommand("simulate", "Run a Monte-Carlo experiment on a Gaussian mixture");
  sim_cmd->add_option("experiment", sim.experiment, "convergence or coverage")->required();
  sim_cmd->add_option("--model", sim.model, "boomerang, normal1, normal2 or normal3");
  sim_cmd->add_option("--functional", sim.functional, "Bump functional");
  sim_cmd->add_option("--sizes", sim.sizes, "Convergence sample sizes")->delimiter(',');
  sim_cmd->add_option("--n", sim.n, "Coverage sample size");
  sim_cmd->add_option("--replicates", sim.replicates, "Monte-Carlo replicates");
  sim_cmd->add_option("--bandwidth", sim.bandwidth, "Coverage bandwidth: auto or a positive real");
  sim_cmd->add_option("--grid", sim.grid, "auto or nodes per axis");
  sim_cmd->add_option("--density-floor", sim.density_floor,
                      "Convergence: compare boundaries where f >= floor * max f (0 = whole grid)");
  sim_cmd->add_option("--alpha", sim.alpha, "Miscoverage level");
  sim_cmd->add_option("--bootstrap", sim.bootstrap, "Bootstrap replicates");
  std::string zeta_override;
  sim_cmd->add_option("--zeta-override", zeta_override, "Force the margin (number or inf)");
  sim_cmd->add_option("--seed", sim.seed, "Random seed");
  sim_cmd->add_option("--out", sim.out, "Report path (.csv or .json)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kUsage;
  }

  try {
    if (fit_cmd->parsed()) {
      cmd_fit(fit);
      out << "wrote " << fit.out << "\n";
    } else if (conf_cmd->parsed()) {
      if (resample_opt->count() > 0) conf.resample_size = resample_size;
      cmd_confidence(conf);
      if (conf.bootstrap < kLowReplicateThreshold)
        err << "warning: only " << conf.bootstrap << " bootstrap replicates\n";
      out << "wrote " << conf.out << "\n";
    } else if (sim_cmd->parsed()) {
      if (!zeta_override.empty())
        sim.zeta_override = zeta_override == "inf" ? std::numeric_limits<double>::infinity()
                                                   : parse_real(zeta_override, "zeta override");
      cmd_simulate(sim);
      out << "wrote " << sim.out << "\n";
    }
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::bad_alloc&) {
    err << "error (resource): out of memory\n";
    return kResource;
  }
  return kOk;
}

}  // namespace curvebump::cli
