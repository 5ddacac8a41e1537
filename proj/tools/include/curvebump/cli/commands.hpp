#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "curvebump/error.hpp"

namespace curvebump::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kData = 3, kResource = 4 };

int exit_code_for(ErrorKind kind) noexcept;

/// Replicate counts below this are flagged in confidence output.
inline constexpr std::size_t kLowReplicateThreshold = 50;

struct FitConfig {
  std::string input;
  std::string columns;            // names or 1-based indices; empty = all
  std::string functional = "concave";
  std::string bandwidth = "auto";  // auto | positive real
  std::string grid = "auto";       // auto | N | N1,N2[,N3]
  std::string bounds = "auto";     // auto | lo:hi[,lo:hi...]
  std::uint64_t seed = 0;
  std::string out = "boundary.json";
  std::string svg;
};

struct ConfidenceConfig : FitConfig {
  double alpha = 0.1;
  std::size_t bootstrap = 200;
  std::optional<std::size_t> resample_size;
};

struct SimulateConfig {
  std::string experiment;             // convergence | coverage
  std::string model;                  // boomerang | normal1 | normal2 | normal3
  std::string functional = "laplacian";
  std::vector<std::size_t> sizes;     // convergence sample sizes
  std::size_t n = 400;                // coverage sample size
  std::size_t replicates = 20;
  std::string bandwidth = "auto";
  std::string grid = "auto";
  double alpha = 0.1;
  std::size_t bootstrap = 200;
  std::optional<double> zeta_override;
  double density_floor = 0.01;
  std::uint64_t seed = 1;
  std::string out = "report.json";    // .csv selects CSV, anything else JSON
};

/// Builds the boundary document; throws curvebump::Error.
nlohmann::json fit_document(const FitConfig& config);
nlohmann::json confidence_document(const ConfidenceConfig& config);

void cmd_fit(const FitConfig& config);
void cmd_confidence(const ConfidenceConfig& config);
void cmd_simulate(const SimulateConfig& config);

/// Full command line (argv[0] first). Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace curvebump::cli
