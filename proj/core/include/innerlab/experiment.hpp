#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "innerlab/circle.hpp"
#include "innerlab/hup.hpp"
#include "innerlab/inner_function.hpp"

namespace innerlab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNotCertified = 2;
inline constexpr int kExitDegreeTooSmall = 3;
inline constexpr int kExitConfigInvalid = 64;
inline constexpr int kExitNumericalFailure = 70;

/// Inner functions are given as specs: a JSON object, a fixture call such as
/// "hmr_phi1(pi)" or "blaschke_random(3, 42)", or a path to a JSON file.
struct ExperimentConfig {
  std::string subcommand;
  std::string theta;
  std::string phi;
  std::string function;
  std::string measure;  // "s:m,..." or a JSON object
  std::string fixture;  // hmr(l1, l2), blaschke_random(d, seed), cantor(depth, mass)

  std::size_t grid = 2048;
  double tail_tol = 1e-4;
  double quadrature_tol = 1e-13;
  double endpoint_exclusion = 1e-6;
  double lambda_exclusion = 1e-2;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  unsigned workers = 0;

  std::vector<double> alphas;   // clark; random when empty
  std::vector<Complex> points;  // counting; random when empty
  std::size_t samples = 100;
  std::size_t iterations = 64;  // cesaro N, dynamics orbit length
  double start_angle = -1.0;    // dynamics; random in (0, pi) when negative
  double test_center = 1.5;     // bump test function (cesaro) or moment weight centre (hup)
  double test_width = 0.3;
  int moment_max = 0;           // hup: |mu-hat(m, n)| CSV for 0 <= m, n <= moment_max
  double moment_window = 8.0;

  /// Throws ConfigInvalid.
  void validate() const;
};

ExperimentConfig parse_config(std::string_view json_text);

struct Artifact {
  std::string name;  // file name relative to out_dir
  std::string content;
};

struct RunResult {
  int exit_code = kExitOk;
  std::string summary;  // JSON
  std::vector<Artifact> artifacts;
};

/// Runs one subcommand.  Library errors are caught and mapped to exit codes:
/// ConfigInvalid and UnknownFixture to 64, everything else to 70, with a
/// diagnostic JSON summary.  Nothing is written to disk.
RunResult run(const ExperimentConfig& config);
/// run() followed by writing every artifact to out_dir.
RunResult run_and_write(const ExperimentConfig& config);

InnerFunction resolve_inner_function(const std::string& spec);
IntervalSingularMeasure resolve_measure(const std::string& spec);

/// Serialized fixture files.  Throws UnknownFixture.
std::vector<Artifact> fixture_artifacts(const std::string& name);

/// Numbers as written in configs: "2.5", "pi", "2pi", "pi^2", "4*pi".
double parse_real(std::string_view text);

}  // namespace innerlab
