#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "leeyang/field.hpp"
#include "leeyang/radial_measures.hpp"
#include "leeyang/zero_analysis.hpp"

namespace leeyang::cli {

enum class Command { Laplace, Phi, Zeros, Verify, OracleCompare, GeometrySelftest, CounterexampleScan, Sweep };

std::string command_name(Command c);

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Coupling {
  double value = 0.0;
  Rational exact;
  std::string tag;  // used in file names
};

struct ScanSettings {
  double a_min = -5.0;
  double a_max = 5.0;
  double step = 0.25;
  int dimension = 1;
  std::vector<int> degrees{40, 60};
};

struct RunConfig {
  Command command = Command::Verify;
  RadialMeasure measure = RadialMeasure::sphere(1.0, "sphere(r=1)");
  std::vector<int> chain_lengths{2};
  std::vector<int> dimensions{2};
  std::vector<Coupling> couplings;
  std::vector<int> ladder{30, 40};
  ZeroOptions zero_options;
  std::filesystem::path output_dir = "out";
  std::uint64_t seed = 1;
  Backend backend = Backend::Float;
  bool oracle = false;
  int jobs = 0;  // 0: hardware concurrency
  std::vector<double> ys{0.5, 1.0, 2.0};
  int nodes = 256;
  long long samples = 1000000;
  ScanSettings scan;
  int evidence_depth = 1;
  /// Canonical form of everything that affects numeric output.
  nlohmann::json canonical;
};

/// Command-line values that take precedence over the config file.
struct Overrides {
  std::optional<std::string> command;
  std::optional<std::filesystem::path> output_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> backend;
  bool oracle = false;
  std::optional<int> jobs;
};

/// Throws ConfigError on any malformed or out-of-range entry.
RunConfig parse_config(const nlohmann::json& j, const Overrides& overrides = {});

/// 64-bit FNV-1a of the canonical config dump, hex encoded.
std::string config_hash(const nlohmann::json& canonical);

/// Executes the pipeline and writes artifacts. Returns 0, or 1 when a Violated
/// verdict occurs inside a theorem-covered regime (or the geometry self-test fails).
int run(const RunConfig& config, std::ostream& log);

/// Full command line handling; configuration errors return 2 before any output is written.
int main_entry(int argc, char** argv);

}  // namespace leeyang::cli
