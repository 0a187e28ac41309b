#pragma once

// Zeros of truncated series in ζ and Lee-Yang verdicts over a truncation ladder.

#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "leeyang/radial_measures.hpp"
#include "leeyang/transfer_recursion.hpp"

namespace leeyang {

enum class RootClass { NegativeReal, OffAxis, Unstable };
enum class Verdict { Verified, Violated, Inconclusive };

std::string_view root_class_name(RootClass c);
std::string_view verdict_name(Verdict v);

struct RootResult {
  std::vector<std::complex<double>> roots;  // sorted by modulus
  bool converged = true;
  int iterations = 0;
  /// max over roots of |p(ζ)| / max_k |c_k ζ^k|
  double max_relative_residual = 0.0;
};

/// All roots of c_0 + … + c_K ζ^K, K = window. Companion-matrix seeds
/// (balanced) refined by Aberth iteration in extended precision.
RootResult find_roots(std::span<const double> coefficients, int window);

/// Residual bound used to accept a root.
inline constexpr double kRootResidualBound = 1e-10;

struct ZeroOptions {
  double tolerance = 1e-6;
  double drift_tolerance = 1e-8;
  int max_window = 30;
};

/// Number of smallest-modulus roots reported for truncation degree M.
int default_window(int max_degree, int max_window = 30);

struct ZeroReport {
  std::string label;
  std::vector<std::complex<double>> roots;
  std::vector<RootClass> classes;
  std::vector<double> drift;  // relative; +inf when no ladder comparison exists
  std::vector<double> gammas;  // −1/ζ over stable negative-real roots, descending
  double gamma_sum = 0.0;
  std::vector<int> truncation_degrees;
  std::vector<int> windows;
  int stable_through = -1;
  bool converged = true;
  double tolerance = 1e-6;
  Verdict overall = Verdict::Inconclusive;
};

/// Every root is treated as stable.
ZeroReport classify_lee_yang(std::span<const std::complex<double>> roots, double tol = 1e-6);

/// Classify with an explicit stability mask (unstable roots never enter the verdict).
ZeroReport classify_lee_yang(std::span<const std::complex<double>> roots, const std::vector<bool>& stable,
                             double tol);

struct NewtonCheck {
  bool passed = true;
  std::vector<int> failures;  // indices k with a_k² < a_{k−1} a_{k+1}
};

NewtonCheck newton_check(std::span<const double> coefficients);

struct LadderStage {
  std::vector<double> coefficients;
  int truncation_degree = 0;
  /// Degree of the polynomial handed to find_roots.
  int window = 0;
  /// Smallest-modulus roots kept in the report (top stage only).
  int report = 0;
};

/// Roots at every stage; stability from the drift between the last two stages.
ZeroReport analyze_ladder(std::span<const LadderStage> stages, const ZeroOptions& options = {});

ZeroReport stabilize(int chain_length, int dimension, double coupling, const RadialMeasure& measure,
                     std::span<const int> ladder, const ZeroOptions& options = {});

/// One report per chain length; chains[i] = φ_1 … φ_N at the i-th ladder degree.
std::vector<ZeroReport> analyze_chain_ladder(std::span<const std::vector<PartitionSeries<double>>> chains,
                                            const ZeroOptions& options = {});

/// Reports for N = 1 … max_chain_length, sharing one recursion per ladder degree.
std::vector<ZeroReport> stabilize_chain(int max_chain_length, int dimension, double coupling,
                                        const RadialMeasure& measure, std::span<const int> ladder,
                                        const ZeroOptions& options = {});

/// Coefficients of a0 ∏ (1 + γ_j ζ) through the given degree.
std::vector<double> reconstruct(double a0, std::span<const double> gammas, int degree);

nlohmann::json to_json(const ZeroReport& report);
std::string to_csv(const ZeroReport& report);

}  // namespace leeyang
