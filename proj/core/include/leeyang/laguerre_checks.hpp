#pragma once

// Truncation-level evidence for membership in the Laguerre class and its
// derived classes (f, f′, …, f⁽ˢ⁾ all real-rooted with nonpositive zeros).
// A finite truncation cannot certify membership; results are evidence only.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "leeyang/radial_measures.hpp"
#include "leeyang/zero_analysis.hpp"

namespace leeyang {

enum class CheckOutcome { Pass, Fail, Inconclusive };

std::string_view outcome_name(CheckOutcome o);

struct ClassCheck {
  std::string name;
  int order = 0;
  CheckOutcome outcome = CheckOutcome::Inconclusive;
  std::string detail;
};

struct ClassEvidence {
  std::string subject;
  int derivative_depth = 0;
  std::vector<ClassCheck> checks;
  /// Roots classified at each derivative order.
  std::vector<ZeroReport> reports;
  CheckOutcome overall = CheckOutcome::Inconclusive;
};

/// For s = 0 … depth: Newton inequalities on the first window+1 coefficients of
/// the s-th derivative, and root classification. Roots of the degree-window
/// truncation are compared with the full-length truncation; only roots that
/// agree (relative drift < 1e-8) enter the verdict. A derivative no longer
/// than window+1 is treated as an exact polynomial.
ClassEvidence laguerre_evidence(std::span<const double> series, int window, int depth, std::string subject = {},
                                const ZeroOptions& options = {});

/// True when the polynomial profile satisfies the sufficient conditions for the
/// Lee-Yang property at every D: f has only real nonpositive zeros, deg g ≥ 2,
/// and g′ + c has only real nonpositive zeros for some c ≥ 0 (the shift is
/// absorbed into f as e^{cs}). Sphere measures always qualify.
bool lee_yang_class_measure(const RadialMeasure& measure);

/// Even D, J > 0, validated measure of a Lee-Yang class.
bool theorem_covered(const RadialMeasure& measure, int dimension, double coupling);

struct ScanPoint {
  double a = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<std::complex<double>> off_axis_roots;  // stable, beyond 10·tol
  int stable_roots = 0;
};

struct CounterexampleScan {
  int dimension = 1;
  std::vector<int> degrees;  // truncation ladder
  std::vector<ScanPoint> points;
  std::vector<double> violating;  // a values with a Violated verdict
};

/// τ(s) = exp(−a s − s (s − 1)²), i.e. f = 1, g = (1 + a) s − 2 s² + s³.
RadialMeasure counterexample_measure(double a);

CounterexampleScan counterexample_scan(double a_min = -5.0, double a_max = 5.0, double step = 0.25,
                                       int dimension = 1, std::vector<int> degrees = {40, 60},
                                       const ZeroOptions& options = {});

nlohmann::json to_json(const ClassEvidence& e);
nlohmann::json to_json(const CounterexampleScan& s);

}  // namespace leeyang
