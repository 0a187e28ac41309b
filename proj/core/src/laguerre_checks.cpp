#include "leeyang/laguerre_checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "leeyang/series.hpp"

namespace leeyang {

namespace {

constexpr double kRootTolerance = 1e-6;

std::vector<double> trimmed(std::vector<double> c) {
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
  return c;
}

// All zeros real and ≤ 0 (a nonzero constant qualifies).
bool real_nonpositive_roots(const std::vector<double>& poly) {
  const auto c = trimmed(poly);
  if (c.size() == 1) return c[0] != 0.0;
  for (const auto& z : find_roots(c, static_cast<int>(c.size()) - 1).roots) {
    const double scale = 1.0 + std::abs(z);
    if (std::abs(z.imag()) > kRootTolerance * scale || z.real() > kRootTolerance * scale) return false;
  }
  return true;
}

}  // namespace

std::string_view outcome_name(CheckOutcome o) {
  switch (o) {
    case CheckOutcome::Pass:
      return "pass";
    case CheckOutcome::Fail:
      return "fail";
    case CheckOutcome::Inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

ClassEvidence laguerre_evidence(std::span<const double> series, int window, int depth, std::string subject,
                                const ZeroOptions& options) {
  if (window < 1 || depth < 0) throw std::invalid_argument("laguerre_evidence: window >= 1 and depth >= 0 required");
  if (series.size() < static_cast<std::size_t>(window) + 1) {
    throw std::invalid_argument("laguerre_evidence: series shorter than window + 1");
  }
  ClassEvidence ev;
  ev.subject = std::move(subject);
  ev.derivative_depth = depth;
  bool failed = false;
  bool all_pass = true;
  for (int s = 0; s <= depth; ++s) {
    const auto d = trimmed(derivative_coefficients<double>(series, s));
    const int full = static_cast<int>(d.size()) - 1;
    const int win = std::min(window, full);

    ClassCheck newton{"newton", s, CheckOutcome::Pass, {}};
    const auto nc = newton_check(std::span<const double>(d).first(static_cast<std::size_t>(win) + 1));
    if (!nc.passed) {
      newton.outcome = CheckOutcome::Fail;
      newton.detail = "log-concavity fails at k = " + std::to_string(nc.failures.front());
    }

    ZeroReport report;
    if (win == 0) {
      report.overall = d[0] != 0.0 ? Verdict::Verified : Verdict::Inconclusive;
    } else if (full == win) {
      report = classify_lee_yang(find_roots(d, win).roots, options.tolerance);
    } else {
      const std::vector<LadderStage> stages{{d, win, win, win}, {d, full, full, win}};
      report = analyze_ladder(stages, options);
    }
    char label[64];
    std::snprintf(label, sizeof label, "derivative order %d", s);
    report.label = label;

    ClassCheck roots{"roots", s, CheckOutcome::Inconclusive, std::string(verdict_name(report.overall))};
    if (report.overall == Verdict::Verified) roots.outcome = CheckOutcome::Pass;
    if (report.overall == Verdict::Violated) roots.outcome = CheckOutcome::Fail;

    for (const auto& c : {newton, roots}) {
      failed = failed || c.outcome == CheckOutcome::Fail;
      all_pass = all_pass && c.outcome == CheckOutcome::Pass;
      ev.checks.push_back(c);
    }
    ev.reports.push_back(std::move(report));
  }
  ev.overall = failed ? CheckOutcome::Fail : (all_pass ? CheckOutcome::Pass : CheckOutcome::Inconclusive);
  return ev;
}

bool lee_yang_class_measure(const RadialMeasure& measure) {
  if (!validate_measure(measure).passed) return false;
  switch (measure.kind) {
    case MeasureKind::SphereDelta:
      return true;
    case MeasureKind::Tabulated:
      return false;
    case MeasureKind::SmoothDensity:
      break;
  }
  if (!real_nonpositive_roots(measure.f)) return false;
  const auto g = trimmed(measure.g);
  if (g.size() < 3) return false;
  const auto gp = derivative_coefficients<double>(g, 1);
  if (gp.size() == 2) return true;  // linear g′ with positive slope
  if (gp.size() == 3) {
    // g′ + c = γ + c + β s + α s²: real nonpositive zeros for some c ≥ 0 iff β ≥ 0 and γ ≤ β²/(4α).
    const double gamma = gp[0];
    const double beta = gp[1];
    const double alpha = gp[2];
    return beta >= 0.0 && gamma <= beta * beta / (4.0 * alpha);
  }
  return real_nonpositive_roots(gp);
}

bool theorem_covered(const RadialMeasure& measure, int dimension, double coupling) {
  return dimension >= 2 && dimension % 2 == 0 && coupling > 0.0 && lee_yang_class_measure(measure);
}

RadialMeasure counterexample_measure(double a) {
  char label[64];
  std::snprintf(label, sizeof label, "quartic-sextic(a=%g)", a);
  return RadialMeasure::density({1.0}, {0.0, 1.0 + a, -2.0, 1.0}, label);
}

CounterexampleScan counterexample_scan(double a_min, double a_max, double step, int dimension,
                                       std::vector<int> degrees, const ZeroOptions& options) {
  if (!(step > 0.0) || a_max < a_min) throw std::invalid_argument("counterexample_scan: invalid range");
  if (degrees.size() < 2) throw std::invalid_argument("counterexample_scan: ladder needs two degrees");
  for (std::size_t i = 1; i < degrees.size(); ++i) {
    if (degrees[i] <= degrees[i - 1]) throw std::invalid_argument("counterexample_scan: ladder must increase");
  }
  CounterexampleScan scan;
  scan.dimension = dimension;
  scan.degrees = degrees;
  const int count = static_cast<int>(std::floor((a_max - a_min) / step + 1e-9)) + 1;
  for (int i = 0; i < count; ++i) {
    const double a = a_min + i * step;
    const auto v = laplace_transform(counterexample_measure(a), dimension, degrees.back());
    std::vector<LadderStage> stages;
    for (int m : degrees) {
      std::vector<double> c(v.coefficients.begin(), v.coefficients.begin() + m + 1);
      stages.push_back({std::move(c), m, m, default_window(m, options.max_window)});
    }
    const auto report = analyze_ladder(stages, options);
    ScanPoint p;
    p.a = a;
    p.verdict = report.overall;
    for (std::size_t k = 0; k < report.roots.size(); ++k) {
      if (report.classes[k] == RootClass::Unstable) continue;
      ++p.stable_roots;
      const auto z = report.roots[k];
      const double dist = z.real() < 0 ? std::abs(z.imag()) : std::abs(z);
      if (dist > 10.0 * options.tolerance * (1.0 + std::abs(z))) p.off_axis_roots.push_back(z);
    }
    if (p.verdict == Verdict::Violated) scan.violating.push_back(a);
    scan.points.push_back(std::move(p));
  }
  return scan;
}

nlohmann::json to_json(const ClassEvidence& e) {
  nlohmann::json j;
  j["subject"] = e.subject;
  j["derivative_depth"] = e.derivative_depth;
  j["overall"] = std::string(outcome_name(e.overall));
  j["note"] = "evidence from finite truncations; not a proof of class membership";
  auto checks = nlohmann::json::array();
  for (const auto& c : e.checks) {
    checks.push_back({{"name", c.name}, {"order", c.order}, {"outcome", std::string(outcome_name(c.outcome))},
                      {"detail", c.detail}});
  }
  j["checks"] = checks;
  return j;
}

nlohmann::json to_json(const CounterexampleScan& s) {
  nlohmann::json j;
  j["dimension"] = s.dimension;
  j["degrees"] = s.degrees;
  j["violating"] = s.violating;
  auto pts = nlohmann::json::array();
  for (const auto& p : s.points) {
    auto roots = nlohmann::json::array();
    for (const auto& z : p.off_axis_roots) roots.push_back({z.real(), z.imag()});
    pts.push_back({{"a", p.a},
                   {"verdict", std::string(verdict_name(p.verdict))},
                   {"stable_roots", p.stable_roots},
                   {"off_axis_roots", roots}});
  }
  j["points"] = pts;
  return j;
}

}  // namespace leeyang
