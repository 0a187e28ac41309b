#include "leeyang/zero_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "leeyang/transfer_recursion.hpp"

namespace leeyang {

namespace {

using cld = std::complex<long double>;

constexpr int kAberthIterations = 200;

void balance(Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0;
      double r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      double g = r / 2.0;
      while (c < g) {
        f *= 2.0;
        c *= 4.0;
      }
      g = r * 2.0;
      while (c > g) {
        f /= 2.0;
        c /= 4.0;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

struct Eval {
  cld value;
  cld derivative;
  long double magnitude;  // Σ |b_k w^k|
};

Eval horner_ld(const std::vector<long double>& b, cld w) {
  cld p = 0;
  cld dp = 0;
  long double mag = 0;
  const long double aw = std::abs(w);
  for (std::size_t i = b.size(); i-- > 0;) {
    dp = dp * w + p;
    p = p * w + b[i];
    mag = mag * aw + std::abs(b[i]);
  }
  return {p, dp, mag};
}

std::vector<cld> companion_seeds(const std::vector<long double>& b) {
  const int k = static_cast<int>(b.size()) - 1;
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(k, k);
  for (int j = 0; j < k; ++j) c(0, j) = -static_cast<double>(b[static_cast<std::size_t>(k - 1 - j)] / b.back());
  for (int i = 1; i < k; ++i) c(i, i - 1) = 1.0;
  balance(c);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(c, false);
  std::vector<cld> seeds;
  if (solver.info() == Eigen::Success) {
    for (int i = 0; i < k; ++i) {
      const auto e = solver.eigenvalues()[i];
      seeds.emplace_back(e.real(), e.imag());
    }
  } else {
    for (int i = 0; i < k; ++i) {
      const long double t = 2 * std::numbers::pi_v<long double> * (i + 0.25L) / k;
      seeds.emplace_back(std::cos(t), std::sin(t));
    }
  }
  // Aberth needs distinct starting points.
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(seeds[i] - seeds[j]) <= 1e-12L * (1 + std::abs(seeds[i]))) {
        seeds[i] *= cld(1 + 1e-7L * (i + 1), 1e-7L * (i + 1));
      }
    }
  }
  return seeds;
}

double distance_to_negative_axis(std::complex<double> z) {
  return z.real() < 0 ? std::abs(z.imag()) : std::abs(z);
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string_view root_class_name(RootClass c) {
  switch (c) {
    case RootClass::NegativeReal:
      return "negative-real";
    case RootClass::OffAxis:
      return "off-axis";
    case RootClass::Unstable:
      return "unstable";
  }
  return "unknown";
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Verified:
      return "LeeYangVerified";
    case Verdict::Violated:
      return "LeeYangViolated";
    case Verdict::Inconclusive:
      return "Inconclusive";
  }
  return "unknown";
}

RootResult find_roots(std::span<const double> coefficients, int window) {
  if (window < 0 || static_cast<std::size_t>(window) >= coefficients.size()) {
    throw std::invalid_argument("find_roots: window exceeds the series degree");
  }
  for (int i = 0; i <= window; ++i) {
    if (!std::isfinite(coefficients[static_cast<std::size_t>(i)])) {
      throw std::invalid_argument("find_roots: non-finite coefficient");
    }
  }
  int hi = window;
  while (hi > 0 && coefficients[static_cast<std::size_t>(hi)] == 0.0) --hi;
  if (hi == 0 && coefficients[0] == 0.0) throw std::invalid_argument("find_roots: zero polynomial");
  if (hi < window) throw std::invalid_argument("find_roots: leading coefficient of the window is zero");

  RootResult out;
  int lo = 0;
  while (coefficients[static_cast<std::size_t>(lo)] == 0.0) {
    out.roots.emplace_back(0.0, 0.0);
    ++lo;
  }
  const int k = hi - lo;
  if (k > 0) {
    // ζ = s·w with s chosen so the end coefficients have equal magnitude.
    const long double log_s =
        (std::log(std::abs(static_cast<long double>(coefficients[static_cast<std::size_t>(lo)]))) -
         std::log(std::abs(static_cast<long double>(coefficients[static_cast<std::size_t>(hi)])))) /
        k;
    const long double s = std::exp(log_s);
    std::vector<long double> b(static_cast<std::size_t>(k) + 1);
    long double peak = 0;
    for (int i = 0; i <= k; ++i) {
      b[static_cast<std::size_t>(i)] =
          static_cast<long double>(coefficients[static_cast<std::size_t>(lo + i)]) * std::exp(log_s * i);
      peak = std::max(peak, std::abs(b[static_cast<std::size_t>(i)]));
    }
    for (auto& x : b) x /= peak;

    auto w = companion_seeds(b);
    const long double eps = std::numeric_limits<long double>::epsilon();
    std::vector<bool> done(w.size(), false);
    int it = 0;
    for (; it < kAberthIterations; ++it) {
      bool all = true;
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (done[i]) continue;
        const auto e = horner_ld(b, w[i]);
        if (std::abs(e.value) <= 4 * eps * e.magnitude) {
          done[i] = true;
          continue;
        }
        all = false;
        const cld ratio = e.value / e.derivative;
        cld sum = 0;
        for (std::size_t j = 0; j < w.size(); ++j) {
          if (j != i) sum += cld(1) / (w[i] - w[j]);
        }
        const cld corr = ratio / (cld(1) - ratio * sum);
        w[i] -= corr;
        if (std::abs(corr) <= 2 * eps * std::abs(w[i])) done[i] = true;
      }
      if (all) break;
    }
    out.iterations = it;

    for (const auto& wi : w) {
      const cld z = wi * s;
      out.roots.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
    }
  }

  // Residual against the original coefficients.
  for (const auto& z : out.roots) {
    cld p = 0;
    long double peak = 0;
    cld zk = 1;
    const cld zl(z.real(), z.imag());
    for (int i = 0; i <= hi; ++i) {
      const cld term = static_cast<long double>(coefficients[static_cast<std::size_t>(i)]) * zk;
      p += term;
      peak = std::max(peak, std::abs(term));
      zk *= zl;
    }
    const double rel = peak > 0 ? static_cast<double>(std::abs(p) / peak) : 0.0;
    out.max_relative_residual = std::max(out.max_relative_residual, rel);
  }
  out.converged = out.max_relative_residual <= kRootResidualBound;
  std::sort(out.roots.begin(), out.roots.end(), [](auto a, auto b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
    return a.imag() < b.imag();
  });
  return out;
}

int default_window(int max_degree, int max_window) { return std::max(1, std::min(max_degree / 2, max_window)); }

ZeroReport classify_lee_yang(std::span<const std::complex<double>> roots, double tol) {
  return classify_lee_yang(roots, std::vector<bool>(roots.size(), true), tol);
}

ZeroReport classify_lee_yang(std::span<const std::complex<double>> roots, const std::vector<bool>& stable,
                             double tol) {
  if (stable.size() != roots.size()) throw std::invalid_argument("stability mask size mismatch");
  ZeroReport r;
  r.tolerance = tol;
  r.roots.assign(roots.begin(), roots.end());
  r.drift.assign(roots.size(), std::numeric_limits<double>::infinity());
  bool any_stable = false;
  bool all_negative = true;
  bool violated = false;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const auto z = roots[i];
    if (!stable[i]) {
      r.classes.push_back(RootClass::Unstable);
      continue;
    }
    any_stable = true;
    const double scale = 1.0 + std::abs(z);
    const double dist = distance_to_negative_axis(z);
    if (z.real() < 0 && dist <= tol * scale) {
      r.classes.push_back(RootClass::NegativeReal);
      r.gammas.push_back(-1.0 / z.real());
    } else {
      r.classes.push_back(RootClass::OffAxis);
      all_negative = false;
      if (dist > 10.0 * tol * scale) violated = true;
    }
  }
  std::sort(r.gammas.begin(), r.gammas.end(), std::greater<>());
  for (double g : r.gammas) r.gamma_sum += g;
  if (violated) {
    r.overall = Verdict::Violated;
  } else if (any_stable && all_negative) {
    r.overall = Verdict::Verified;
  } else {
    r.overall = Verdict::Inconclusive;
  }
  return r;
}

NewtonCheck newton_check(std::span<const double> a) {
  NewtonCheck out;
  for (std::size_t k = 1; k + 1 < a.size(); ++k) {
    const double lhs = a[k] * a[k];
    const double rhs = a[k - 1] * a[k + 1];
    if (lhs < rhs * (1.0 - 1e-12)) {
      out.passed = false;
      out.failures.push_back(static_cast<int>(k));
    }
  }
  return out;
}

ZeroReport analyze_ladder(std::span<const LadderStage> stages, const ZeroOptions& options) {
  if (stages.empty()) throw std::invalid_argument("analyze_ladder: no stages");
  std::vector<RootResult> results;
  bool converged = true;
  for (const auto& st : stages) {
    results.push_back(find_roots(st.coefficients, st.window));
    converged = converged && results.back().converged;
  }
  auto top = results.back().roots;
  const int keep = stages.back().report > 0 ? stages.back().report : static_cast<int>(top.size());
  if (static_cast<int>(top.size()) > keep) top.resize(static_cast<std::size_t>(keep));
  std::vector<bool> stable(top.size(), false);
  std::vector<double> drift(top.size(), std::numeric_limits<double>::infinity());
  if (results.size() >= 2) {
    const auto& prev = results[results.size() - 2].roots;
    for (std::size_t i = 0; i < top.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : prev) best = std::min(best, std::abs(top[i] - q));
      drift[i] = best / std::max(std::abs(top[i]), std::numeric_limits<double>::min());
      stable[i] = drift[i] < options.drift_tolerance;
    }
  }
  auto report = classify_lee_yang(top, stable, options.tolerance);
  report.drift = std::move(drift);
  report.converged = converged;
  for (const auto& st : stages) {
    report.truncation_degrees.push_back(st.truncation_degree);
    report.windows.push_back(st.window);
  }
  if (stages.size() >= 2) {
    report.stable_through =
        stable_through(stages[stages.size() - 2].coefficients, stages.back().coefficients, 1e-10);
  }
  if (!converged && report.overall == Verdict::Verified) report.overall = Verdict::Inconclusive;
  return report;
}

std::vector<ZeroReport> analyze_chain_ladder(std::span<const std::vector<PartitionSeries<double>>> chains,
                                            const ZeroOptions& options) {
  if (chains.size() < 2) throw std::invalid_argument("degree ladder needs at least two entries");
  const std::size_t count = chains.front().size();
  std::vector<std::vector<LadderStage>> stages(count);
  int previous = -1;
  for (const auto& chain : chains) {
    if (chain.size() != count) throw std::invalid_argument("ladder stages disagree on chain length");
    const int m = chain.front().truncation_degree;
    if (m <= previous) throw std::invalid_argument("degree ladder must be strictly increasing");
    previous = m;
    for (std::size_t n = 0; n < count; ++n) {
      const auto& a = chain[n].coefficients;
      int degree = m;
      while (degree > 1 && a[static_cast<std::size_t>(degree)] == 0.0) --degree;
      stages[n].push_back({a, m, degree, default_window(m, options.max_window)});
    }
  }
  std::vector<ZeroReport> out;
  for (std::size_t n = 0; n < count; ++n) {
    auto r = analyze_ladder(stages[n], options);
    const auto& s = chains.back()[n];
    char buf[96];
    std::snprintf(buf, sizeof buf, "N=%d D=%d J=%g %s", s.chain_length, s.dimension, s.coupling,
                  s.measure_label.c_str());
    r.label = buf;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ZeroReport> stabilize_chain(int max_chain_length, int dimension, double coupling,
                                        const RadialMeasure& measure, std::span<const int> ladder,
                                        const ZeroOptions& options) {
  if (ladder.size() < 2) throw std::invalid_argument("degree ladder needs at least two entries");
  for (std::size_t i = 1; i < ladder.size(); ++i) {
    if (ladder[i] <= ladder[i - 1]) throw std::invalid_argument("degree ladder must be strictly increasing");
  }
  std::vector<std::vector<PartitionSeries<double>>> chains;
  for (int m : ladder) chains.push_back(phi_chain<double>(max_chain_length, laplace_transform(measure, dimension, m), coupling, m));
  return analyze_chain_ladder(chains, options);
}

ZeroReport stabilize(int chain_length, int dimension, double coupling, const RadialMeasure& measure,
                     std::span<const int> ladder, const ZeroOptions& options) {
  return stabilize_chain(chain_length, dimension, coupling, measure, ladder, options).back();
}

std::vector<double> reconstruct(double a0, std::span<const double> gammas, int degree) {
  std::vector<double> c(static_cast<std::size_t>(degree) + 1, 0.0);
  c[0] = a0;
  for (double g : gammas) {
    for (std::size_t k = c.size(); k-- > 1;) c[k] += g * c[k - 1];
  }
  return c;
}

nlohmann::json to_json(const ZeroReport& r) {
  nlohmann::json j;
  j["label"] = r.label;
  j["overall"] = std::string(verdict_name(r.overall));
  j["tolerance"] = r.tolerance;
  j["converged"] = r.converged;
  j["truncation_degrees"] = r.truncation_degrees;
  j["windows"] = r.windows;
  j["stable_through"] = r.stable_through;
  auto roots = nlohmann::json::array();
  for (std::size_t i = 0; i < r.roots.size(); ++i) {
    nlohmann::json e;
    e["re"] = r.roots[i].real();
    e["im"] = r.roots[i].imag();
    e["class"] = std::string(root_class_name(r.classes[i]));
    e["drift"] = std::isfinite(r.drift[i]) ? nlohmann::json(r.drift[i]) : nlohmann::json(nullptr);
    roots.push_back(e);
  }
  j["roots"] = roots;
  j["gammas"] = r.gammas;
  j["gamma_sum"] = r.gamma_sum;
  j["gamma_sum_note"] = "partial sum over stable roots; the truncation tail is not included";
  return j;
}

std::string to_csv(const ZeroReport& r) {
  std::ostringstream os;
  os << "re,im,class,gamma\n";
  for (std::size_t i = 0; i < r.roots.size(); ++i) {
    const auto z = r.roots[i];
    os << format_double(z.real()) << ',' << format_double(z.imag()) << ',' << root_class_name(r.classes[i]) << ',';
    if (r.classes[i] == RootClass::NegativeReal) os << format_double(-1.0 / z.real());
    os << '\n';
  }
  return os.str();
}

}  // namespace leeyang
