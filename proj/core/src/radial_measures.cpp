#include "leeyang/radial_measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "leeyang/series.hpp"

namespace leeyang {

namespace {

double poly_eval(const std::vector<double>& c, double s) {
  return horner(std::span<const double>(c), s);
}

int effective_degree(const std::vector<double>& c) {
  int d = static_cast<int>(c.size()) - 1;
  while (d >= 0 && c[static_cast<std::size_t>(d)] == 0.0) --d;
  return d;
}

std::string default_label(const RadialMeasure& m) {
  char buf[64];
  switch (m.kind) {
    case MeasureKind::SphereDelta:
      std::snprintf(buf, sizeof buf, "sphere(r=%g)", m.radius);
      return buf;
    case MeasureKind::SmoothDensity:
      return "density";
    case MeasureKind::Tabulated:
      return "tabulated";
  }
  return "measure";
}

// log of 4ⁿ n! Γ(h+n).
double log_wd_divisor(int n, double half_dim) {
  return n * std::log(4.0) + std::lgamma(n + 1.0) + std::lgamma(half_dim + n);
}

// ∫_0^∞ r^k τ(r) dr = exp(log_scale) · value, for τ = f·exp(−g). Evaluated
// through r = σ², which removes the r^{-1/2} singularity at k = −1/2.
struct ScaledMoment {
  double log_scale = 0.0;
  double value = 0.0;
};

ScaledMoment density_moment(const RadialMeasure& m, double k) {
  const double power = 2.0 * k + 1.0;
  auto exponent = [&](double sigma) {
    const double lead = power == 0.0 ? 0.0 : power * std::log(sigma);
    return lead - poly_eval(m.g, sigma * sigma);
  };

  // Bracket the integrand: find the peak and a cutoff where it has decayed
  // below 1e-16 of the peak value.
  double hi = 1.0;
  double log_peak = -std::numeric_limits<double>::infinity();
  double peak_at = 0.0;
  constexpr int kScan = 400;
  for (int iter = 0; iter < 200; ++iter) {
    for (int i = 1; i <= kScan; ++i) {
      const double s = hi * i / kScan;
      const double e = exponent(s);
      if (e > log_peak) {
        log_peak = e;
        peak_at = s;
      }
    }
    if (hi > peak_at && exponent(hi) < log_peak - 45.0) break;
    hi *= 1.5;
    if (hi > 1e6) {
      throw NumericalError("moment integrand does not decay: profile is heavy-tailed");
    }
  }

  auto integrand = [&](double sigma) {
    const double e = exponent(sigma) - log_peak;
    if (!std::isfinite(e)) return 0.0;
    return 2.0 * poly_eval(m.f, sigma * sigma) * std::exp(e);
  };

  // Fixed 61-point Gauss–Kronrod panels on [0, peak] and [peak, hi], doubled
  // until the summed Kronrod–Gauss differences meet the tolerance.
  using boost::math::quadrature::gauss_kronrod;
  constexpr double kTol = 1e-13;
  double value = 0.0;
  double err = 0.0;
  for (int panels = 4; panels <= 4096; panels *= 2) {
    value = 0.0;
    err = 0.0;
    for (const auto& [a, b] : {std::pair{0.0, peak_at}, std::pair{peak_at, hi}}) {
      if (b <= a) continue;
      const double w = (b - a) / panels;
      for (int i = 0; i < panels; ++i) {
        double e = 0.0;
        value += gauss_kronrod<double, 61>::integrate(integrand, a + i * w, a + (i + 1) * w, 0, 0.0, &e);
        err += e;
      }
    }
    if (std::isfinite(value) && err <= kTol * std::abs(value)) break;
  }
  if (!std::isfinite(value) || err > 1e-12 * std::abs(value)) {
    throw NumericalError("moment quadrature did not reach relative tolerance 1e-12");
  }
  return {log_peak, value};
}

double tabulated_moment(const RadialMeasure& m, double k) {
  std::vector<double> s;
  std::vector<double> y;
  s.reserve(m.samples.size());
  y.reserve(m.samples.size());
  for (const auto& [si, ti] : m.samples) {
    if (si == 0.0 && k < 0.0) {
      throw std::invalid_argument("tabulated moment with negative power needs s > 0 samples");
    }
    s.push_back(si);
    y.push_back(ti * (k == 0.0 ? 1.0 : std::pow(si, k)));
  }
  return simpson(s, y);
}

template <CoefficientField T>
T integer_power(const T& base, int e) {
  T acc(1);
  for (int i = 0; i < e; ++i) acc *= base;
  return acc;
}

}  // namespace

double simpson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("simpson needs at least two matching samples");
  }
  double total = 0.0;
  std::size_t i = 0;
  for (; i + 2 < x.size(); i += 2) {
    const double h0 = x[i + 1] - x[i];
    const double h1 = x[i + 2] - x[i + 1];
    const double hs = h0 + h1;
    total += hs / 6.0 * ((2.0 - h1 / h0) * y[i] + hs * hs / (h0 * h1) * y[i + 1] + (2.0 - h0 / h1) * y[i + 2]);
  }
  if (i + 1 < x.size()) {
    total += 0.5 * (x[i + 1] - x[i]) * (y[i] + y[i + 1]);
  }
  return total;
}

std::string_view measure_kind_name(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::SphereDelta:
      return "sphere";
    case MeasureKind::SmoothDensity:
      return "density";
    case MeasureKind::Tabulated:
      return "tabulated";
  }
  return "unknown";
}

RadialMeasure RadialMeasure::sphere(double radius, std::string label) {
  RadialMeasure m;
  m.kind = MeasureKind::SphereDelta;
  m.radius = radius;
  m.label = label.empty() ? default_label(m) : std::move(label);
  return m;
}

RadialMeasure RadialMeasure::density(std::vector<double> f, std::vector<double> g, std::string label) {
  RadialMeasure m;
  m.kind = MeasureKind::SmoothDensity;
  m.f = std::move(f);
  m.g = std::move(g);
  m.label = label.empty() ? default_label(m) : std::move(label);
  return m;
}

RadialMeasure RadialMeasure::tabulated(std::vector<std::pair<double, double>> samples, std::string label) {
  RadialMeasure m;
  m.kind = MeasureKind::Tabulated;
  m.samples = std::move(samples);
  m.label = label.empty() ? default_label(m) : std::move(label);
  return m;
}

double RadialMeasure::profile(double s) const {
  switch (kind) {
    case MeasureKind::SphereDelta:
      throw std::logic_error("sphere measure has no pointwise profile");
    case MeasureKind::SmoothDensity:
      return poly_eval(f, s) * std::exp(-poly_eval(g, s));
    case MeasureKind::Tabulated: {
      if (samples.empty() || s < samples.front().first || s > samples.back().first) return 0.0;
      auto it = std::lower_bound(samples.begin(), samples.end(), s,
                                 [](const auto& p, double v) { return p.first < v; });
      if (it == samples.begin()) return it->second;
      const auto& [s1, t1] = *it;
      const auto& [s0, t0] = *(it - 1);
      return t0 + (t1 - t0) * (s - s0) / (s1 - s0);
    }
  }
  return 0.0;
}

MeasureValidation validate_measure(const RadialMeasure& m) {
  MeasureValidation report;
  auto fail = [&](std::string msg) {
    report.passed = false;
    report.diagnostics.push_back(std::move(msg));
  };

  switch (m.kind) {
    case MeasureKind::SphereDelta:
      if (!std::isfinite(m.radius) || m.radius <= 0.0) {
        fail("sphere radius must be positive and finite");
      } else {
        report.diagnostics.emplace_back("compact support: exponential moments finite");
      }
      break;

    case MeasureKind::SmoothDensity: {
      const auto all_finite = [](const std::vector<double>& c) {
        return std::all_of(c.begin(), c.end(), [](double v) { return std::isfinite(v); });
      };
      if (m.f.empty() || effective_degree(m.f) < 0) fail("f must be a nonzero polynomial");
      if (!all_finite(m.f) || !all_finite(m.g)) fail("coefficients must be finite");
      const int gdeg = effective_degree(m.g);
      if (gdeg < 2) {
        fail("g has degree " + std::to_string(std::max(gdeg, 0)) +
             ": its degree should be at least two for the exponential moments to exist");
      } else if (m.g[static_cast<std::size_t>(gdeg)] <= 0.0) {
        fail("leading coefficient of g must be positive");
      }
      if (!report.passed) break;
      // Nonnegativity of f over the numerically relevant range of s.
      double s_hi = 1.0;
      while (s_hi < 1e6 && poly_eval(m.g, s_hi) < 800.0) s_hi *= 1.5;
      constexpr int kGrid = 4000;
      for (int i = 0; i <= kGrid; ++i) {
        const double s = s_hi * i / kGrid;
        if (poly_eval(m.f, s) < 0.0) {
          fail("profile is negative at s = " + std::to_string(s));
          break;
        }
      }
      if (report.passed) report.diagnostics.emplace_back("super-linear potential: exponential moments finite");
      break;
    }

    case MeasureKind::Tabulated: {
      if (m.samples.size() < 3) {
        fail("tabulated profile needs at least three samples");
        break;
      }
      for (std::size_t i = 0; i < m.samples.size(); ++i) {
        const auto& [s, t] = m.samples[i];
        if (!std::isfinite(s) || !std::isfinite(t)) {
          fail("non-finite sample at index " + std::to_string(i));
          break;
        }
        if (s < 0.0) fail("negative s at index " + std::to_string(i));
        if (t < 0.0) fail("negative profile value at index " + std::to_string(i));
        if (i > 0 && s <= m.samples[i - 1].first) fail("grid not strictly increasing at index " + std::to_string(i));
        if (!report.passed) break;
      }
      if (!report.passed) break;
      // Finite-grid check of ∫ e^{a s} τ(s) ds with a = 1.
      std::vector<double> xs;
      std::vector<double> ys;
      double peak = 0.0;
      for (const auto& [s, t] : m.samples) {
        xs.push_back(s);
        ys.push_back(std::exp(s) * t);
        peak = std::max(peak, ys.back());
      }
      const double integral = simpson(xs, ys);
      if (!std::isfinite(integral) || peak == 0.0) {
        fail("exponential moment is not finite (or profile vanishes identically)");
      } else if (ys.back() > 1e-6 * peak) {
        fail("e^{s} tau(s) has not decayed at the end of the grid");
      } else {
        report.diagnostics.emplace_back("exponential moment converges on the sample range");
      }
      break;
    }
  }
  return report;
}

template <CoefficientField T>
LaplaceSeries<T> wd_series(int dimension, const T& r, int max_degree) {
  if (dimension < 2 || dimension % 2 != 0) {
    throw std::invalid_argument("wd_series requires an even dimension D >= 2");
  }
  if (!(r > 0)) {
    throw std::invalid_argument("wd_series requires r > 0");
  }
  if (max_degree < 0) {
    throw std::invalid_argument("truncation degree must be nonnegative");
  }
  const int half = dimension / 2;
  LaplaceSeries<T> out;
  out.dimension = dimension;
  out.truncation_degree = max_degree;
  out.coefficients.resize(static_cast<std::size_t>(max_degree) + 1);
  // c_0 = r^{h−1} / (h−1)!,  c_{n+1} = c_n · r / (4 (n+1) (h+n)).
  T c = integer_power(r, half - 1);
  for (int j = 2; j < half; ++j) c /= T(j);
  out.coefficients[0] = c;
  for (int n = 0; n < max_degree; ++n) {
    c = c * r / T(4LL * (n + 1) * (half + n));
    out.coefficients[static_cast<std::size_t>(n) + 1] = c;
  }
  return out;
}

template LaplaceSeries<double> wd_series(int, const double&, int);
template LaplaceSeries<Rational> wd_series(int, const Rational&, int);

LaplaceSeries<double> laplace_transform(const RadialMeasure& measure, int dimension, int max_degree) {
  if (dimension < 1) throw std::invalid_argument("dimension must be >= 1");
  if (max_degree < 0) throw std::invalid_argument("truncation degree must be nonnegative");
  const auto validation = validate_measure(measure);
  if (!validation.passed) {
    throw std::invalid_argument("measure '" + measure.label + "' failed validation: " + validation.diagnostics.front());
  }

  const double half = 0.5 * dimension;
  const double log_pi_factor = half * std::log(std::numbers::pi);
  LaplaceSeries<double> out;
  out.dimension = dimension;
  out.truncation_degree = max_degree;
  out.measure_label = measure.label;
  out.coefficients.resize(static_cast<std::size_t>(max_degree) + 1);

  switch (measure.kind) {
    case MeasureKind::SphereDelta: {
      const double r = measure.radius;
      double c = std::exp(log_pi_factor + (half - 1.0) * std::log(r) - std::lgamma(half));
      out.coefficients[0] = c;
      for (int n = 0; n < max_degree; ++n) {
        c *= r / (4.0 * (n + 1) * (half + n));
        out.coefficients[static_cast<std::size_t>(n) + 1] = c;
      }
      break;
    }
    case MeasureKind::SmoothDensity:
      for (int n = 0; n <= max_degree; ++n) {
        const auto m = density_moment(measure, half + n - 1.0);
        out.coefficients[static_cast<std::size_t>(n)] =
            m.value > 0.0 ? std::exp(std::log(m.value) + m.log_scale + log_pi_factor - log_wd_divisor(n, half)) : 0.0;
      }
      break;
    case MeasureKind::Tabulated:
      for (int n = 0; n <= max_degree; ++n) {
        const double m = tabulated_moment(measure, half + n - 1.0);
        out.coefficients[static_cast<std::size_t>(n)] = m * std::exp(log_pi_factor - log_wd_divisor(n, half));
      }
      break;
  }
  return out;
}

LaplaceSeries<Rational> laplace_transform_exact(const RadialMeasure& measure, int dimension, int max_degree) {
  if (measure.kind != MeasureKind::SphereDelta) {
    throw std::invalid_argument("the rational backend supports sphere measures only");
  }
  const auto validation = validate_measure(measure);
  if (!validation.passed) {
    throw std::invalid_argument("measure '" + measure.label + "' failed validation: " + validation.diagnostics.front());
  }
  auto out = wd_series<Rational>(dimension, to_rational(measure.radius), max_degree);
  out.measure_label = measure.label;
  out.pi_power = dimension / 2;
  return out;
}

template <CoefficientField T>
LaplaceSeries<T> series_derivative(const LaplaceSeries<T>& series, int m) {
  LaplaceSeries<T> out = series;
  out.coefficients = derivative_coefficients<T>(series.coefficients, m);
  out.truncation_degree = std::max(series.truncation_degree - m, -1);
  return out;
}

template LaplaceSeries<double> series_derivative(const LaplaceSeries<double>&, int);
template LaplaceSeries<Rational> series_derivative(const LaplaceSeries<Rational>&, int);

LaplaceSeries<double> to_float(const LaplaceSeries<Rational>& series) {
  LaplaceSeries<double> out;
  out.dimension = series.dimension;
  out.truncation_degree = series.truncation_degree;
  out.measure_label = series.measure_label;
  const double scale = std::pow(std::numbers::pi, series.pi_power);
  out.coefficients.reserve(series.coefficients.size());
  for (const auto& c : series.coefficients) out.coefficients.push_back(to_double(c) * scale);
  return out;
}

double radial_moment(const RadialMeasure& measure, double k) {
  if (k < -0.5) throw std::invalid_argument("moment order must be >= -1/2");
  switch (measure.kind) {
    case MeasureKind::SphereDelta:
      return std::pow(measure.radius, k);
    case MeasureKind::SmoothDensity: {
      const auto m = density_moment(measure, k);
      return m.value * std::exp(m.log_scale);
    }
    case MeasureKind::Tabulated:
      return tabulated_moment(measure, k);
  }
  return 0.0;
}

RadialMeasure measure_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("measure must be a JSON object");
  const auto kind = j.at("kind").get<std::string>();
  const auto label = j.value("label", std::string{});
  if (kind == "sphere") {
    return RadialMeasure::sphere(j.at("radius").get<double>(), label);
  }
  if (kind == "density") {
    return RadialMeasure::density(j.at("f").get<std::vector<double>>(), j.at("g").get<std::vector<double>>(), label);
  }
  if (kind == "tabulated") {
    std::vector<std::pair<double, double>> samples;
    for (const auto& row : j.at("samples")) {
      if (!row.is_array() || row.size() != 2) throw std::invalid_argument("samples must be [s, tau] pairs");
      samples.emplace_back(row[0].get<double>(), row[1].get<double>());
    }
    return RadialMeasure::tabulated(std::move(samples), label);
  }
  throw std::invalid_argument("unknown measure kind '" + kind + "'");
}

nlohmann::json to_json(const RadialMeasure& m) {
  nlohmann::json j;
  j["kind"] = std::string(measure_kind_name(m.kind));
  j["label"] = m.label;
  switch (m.kind) {
    case MeasureKind::SphereDelta:
      j["radius"] = m.radius;
      break;
    case MeasureKind::SmoothDensity:
      j["f"] = m.f;
      j["g"] = m.g;
      break;
    case MeasureKind::Tabulated: {
      auto rows = nlohmann::json::array();
      for (const auto& [s, t] : m.samples) rows.push_back({s, t});
      j["samples"] = rows;
      break;
    }
  }
  return j;
}

template <CoefficientField T>
std::string to_csv(const LaplaceSeries<T>& series) {
  std::ostringstream os;
  os << "n,c_n\n";
  for (std::size_t n = 0; n < series.coefficients.size(); ++n) {
    if constexpr (std::same_as<T, double>) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", series.coefficients[n]);
      os << n << ',' << buf << '\n';
    } else {
      os << n << ',' << rational_to_string(series.coefficients[n]) << '\n';
    }
  }
  return os.str();
}

template std::string to_csv(const LaplaceSeries<double>&);
template std::string to_csv(const LaplaceSeries<Rational>&);

}  // namespace leeyang
