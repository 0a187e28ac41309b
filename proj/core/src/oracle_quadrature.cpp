#include "leeyang/oracle_quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "leeyang/series.hpp"

namespace leeyang {

namespace {

constexpr int kSeriesTermCap = 5000;
constexpr long double kCancellationBound = 1e-12L;

double sphere_mass(int dimension, double r) {
  const double h = 0.5 * dimension;
  return std::exp(h * std::log(std::numbers::pi) + (h - 1.0) * std::log(r) - std::lgamma(h));
}

std::complex<double> circle_sum(int chain_length, double coupling, double r, double y, int n) {
  using cd = std::complex<double>;
  const double step = 2.0 * std::numbers::pi / n;
  const double sr = std::sqrt(r);
  std::vector<cd> field(static_cast<std::size_t>(n));
  std::vector<double> kernel(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    field[static_cast<std::size_t>(k)] = std::exp(cd(0.0, y * sr * std::cos(k * step)));
    kernel[static_cast<std::size_t>(k)] = std::exp(coupling * r * std::cos(k * step));
  }
  std::vector<cd> f = field;
  std::vector<cd> g(static_cast<std::size_t>(n));
  for (int l = 1; l < chain_length; ++l) {
    for (int j = 0; j < n; ++j) {
      cd acc = 0.0;
      for (int i = 0; i < n; ++i) acc += kernel[static_cast<std::size_t>((j - i + n) % n)] * f[static_cast<std::size_t>(i)];
      g[static_cast<std::size_t>(j)] = field[static_cast<std::size_t>(j)] * acc;
    }
    f.swap(g);
  }
  cd total = 0.0;
  for (const auto& v : f) total += v;
  // Each circle integral is (1/2)∫dθ under δ(σ² − r); trapezoid weight 2π/n.
  return total * std::pow(std::numbers::pi / n, chain_length);
}

struct WdSum {
  double value;
  double error;
};

WdSum wd_sum(int dimension, double zeta, double r) {
  if (dimension < 1) throw std::invalid_argument("dimension must be >= 1");
  if (!(r > 0)) throw std::invalid_argument("r must be positive");
  const long double h = 0.5L * dimension;
  long double term = std::exp((h - 1) * std::log(static_cast<long double>(r)) - std::lgamma(h));
  const long double first = std::abs(term);
  long double sum = term;
  long double largest = first;
  const long double x = static_cast<long double>(zeta) * r / 4;
  for (int n = 0; n < kSeriesTermCap; ++n) {
    term *= x / ((n + 1) * (h + n));
    sum += term;
    largest = std::max(largest, std::abs(term));
    const bool decaying = (n + 1) * (h + n) > std::abs(x);
    if (term == 0 || (decaying && std::abs(term) <= std::numeric_limits<long double>::epsilon() * std::abs(sum))) {
      const long double err = 4 * (n + 2) * std::numeric_limits<long double>::epsilon() * largest;
      if (err > kCancellationBound * first) {
        throw NumericalError("w_D series loses all accuracy to cancellation (|ζ| r too large for direct summation)");
      }
      return {static_cast<double>(sum), static_cast<double>(err + std::numeric_limits<double>::epsilon() * std::abs(sum))};
    }
  }
  throw NumericalError("w_D series did not converge within the term cap (|ζ| r / 4 too large)");
}

}  // namespace

double wd_direct(int dimension, double zeta, double r) { return wd_sum(dimension, zeta, r).value; }

OracleResult z_direct_circle(int chain_length, double coupling, double r, double y, int nodes) {
  if (chain_length < 2 || chain_length > 4) throw std::invalid_argument("z_direct_circle supports N = 2..4");
  if (nodes < 64 || (nodes & (nodes - 1)) != 0) throw std::invalid_argument("nodes must be a power of two >= 64");
  if (!(r > 0)) throw std::invalid_argument("r must be positive");
  OracleResult out;
  out.method = "angular-grid";
  out.nodes = nodes;
  out.value = circle_sum(chain_length, coupling, r, y, nodes);
  out.estimated_error = std::abs(out.value - circle_sum(chain_length, coupling, r, y, nodes / 2));
  return out;
}

OracleResult z_direct_mc(int chain_length, int dimension, double coupling, double r, double y, long long samples,
                         std::uint64_t seed) {
  if (chain_length != 2) throw std::invalid_argument("z_direct_mc supports N = 2 only");
  if (dimension < 2) throw std::invalid_argument("z_direct_mc requires D >= 2");
  if (samples < 100000) throw std::invalid_argument("z_direct_mc requires at least 1e5 samples");
  if (!(r > 0)) throw std::invalid_argument("r must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto d = static_cast<std::size_t>(dimension);
  std::vector<double> u(d);
  std::vector<double> v(d);
  auto draw = [&](std::vector<double>& w) {
    double n2 = 0.0;
    do {
      n2 = 0.0;
      for (auto& c : w) {
        c = normal(rng);
        n2 += c * c;
      }
    } while (n2 == 0.0);
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& c : w) c *= inv;
  };
  const double sr = std::sqrt(r);
  double sum_re = 0.0;
  double sum_im = 0.0;
  double sq_re = 0.0;
  double sq_im = 0.0;
  for (long long s = 0; s < samples; ++s) {
    draw(u);
    draw(v);
    double uv = 0.0;
    for (std::size_t k = 0; k < d; ++k) uv += u[k] * v[k];
    const double mag = std::exp(coupling * r * uv);
    const double phase = y * sr * (u[0] + v[0]);
    const double re = mag * std::cos(phase);
    const double im = mag * std::sin(phase);
    sum_re += re;
    sum_im += im;
    sq_re += re * re;
    sq_im += im * im;
  }
  const auto n = static_cast<double>(samples);
  const double mean_re = sum_re / n;
  const double mean_im = sum_im / n;
  const double var = (sq_re / n - mean_re * mean_re) + (sq_im / n - mean_im * mean_im);
  const double mass = sphere_mass(dimension, r);
  OracleResult out;
  out.method = "monte-carlo";
  out.nodes = samples;
  out.value = mass * mass * std::complex<double>(mean_re, mean_im);
  out.estimated_error = mass * mass * std::sqrt(std::max(var, 0.0) / n);
  return out;
}

OracleResult laplace_direct(const RadialMeasure& measure, int dimension, double zeta) {
  if (dimension < 1) throw std::invalid_argument("dimension must be >= 1");
  const auto validation = validate_measure(measure);
  if (!validation.passed) throw std::invalid_argument("measure failed validation: " + validation.diagnostics.front());
  const double prefactor = std::pow(std::numbers::pi, 0.5 * dimension);
  OracleResult out;
  out.method = "radial-quadrature";
  switch (measure.kind) {
    case MeasureKind::SphereDelta: {
      const auto w = wd_sum(dimension, zeta, measure.radius);
      out.value = prefactor * w.value;
      out.estimated_error = prefactor * w.error;
      out.nodes = 1;
      break;
    }
    case MeasureKind::SmoothDensity: {
      // r = σ²: removes the r^{D/2−1} endpoint singularity for odd D.
      auto integrand = [&](double sigma) {
        const double r = sigma * sigma;
        if (r == 0.0) return dimension == 1 ? 2.0 * measure.profile(0.0) / std::sqrt(std::numbers::pi) : 0.0;
        const double tau = measure.profile(r);
        if (tau == 0.0) return 0.0;
        return 2.0 * sigma * tau * wd_direct(dimension, zeta, r);
      };
      boost::math::quadrature::exp_sinh<double> rule;
      double err = 0.0;
      double l1 = 0.0;
      std::size_t levels = 0;
      const double value = rule.integrate(integrand, 1e-13, &err, &l1, &levels);
      out.value = prefactor * value;
      out.estimated_error = prefactor * err;
      out.nodes = static_cast<long long>(levels);
      break;
    }
    case MeasureKind::Tabulated: {
      if (dimension < 2) throw std::invalid_argument("tabulated profiles need D >= 2");
      std::vector<double> xs;
      std::vector<double> ys;
      for (const auto& [s, t] : measure.samples) {
        xs.push_back(s);
        ys.push_back(s > 0.0 ? t * wd_direct(dimension, zeta, s) : (dimension == 2 ? t : 0.0));
      }
      double trapezoid = 0.0;
      for (std::size_t i = 1; i < xs.size(); ++i) trapezoid += 0.5 * (xs[i] - xs[i - 1]) * (ys[i] + ys[i - 1]);
      const double value = simpson(xs, ys);
      out.value = prefactor * value;
      out.estimated_error = prefactor * std::abs(value - trapezoid);
      out.nodes = static_cast<long long>(xs.size());
      break;
    }
  }
  return out;
}

nlohmann::json to_json(const OracleResult& r) {
  return {{"re", r.value.real()},
          {"im", r.value.imag()},
          {"estimated_error", r.estimated_error},
          {"method", r.method},
          {"nodes", r.nodes}};
}

}  // namespace leeyang
