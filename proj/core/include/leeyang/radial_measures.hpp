#pragma once

// Strongly isotropic single-spin measures, described by their radial profile
// τ(s) on s = σ², and their Laplace transforms v_τ(ζ, D) as power series in
// ζ = z².
//
//   v_τ(ζ, D) = π^{D/2} ∫_0^∞ w_D(ζ, r) τ(r) dr,
//   w_D(ζ, r) = Σ_n ζⁿ r^{D/2+n−1} / (4ⁿ n! Γ(D/2+n)).

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "leeyang/field.hpp"

namespace leeyang {

enum class MeasureKind { SphereDelta, SmoothDensity, Tabulated };

std::string_view measure_kind_name(MeasureKind kind);

struct RadialMeasure {
  MeasureKind kind = MeasureKind::SphereDelta;
  /// SphereDelta: τ = δ(s − radius), i.e. the uniform measure on σ² = radius.
  double radius = 1.0;
  /// SmoothDensity: τ(s) = f(s) exp(−g(s)), coefficients in ascending powers of s.
  std::vector<double> f;
  std::vector<double> g;
  /// Tabulated: (s, τ(s)) samples on a strictly increasing grid.
  std::vector<std::pair<double, double>> samples;
  std::string label;

  static RadialMeasure sphere(double radius, std::string label = {});
  static RadialMeasure density(std::vector<double> f, std::vector<double> g, std::string label = {});
  static RadialMeasure tabulated(std::vector<std::pair<double, double>> samples, std::string label = {});

  /// τ(s) for SmoothDensity (exact) and Tabulated (piecewise linear, 0 outside the grid).
  double profile(double s) const;
};

struct MeasureValidation {
  bool passed = true;
  std::vector<std::string> diagnostics;
};

MeasureValidation validate_measure(const RadialMeasure& measure);

/// Power series Σ c_n ζⁿ of a Laplace transform. In the exact backend the
/// irrational prefactor π^{pi_power} is carried separately; the float backend
/// always folds it in (pi_power == 0).
template <CoefficientField T>
struct LaplaceSeries {
  std::vector<T> coefficients;
  int dimension = 0;
  int truncation_degree = 0;
  std::string measure_label;
  int pi_power = 0;
};

/// Coefficients of w_D(ζ, r) for even D ≥ 2, through degree M.
template <CoefficientField T>
LaplaceSeries<T> wd_series(int dimension, const T& r, int max_degree);

/// Float-backend Laplace transform. Any D ≥ 1 is accepted (odd D uses
/// half-integer Γ); smooth densities use panel Gauss–Kronrod moments.
LaplaceSeries<double> laplace_transform(const RadialMeasure& measure, int dimension, int max_degree);

/// Exact transform; sphere measures with even D only.
LaplaceSeries<Rational> laplace_transform_exact(const RadialMeasure& measure, int dimension, int max_degree);

/// m-th ζ-derivative (length and truncation degree drop by m).
template <CoefficientField T>
LaplaceSeries<T> series_derivative(const LaplaceSeries<T>& series, int m);

LaplaceSeries<double> to_float(const LaplaceSeries<Rational>& series);

/// m_k = ∫_0^∞ r^k τ(r) dr for SmoothDensity / Tabulated profiles (k ≥ −1/2).
double radial_moment(const RadialMeasure& measure, double k);

RadialMeasure measure_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RadialMeasure& measure);

template <CoefficientField T>
std::string to_csv(const LaplaceSeries<T>& series);

}  // namespace leeyang
