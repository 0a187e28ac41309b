#pragma once

// Transfer recursion for the open chain:
//   Ψ₂ = exp(J Δ₂) v(ζ1) v(ζ2),
//   Ψ_N = [exp(J Δ₃) v(ζ1) Ψ_{N−1}(ζ2, ζ3, ζ23)]_{2=3},
//   φ_N(ζ) = Ψ_N(ζ, ζ, ζ),  Z_N(z) = φ_N(z²).

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "leeyang/field.hpp"
#include "leeyang/poly_series.hpp"
#include "leeyang/radial_measures.hpp"

namespace leeyang {

/// Δ_{2,D} (5 primitive terms) or Δ_{3,D} (10 primitive terms).
GramOperator delta_operator(int arity, int dimension);

/// Sparse reference implementations; the dense kernel is used by phi().
template <CoefficientField T>
TruncatedPoly<T> psi_two(std::span<const T> v1, std::span<const T> v2, const T& coupling, int dimension,
                         int max_degree);

template <CoefficientField T>
TruncatedPoly<T> psi_step(std::span<const T> v, const TruncatedPoly<T>& previous, const T& coupling, int dimension);

template <CoefficientField T>
struct PartitionSeries {
  std::vector<T> coefficients;
  int chain_length = 1;
  int dimension = 0;
  double coupling = 0.0;
  std::string measure_label;
  int truncation_degree = 0;
  /// The true series is π^{pi_power} Σ a_n ζⁿ (always 0 in float mode).
  int pi_power = 0;
};

/// φ_1 … φ_N from one recursion over the single-spin series v (dense kernel).
template <CoefficientField T>
std::vector<PartitionSeries<T>> phi_chain(int chain_length, const LaplaceSeries<T>& v, const T& coupling,
                                          int max_degree);

template <CoefficientField T>
PartitionSeries<T> phi_from_series(int chain_length, const LaplaceSeries<T>& v, const T& coupling, int max_degree);

PartitionSeries<double> phi(int chain_length, int dimension, double coupling, const RadialMeasure& measure,
                            int max_degree);

/// Exact backend; sphere measures with even D and dyadic-exact J.
PartitionSeries<Rational> phi_exact(int chain_length, int dimension, const Rational& coupling,
                                    const RadialMeasure& measure, int max_degree);

PartitionSeries<double> to_float(const PartitionSeries<Rational>& s);

/// Largest K such that a_0..a_K agree between two truncations to relative tol; −1 if a_0 differs.
int stable_through(std::span<const double> lower, std::span<const double> higher, double rel_tol = 1e-10);

template <CoefficientField T>
std::string to_csv(const PartitionSeries<T>& s);

template <CoefficientField T>
nlohmann::json metadata_json(const PartitionSeries<T>& s, std::optional<int> stable);

}  // namespace leeyang
