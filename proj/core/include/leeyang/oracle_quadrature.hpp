#pragma once

// Direct-integration reference values for Z_N and single-spin transforms.

#include <complex>
#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "leeyang/radial_measures.hpp"

namespace leeyang {

struct OracleResult {
  std::complex<double> value;
  double estimated_error = 0.0;
  std::string method;  // "angular-grid" | "monte-carlo" | "radial-quadrature"
  long long nodes = 0;
};

/// Z_N(iy·e₁) for the D = 2 sphere measure δ(σ² − r): tensor trapezoid on the
/// N-torus, evaluated as a transfer product. nodes: power of two ≥ 64.
OracleResult z_direct_circle(int chain_length, double coupling, double r, double y, int nodes);

/// Z_2(iy·e₁) for the sphere measure in D dimensions by Monte Carlo
/// (normalized Gaussian directions, single stream, deterministic in seed).
OracleResult z_direct_mc(int chain_length, int dimension, double coupling, double r, double y, long long samples,
                         std::uint64_t seed);

/// π^{D/2} ∫ w_D(ζ, r) τ(r) dr at real ζ with w_D summed to machine precision.
OracleResult laplace_direct(const RadialMeasure& measure, int dimension, double zeta);

/// w_D(ζ, r) by direct summation (long double accumulation); any D ≥ 1.
double wd_direct(int dimension, double zeta, double r);

nlohmann::json to_json(const OracleResult& r);

}  // namespace leeyang
