#pragma once

// The domain L ⊂ ℂ², the Gram maps, and explicit preimages under ℓ₂,₂.

#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <utility>

#include <nlohmann/json.hpp>

namespace leeyang {

/// z = x + i y ∈ ℂ².
struct ComplexVec2 {
  std::array<double, 2> x{};
  std::array<double, 2> y{};

  std::complex<double> operator[](std::size_t k) const { return {x[k], y[k]}; }
};

struct GramTriple {
  std::complex<double> z1;
  std::complex<double> z2;
  std::complex<double> z12;
};

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Complex bilinear product a·b = Σ a_k b_k (no conjugation).
std::complex<double> dot(const ComplexVec2& a, const ComplexVec2& b);

/// ∃u: (x·u)² + (y·u)² > y² u², via λ_max(xxᵀ + yyᵀ) > y².
bool in_L_spectral(const ComplexVec2& z);
/// z² ∉ (−∞, 0].
bool in_L_reduced(const ComplexVec2& z);
/// Both tests; throws GeometryError if they disagree away from the boundary.
bool in_L(const ComplexVec2& z);

/// True for ζ ∈ ℂ∖(−∞, 0].
bool in_slit_plane(std::complex<double> zeta);

GramTriple gram(const ComplexVec2& z1, const ComplexVec2& z2);

/// (z1, z2) ∈ L × L with ℓ₂,₂(z1, z2) = t. Requires ζ1, ζ2 ∉ (−∞, 0].
std::pair<ComplexVec2, ComplexVec2> preimage_pair(const GramTriple& t);

/// ζ1ζ2ζ3 + 2ζ12ζ23ζ13 − ζ1ζ23² − ζ2ζ13² − ζ3ζ12² on the Gram coordinates.
std::complex<double> gram_image_residual(const ComplexVec2& z1, const ComplexVec2& z2, const ComplexVec2& z3);

struct GeometrySelfTest {
  bool passed = true;
  int round_trips = 0;
  double max_round_trip_residual = 0.0;
  int round_trip_outside_L = 0;
  int membership_points = 0;
  int membership_disagreements = 0;
  int cubic_samples = 0;
  double max_cubic_residual = 0.0;  // relative to max |ζ|³
};

GeometrySelfTest geometry_selftest(std::uint64_t seed, int round_trips = 1000, int membership_points = 100000,
                                   int cubic_samples = 1000);

nlohmann::json to_json(const GeometrySelfTest& r);

}  // namespace leeyang
