#include "leeyang/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace leeyang {

namespace {

constexpr double kBoundaryBand = 1e-12;
constexpr double kBranchThreshold = 1e-12;

double dot2(const std::array<double, 2>& a, const std::array<double, 2>& b) { return a[0] * b[0] + a[1] * b[1]; }

bool near_real(std::complex<double> z) { return std::abs(z.imag()) < kBranchThreshold * (1.0 + std::abs(z)); }

double spectral_margin(const ComplexVec2& z) {
  const double xx = dot2(z.x, z.x);
  const double yy = dot2(z.y, z.y);
  const double xy = dot2(z.x, z.y);
  // λ_max of xxᵀ + yyᵀ equals λ_max of the Gram matrix [[x², x·y], [x·y, y²]].
  const double half = 0.5 * (xx + yy);
  const double diff = 0.5 * (xx - yy);
  const double lmax = half + std::hypot(diff, xy);
  return lmax - yy;
}

// Real-ζ1 branch: ζ1 = ξ1 > 0.
std::pair<ComplexVec2, ComplexVec2> real_first_preimage(const GramTriple& t) {
  const double xi1 = t.z1.real();
  const double xi2 = t.z2.real();
  const double eta2 = t.z2.imag();
  const double xi12 = t.z12.real();
  const double eta12 = t.z12.imag();
  const double rho = std::abs(t.z2);
  const double a = eta2 / (xi2 + rho);
  const double x2sq = 0.5 * (xi2 + rho);
  const double gamma = (xi12 + a * eta12) / (1.0 + a * a);
  const double delta = (eta12 - a * xi12) / (1.0 + a * a);

  const double big_a = gamma * gamma + delta * delta - xi1 * x2sq;
  const double disc = std::sqrt(big_a * big_a + 4.0 * delta * delta * xi1 * x2sq);
  // Positive root of x2² Y² + (ξ1 x2² − γ² − δ²) Y − δ² ξ1 = 0, written without cancellation.
  const double y1sq = big_a >= 0 ? (big_a + disc) / (2.0 * x2sq) : 2.0 * delta * delta * xi1 / (disc - big_a);

  ComplexVec2 z1;
  ComplexVec2 z2;
  if (y1sq > 0.0) {
    const double nx1 = std::sqrt(xi1 + y1sq);
    const double ny1 = std::sqrt(y1sq);
    z1.x = {nx1, 0.0};
    z1.y = {0.0, ny1};
    z2.x = {gamma / nx1, delta / ny1};
  } else {
    // δ = 0 and γ² ≤ ξ1 x2²: y1 = 0, x2 completed along the second axis.
    const double nx1 = std::sqrt(xi1);
    z1.x = {nx1, 0.0};
    const double along = gamma / nx1;
    z2.x = {along, std::sqrt(std::max(0.0, x2sq - along * along))};
  }
  z2.y = {a * z2.x[0], a * z2.x[1]};
  return {z1, z2};
}

std::pair<ComplexVec2, ComplexVec2> generic_preimage(const GramTriple& t) {
  const auto r1 = std::sqrt(t.z1);
  const auto c = t.z12 / r1;
  const auto d = std::sqrt(t.z2 - c * c);
  ComplexVec2 z1;
  ComplexVec2 z2;
  z1.x = {r1.real(), 0.0};
  z1.y = {r1.imag(), 0.0};
  z2.x = {c.real(), d.real()};
  z2.y = {c.imag(), d.imag()};
  return {z1, z2};
}

}  // namespace

std::complex<double> dot(const ComplexVec2& a, const ComplexVec2& b) { return a[0] * b[0] + a[1] * b[1]; }

bool in_L_spectral(const ComplexVec2& z) { return spectral_margin(z) > 0.0; }

bool in_L_reduced(const ComplexVec2& z) { return in_slit_plane(dot(z, z)); }

bool in_L(const ComplexVec2& z) {
  const bool spectral = in_L_spectral(z);
  const bool reduced = in_L_reduced(z);
  if (spectral != reduced) {
    const double scale = dot2(z.x, z.x) + dot2(z.y, z.y);
    if (std::abs(spectral_margin(z)) > kBoundaryBand * std::max(scale, 1.0)) {
      throw GeometryError("in_L: spectral and reduced membership tests disagree");
    }
  }
  return reduced;
}

bool in_slit_plane(std::complex<double> zeta) { return !(zeta.imag() == 0.0 && zeta.real() <= 0.0); }

GramTriple gram(const ComplexVec2& z1, const ComplexVec2& z2) { return {dot(z1, z1), dot(z2, z2), dot(z1, z2)}; }

std::pair<ComplexVec2, ComplexVec2> preimage_pair(const GramTriple& t) {
  if (!in_slit_plane(t.z1) || !in_slit_plane(t.z2)) {
    throw std::invalid_argument("preimage_pair: ζ1 and ζ2 must lie off (−∞, 0]");
  }
  const bool real1 = near_real(t.z1) && t.z1.real() > 0.0;
  const bool real2 = near_real(t.z2) && t.z2.real() > 0.0;
  if (real1) return real_first_preimage({{t.z1.real(), 0.0}, t.z2, t.z12});
  if (real2) {
    auto [b, a] = real_first_preimage({{t.z2.real(), 0.0}, t.z1, t.z12});
    return {a, b};
  }
  return generic_preimage(t);
}

std::complex<double> gram_image_residual(const ComplexVec2& z1, const ComplexVec2& z2, const ComplexVec2& z3) {
  const auto s1 = dot(z1, z1);
  const auto s2 = dot(z2, z2);
  const auto s3 = dot(z3, z3);
  const auto s12 = dot(z1, z2);
  const auto s13 = dot(z1, z3);
  const auto s23 = dot(z2, z3);
  return s1 * s2 * s3 + 2.0 * s12 * s23 * s13 - s1 * s23 * s23 - s2 * s13 * s13 - s3 * s12 * s12;
}

GeometrySelfTest geometry_selftest(std::uint64_t seed, int round_trips, int membership_points, int cubic_samples) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto cnum = [&] { return std::complex<double>(normal(rng), normal(rng)); };
  auto cvec = [&] {
    ComplexVec2 z;
    z.x = {normal(rng), normal(rng)};
    z.y = {normal(rng), normal(rng)};
    return z;
  };

  GeometrySelfTest r;
  for (int i = 0; i < round_trips; ++i) {
    std::complex<double> a;
    std::complex<double> b;
    do a = cnum();
    while (!in_slit_plane(a));
    do b = cnum();
    while (!in_slit_plane(b));
    const GramTriple t{a, b, cnum()};
    const auto [z1, z2] = preimage_pair(t);
    const auto back = gram(z1, z2);
    const double res = std::max({std::abs(back.z1 - t.z1), std::abs(back.z2 - t.z2), std::abs(back.z12 - t.z12)});
    r.max_round_trip_residual = std::max(r.max_round_trip_residual, res);
    if (!in_L(z1) || !in_L(z2)) ++r.round_trip_outside_L;
    ++r.round_trips;
  }
  for (int i = 0; i < membership_points; ++i) {
    const auto z = cvec();
    try {
      (void)in_L(z);
    } catch (const GeometryError&) {
      ++r.membership_disagreements;
    }
    ++r.membership_points;
  }
  for (int i = 0; i < cubic_samples; ++i) {
    const auto z1 = cvec();
    const auto z2 = cvec();
    const auto z3 = cvec();
    double scale = 0.0;
    for (const auto* a : {&z1, &z2, &z3}) scale = std::max(scale, dot2(a->x, a->x) + dot2(a->y, a->y));
    const double rel = std::abs(gram_image_residual(z1, z2, z3)) / (scale * scale * scale);
    r.max_cubic_residual = std::max(r.max_cubic_residual, rel);
    ++r.cubic_samples;
  }
  r.passed = r.max_round_trip_residual <= 1e-10 && r.round_trip_outside_L == 0 && r.membership_disagreements == 0 &&
             r.max_cubic_residual <= 1e-10;
  return r;
}

nlohmann::json to_json(const GeometrySelfTest& r) {
  return {{"passed", r.passed},
          {"round_trips", r.round_trips},
          {"max_round_trip_residual", r.max_round_trip_residual},
          {"round_trip_outside_L", r.round_trip_outside_L},
          {"membership_points", r.membership_points},
          {"membership_disagreements", r.membership_disagreements},
          {"cubic_samples", r.cubic_samples},
          {"max_cubic_residual", r.max_cubic_residual}};
}

}  // namespace leeyang
