#include <random>

#include <gtest/gtest.h>

#include "leeyang/dense_kernel.hpp"
#include "leeyang/transfer_recursion.hpp"
#include "support.hpp"

using namespace leeyang;

namespace {

const RadialMeasure kSphere = RadialMeasure::sphere(1.0, "sphere");

// Sparse reference chain: Ψ₂ then repeated psi_step, diagonal of each.
std::vector<std::vector<Rational>> sparse_chain(const std::vector<Rational>& v, const Rational& j, int d, int m, int n) {
  std::vector<std::vector<Rational>> out;
  auto psi = psi_two<Rational>(v, v, j, d, m);
  out.push_back(diagonal(psi));
  for (int k = 3; k <= n; ++k) {
    psi = psi_step<Rational>(v, psi, j, d);
    out.push_back(diagonal(psi));
  }
  for (auto& c : out) c.resize(static_cast<std::size_t>(m) + 1, Rational(0));
  return out;
}

}  // namespace

TEST(TransferRecursion, DenseMatchesSparseExactly) {
  for (int d : {2, 3, 4}) {
    const auto v = laplace_transform_exact(kSphere, d % 2 == 0 ? d : 2, 8);
    LaplaceSeries<Rational> series = v;
    series.dimension = d;
    const Rational j(3, 7);
    const auto dense = phi_chain<Rational>(4, series, j, 8);
    const auto sparse = sparse_chain(series.coefficients, j, d, 8, 4);
    for (int n = 2; n <= 4; ++n) {
      EXPECT_EQ(dense[static_cast<std::size_t>(n - 1)].coefficients, sparse[static_cast<std::size_t>(n - 2)])
          << "D=" << d << " N=" << n;
    }
  }
}

TEST(TransferRecursion, DenseRoundTripThroughSparse) {
  std::mt19937_64 rng(11);
  const auto p = leeyang::testing::random_poly(rng, VarSet::pair(), 6, 6, 25);
  const auto dense = DensePairPoly<Rational>::from_sparse(p);
  EXPECT_EQ(dense.to_sparse(), p);
  EXPECT_EQ(dense.diagonal(), [&] {
    auto d = diagonal(p);
    d.resize(7, Rational(0));
    return d;
  }());
}

TEST(TransferRecursion, SingleSpinIsTheTransform) {
  const auto v = laplace_transform(kSphere, 2, 10);
  const auto s = phi(1, 2, 0.7, kSphere, 10);
  EXPECT_EQ(s.coefficients, v.coefficients);
  EXPECT_EQ(s.chain_length, 1);
}

TEST(TransferRecursion, TwoSpinSurrogateClosedForm) {
  LaplaceSeries<Rational> v;
  v.coefficients = {Rational(1), Rational(3)};
  v.dimension = 6;
  const Rational j(2, 5);
  const auto s = phi_from_series(2, v, j, 3);
  const Rational g = 3;
  EXPECT_EQ(s.coefficients[0], 1 + 2 * j * j * 6 * g * g);
  EXPECT_EQ(s.coefficients[1], 2 * g + 4 * j * g * g);
  EXPECT_EQ(s.coefficients[2], g * g);
  EXPECT_EQ(s.coefficients[3], Rational(0));
}

TEST(TransferRecursion, ZeroCouplingFactorizes) {
  const auto v = laplace_transform_exact(kSphere, 4, 12);
  const auto chain = phi_chain<Rational>(4, v, Rational(0), 12);
  for (int n = 1; n <= 4; ++n) {
    EXPECT_EQ(chain[static_cast<std::size_t>(n - 1)].coefficients, leeyang::testing::series_power(v.coefficients, n, 12));
    EXPECT_EQ(chain[static_cast<std::size_t>(n - 1)].pi_power, 2 * n);
  }
}

TEST(TransferRecursion, FloatTracksExact) {
  const auto exact = to_float(phi_exact(3, 2, Rational(1, 2), kSphere, 15));
  const auto fl = phi(3, 2, 0.5, kSphere, 15);
  for (std::size_t n = 0; n <= 15; ++n) EXPECT_NEAR(fl.coefficients[n] / exact.coefficients[n], 1.0, 1e-12) << n;
}

TEST(TransferRecursion, PositiveCoefficientsForFerromagnet) {
  const auto s = phi(4, 3, 1.0, kSphere, 20);
  for (double c : s.coefficients) EXPECT_GT(c, 0.0);
}

TEST(TransferRecursion, LowOrderCoefficientsStabilizeWithTruncation) {
  const auto lo = phi(3, 2, 0.5, kSphere, 20);
  const auto hi = phi(3, 2, 0.5, kSphere, 30);
  const int k = stable_through(lo.coefficients, hi.coefficients);
  EXPECT_GE(k, 5);
  EXPECT_LT(k, 20);
  EXPECT_EQ(stable_through(std::vector<double>{1.0, 2.0}, std::vector<double>{1.1, 2.0}), -1);
}

TEST(TransferRecursion, MetadataAndCsv) {
  const auto s = phi_exact(2, 2, Rational(1), kSphere, 2);
  const auto csv = to_csv(s);
  EXPECT_EQ(csv.rfind("n,a_n\n0,", 0), 0u);
  const auto meta = metadata_json(s, 1);
  EXPECT_EQ(meta.at("N"), 2);
  EXPECT_EQ(meta.at("D"), 2);
  EXPECT_EQ(meta.at("pi_power"), 2);
  EXPECT_EQ(meta.at("stable_through"), 1);
}

TEST(TransferRecursion, InvalidArguments) {
  EXPECT_THROW(phi(0, 2, 0.5, kSphere, 10), std::invalid_argument);
  EXPECT_THROW(phi(2, 2, 0.5, kSphere, -1), std::invalid_argument);
}
