#include <random>

#include <gtest/gtest.h>

#include "leeyang/geometry.hpp"

using namespace leeyang;
using cd = std::complex<double>;

namespace {

double residual(const GramTriple& t) {
  const auto [a, b] = preimage_pair(t);
  const auto g = gram(a, b);
  return std::max({std::abs(g.z1 - t.z1), std::abs(g.z2 - t.z2), std::abs(g.z12 - t.z12)});
}

}  // namespace

TEST(Geometry, SlitPlane) {
  EXPECT_TRUE(in_slit_plane(cd(1, 0)));
  EXPECT_TRUE(in_slit_plane(cd(-1, 1e-300)));
  EXPECT_FALSE(in_slit_plane(cd(-1, 0)));
  EXPECT_FALSE(in_slit_plane(cd(0, 0)));
}

TEST(Geometry, MembershipExamples) {
  ComplexVec2 real;
  real.x = {1.0, 0.0};
  EXPECT_TRUE(in_L(real));
  ComplexVec2 imaginary;
  imaginary.y = {1.0, 0.0};
  EXPECT_FALSE(in_L(imaginary));  // z² = −1
  ComplexVec2 isotropic;
  isotropic.x = {1.0, 0.0};
  isotropic.y = {0.0, 1.0};
  EXPECT_FALSE(in_L(isotropic));  // z² = 0
}

TEST(Geometry, PreimageBranches) {
  EXPECT_LE(residual({cd(2, 0), cd(3, 0), cd(1, 0)}), 1e-12);
  EXPECT_LE(residual({cd(2, 0), cd(3, 0), cd(5, 0)}), 1e-12);
  EXPECT_LE(residual({cd(2, 0), cd(-1, 1), cd(0.3, -2)}), 1e-12);
  EXPECT_LE(residual({cd(-1, 1), cd(2, 0), cd(0.3, -2)}), 1e-12);
  EXPECT_LE(residual({cd(-1, 2), cd(0.5, -3), cd(1, 1)}), 1e-12);
  EXPECT_LE(residual({cd(4, 0), cd(1, 0), cd(0, 0)}), 1e-12);
}

TEST(Geometry, PreimageVectorsLieInL) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0, 2);
  for (int i = 0; i < 200; ++i) {
    GramTriple t{cd(n(rng), n(rng)), cd(n(rng), n(rng)), cd(n(rng), n(rng))};
    if (!in_slit_plane(t.z1) || !in_slit_plane(t.z2)) continue;
    const auto [a, b] = preimage_pair(t);
    EXPECT_TRUE(in_L(a));
    EXPECT_TRUE(in_L(b));
  }
}

TEST(Geometry, PreimageRejectsSlit) {
  EXPECT_THROW(preimage_pair({cd(-1, 0), cd(1, 0), cd(0, 0)}), std::invalid_argument);
}

TEST(Geometry, GramImageSatisfiesCubic) {
  ComplexVec2 a, b, c;
  a.x = {1, 2};
  a.y = {0.5, -1};
  b.x = {-0.3, 0.7};
  b.y = {2, 0.1};
  c.x = {0.9, -1.1};
  c.y = {-0.4, 0.6};
  EXPECT_LE(std::abs(gram_image_residual(a, b, c)), 1e-12);
}

TEST(Geometry, SelfTestPasses) {
  const auto r = geometry_selftest(1, 200, 5000, 200);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.membership_points, 5000);
  const auto j = to_json(r);
  EXPECT_EQ(j.at("passed"), true);
}
