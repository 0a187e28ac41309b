// One PASS/FAIL line per acceptance criterion. Tolerances are fixed here.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <boost/math/special_functions/bessel.hpp>

#include "leeyang/geometry.hpp"
#include "leeyang/laguerre_checks.hpp"
#include "leeyang/oracle_quadrature.hpp"
#include "leeyang/radial_measures.hpp"
#include "leeyang/series.hpp"
#include "leeyang/transfer_recursion.hpp"
#include "leeyang/zero_analysis.hpp"
#include "support.hpp"

using namespace leeyang;
namespace lt = leeyang::testing;

namespace {

constexpr double kBesselRelTol = 1e-8;
constexpr double kGridImagTol = 1e-6;
constexpr double kOracleRelTol = 1e-6;
constexpr double kMcSigmas = 3.0;
constexpr double kFdRelTol = 1e-6;
constexpr double kGeometryTol = 1e-10;
constexpr double kFactorFloatTol = 1e-12;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

const RadialMeasure kSphere = RadialMeasure::sphere(1.0, "sphere(r=1)");

Outcome bessel_zeros() {
  double worst = 0.0;
  auto check = [&](int d, int count, const std::vector<double>& expected) {
    const auto v = laplace_transform(kSphere, d, 60);
    const auto roots = find_roots(v.coefficients, 60);
    if (!roots.converged) return false;
    for (int k = 0; k < count; ++k) {
      const auto z = roots.roots[static_cast<std::size_t>(k)];
      worst = std::max(worst, std::abs(z - expected[static_cast<std::size_t>(k)]) / std::abs(expected[static_cast<std::size_t>(k)]));
    }
    return true;
  };
  std::vector<double> d2;
  for (int k = 0; k < 3; ++k) {
    const double tab = lt::kJ0Zeros[k];
    const double bm = boost::math::cyl_bessel_j_zero(0.0, k + 1);
    if (std::abs(tab - bm) > 1e-14 * tab) return {false, "tabulated J0 zero disagrees with boost"};
    d2.push_back(-tab * tab);
  }
  const double j11 = boost::math::cyl_bessel_j_zero(1.0, 1);
  if (std::abs(j11 - lt::kJ1FirstZero) > 1e-14 * j11) return {false, "tabulated J1 zero disagrees with boost"};
  bool ok = check(2, 3, d2) && check(4, 1, {-j11 * j11});
  ok = ok && worst <= kBesselRelTol;
  return {ok, fmt("max relative error %.3g", worst)};
}

Outcome verification_grid() {
  const std::vector<int> ladder{30, 40, 50};
  int cells = 0;
  int verified = 0;
  int stable_total = 0;
  int min_stable = 1 << 30;
  bool bound_ok = true;
  std::string failures;
  for (int d : {2, 4, 6}) {
    for (double j : {0.2, 1.0}) {
      const auto reports = stabilize_chain(5, d, j, kSphere, ladder);
      for (int n = 2; n <= 5; ++n) {
        const auto& r = reports[static_cast<std::size_t>(n - 1)];
        ++cells;
        int stable = 0;
        for (std::size_t k = 0; k < r.roots.size(); ++k) {
          if (r.classes[k] == RootClass::Unstable) continue;
          ++stable;
          const auto z = r.roots[k];
          if (!(z.real() < 0.0) || std::abs(z.imag()) > kGridImagTol * (1.0 + std::abs(z))) bound_ok = false;
        }
        stable_total += stable;
        min_stable = std::min(min_stable, stable);
        if (r.overall == Verdict::Verified) {
          ++verified;
        } else {
          failures += " [" + r.label + ": " + std::string(verdict_name(r.overall)) + "]";
        }
      }
    }
  }
  const bool ok = bound_ok && verified == cells;
  return {ok, std::to_string(verified) + "/" + std::to_string(cells) + " Verified, stable roots per cell >= " +
                  std::to_string(min_stable) + ", total " + std::to_string(stable_total) + failures};
}

Outcome oracle_equivalence() {
  double worst = 0.0;
  for (int n : {2, 3}) {
    const auto s = phi(n, 2, 0.5, kSphere, 40);
    for (double y : {0.5, 1.0, 2.0}) {
      const auto o = z_direct_circle(n, 0.5, 1.0, y, 256);
      worst = std::max(worst, std::abs(horner(s.coefficients, -y * y) - o.value) / std::abs(o.value));
    }
  }
  double worst_sigma = 0.0;
  const auto s = phi(2, 4, 0.5, kSphere, 40);
  for (double y : {0.5, 1.0, 2.0}) {
    const auto o = z_direct_mc(2, 4, 0.5, 1.0, y, 1000000, 12345);
    worst_sigma = std::max(worst_sigma, std::abs(horner(s.coefficients, -y * y) - o.value) / o.estimated_error);
  }
  const bool ok = worst <= kOracleRelTol && worst_sigma <= kMcSigmas;
  return {ok, fmt("D=2 max relative difference %.3g", worst) + fmt(", D=4 Monte Carlo max deviation %.2f sigma", worst_sigma)};
}

Outcome closed_form_psi2() {
  struct Case {
    Rational gamma, coupling;
    int d;
  };
  bool ok = true;
  for (const auto& c : {Case{1, 1, 2}, Case{2, Rational(1, 2), 4}}) {
    LaplaceSeries<Rational> v;
    v.coefficients = {Rational(1), c.gamma};
    v.dimension = c.d;
    v.truncation_degree = 1;
    const auto s = phi_from_series(2, v, c.coupling, 4);
    std::vector<Rational> expected(5, Rational(0));
    expected[0] = 1 + 2 * c.coupling * c.coupling * c.d * c.gamma * c.gamma;
    expected[1] = 2 * c.gamma + 4 * c.coupling * c.gamma * c.gamma;
    expected[2] = c.gamma * c.gamma;
    ok = ok && s.coefficients == expected;
    const auto sparse = diagonal(psi_two<Rational>(v.coefficients, v.coefficients, c.coupling, c.d, 4));
    std::vector<Rational> padded(5, Rational(0));
    std::copy(sparse.begin(), sparse.end(), padded.begin());
    ok = ok && padded == expected;
  }
  return {ok, ok ? "exact match for both parameter sets (dense and sparse)" : "mismatch"};
}

Outcome derivative_identities() {
  constexpr int kDegree = 50;
  bool ok = true;
  int checked = 0;
  for (int d : {2, 4, 6}) {
    // ∂_ζ w_D = w_{D+2} / 4 for a non-unit radius as well.
    for (const Rational r : {Rational(1), Rational(3, 2)}) {
      const auto w = wd_series<Rational>(d, r, kDegree + 1);
      const auto w2 = wd_series<Rational>(d + 2, r, kDegree);
      for (int n = 0; n <= kDegree; ++n) {
        ok = ok && w.coefficients[static_cast<std::size_t>(n + 1)] * (n + 1) * 4 == w2.coefficients[static_cast<std::size_t>(n)];
        ++checked;
      }
    }
    for (int m : {1, 2}) {
      const auto lower = laplace_transform_exact(kSphere, d, kDegree + m);
      const auto higher = laplace_transform_exact(kSphere, d + 2 * m, kDegree);
      const auto deriv = series_derivative(lower, m);
      ok = ok && higher.pi_power == deriv.pi_power + m;
      Rational four_m = 1;
      for (int k = 0; k < m; ++k) four_m *= 4;
      for (int n = 0; n <= kDegree; ++n) {
        ok = ok && higher.coefficients[static_cast<std::size_t>(n)] == four_m * deriv.coefficients[static_cast<std::size_t>(n)];
        ++checked;
      }
    }
  }
  return {ok, std::to_string(checked) + " coefficients compared exactly"};
}

Outcome commutation() {
  std::mt19937_64 rng(2024);
  int checked = 0;
  int nontrivial = 0;
  int control_caught = 0;
  bool ok = true;
  for (int k : {2, 3}) {
    const auto vars = k == 2 ? VarSet::pair() : VarSet::triple();
    for (int d : {4, 6, 8}) {
      const auto lo = delta_operator(k, d - 2);
      const auto hi = delta_operator(k, d);
      for (int t = 0; t < 100; ++t) {
        const auto p = lt::random_poly(rng, vars, 8, 8, 12);
        const auto lhs = apply_operator(lo, p).derivative(GramVar::Z1);
        const auto rhs = apply_operator(hi, p.derivative(GramVar::Z1));
        ok = ok && lhs == rhs;
        nontrivial += !lhs.is_zero();
        // Same dimension on both sides must break the identity.
        control_caught += apply_operator(hi, p).derivative(GramVar::Z1) != rhs;
        ++checked;
      }
    }
  }
  ok = ok && nontrivial > checked / 2 && control_caught > checked / 2;
  return {ok, std::to_string(checked) + " random polynomials, " + std::to_string(nontrivial) +
                  " with nonzero image; wrong-dimension control rejected " + std::to_string(control_caught)};
}

Outcome finite_difference() {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal(0.0, 0.6);
  double worst = 0.0;
  double control = 0.0;
  int checked = 0;
  for (int k : {2, 3}) {
    const auto vars = k == 2 ? VarSet::pair() : VarSet::triple();
    for (int d : {2, 4}) {
      const auto op = delta_operator(k, d);
      const auto wrong = delta_operator(k, d + 2);
      for (int t = 0; t < 50; ++t) {
        const auto p = lt::random_poly(rng, vars, 4, 4, 10);
        std::vector<double> z1(static_cast<std::size_t>(d)), z2(z1.size()), z3(z1.size());
        for (auto* z : {&z1, &z2, &z3}) {
          for (auto& c : *z) c = normal(rng);
        }
        const double exact = eval(apply_operator(op, p), lt::gram_point(z1, z2, z3)).real();
        const double fd = lt::fd_mixed_laplacian(p, z1, z2, z3, 1e-2);
        worst = std::max(worst, std::abs(fd - exact) / std::max(std::abs(exact), 1.0));
        const double off = eval(apply_operator(wrong, p), lt::gram_point(z1, z2, z3)).real();
        control = std::max(control, std::abs(fd - off) / std::max(std::abs(off), 1.0));
        ++checked;
      }
    }
  }
  return {worst <= kFdRelTol && control > 1e3 * kFdRelTol,
          std::to_string(checked) + " polynomials, max relative deviation " + fmt("%.3g", worst) +
              fmt(", wrong-dimension control %.3g", control)};
}

Outcome geometry() {
  const auto r = geometry_selftest(99, 1000, 100000, 1000);
  const bool ok = r.max_round_trip_residual <= kGeometryTol && r.round_trip_outside_L == 0 &&
                  r.membership_disagreements == 0 && r.max_cubic_residual <= kGeometryTol;
  return {ok, fmt("round trip %.3g", r.max_round_trip_residual) + fmt(", cubic %.3g", r.max_cubic_residual) +
                  ", disagreements " + std::to_string(r.membership_disagreements) + ", outside L " +
                  std::to_string(r.round_trip_outside_L)};
}

Outcome zero_coupling() {
  bool exact_ok = true;
  double worst = 0.0;
  for (int d : {2, 4}) {
    const auto ve = laplace_transform_exact(kSphere, d, 20);
    const auto chain_e = phi_chain<Rational>(5, ve, Rational(0), 20);
    const auto vf = laplace_transform(kSphere, d, 40);
    const auto chain_f = phi_chain<double>(5, vf, 0.0, 40);
    for (int n = 1; n <= 5; ++n) {
      const auto& se = chain_e[static_cast<std::size_t>(n - 1)];
      exact_ok = exact_ok && se.coefficients == lt::series_power(ve.coefficients, n, 20) && se.pi_power == n * ve.pi_power;
      const auto expected = lt::series_power(vf.coefficients, n, 40);
      const auto& got = chain_f[static_cast<std::size_t>(n - 1)].coefficients;
      for (std::size_t i = 0; i < expected.size(); ++i) {
        worst = std::max(worst, std::abs(got[i] - expected[i]) / std::abs(expected[i]));
      }
    }
  }
  return {exact_ok && worst <= kFactorFloatTol,
          std::string(exact_ok ? "rational exact" : "rational MISMATCH") + fmt(", float max relative %.3g", worst)};
}

Outcome counterexample() {
  const auto scan = counterexample_scan();
  std::string example;
  int stable_pairs = 0;
  for (const auto& p : scan.points) {
    if (p.verdict != Verdict::Violated) continue;
    bool has_pair = false;
    for (const auto& z : p.off_axis_roots) {
      for (const auto& w : p.off_axis_roots) {
        if (std::abs(z.imag()) > 0 && std::abs(z - std::conj(w)) <= 1e-8 * (1 + std::abs(z))) has_pair = true;
      }
    }
    if (has_pair) {
      ++stable_pairs;
      if (example.empty()) {
        const auto z = p.off_axis_roots.front();
        char buf[128];
        std::snprintf(buf, sizeof buf, "first at a=%g: %.6g%+.6gi", p.a, z.real(), z.imag());
        example = buf;
      }
    }
  }
  return {stable_pairs > 0, std::to_string(scan.violating.size()) + " Violated points, " +
                                std::to_string(stable_pairs) + " with a stable conjugate pair; " + example};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"Bessel-zero agreement", bessel_zeros},
      {"Lee-Yang verification grid", verification_grid},
      {"oracle equivalence", oracle_equivalence},
      {"closed-form two-spin diagonal", closed_form_psi2},
      {"derivative and dimension-shift identities", derivative_identities},
      {"operator commutation", commutation},
      {"finite-difference operator check", finite_difference},
      {"geometry round trip", geometry},
      {"zero-coupling factorization", zero_coupling},
      {"counterexample path", counterexample},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    if (!o.pass) ++failed;
    std::printf("CRITERION %zu %s: %s (%s) [%.1fs]\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first,
                o.detail.c_str(), dt.count());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
