#pragma once

#include <complex>
#include <random>
#include <vector>

#include "leeyang/field.hpp"
#include "leeyang/poly_series.hpp"

namespace leeyang::testing {

// Tabulated zeros of J_0 and J_1.
inline constexpr double kJ0Zeros[3] = {2.404825557695772768621631879, 5.520078110286310649596604112,
                                        8.653727912911012216954198712};
inline constexpr double kJ1FirstZero = 3.831705970207512315614435886;

inline Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 9);
  int n = 0;
  while (n == 0) n = num(rng);
  return Rational(n, den(rng));
}

inline TruncatedPoly<Rational> random_poly(std::mt19937_64& rng, VarSet vars, int degree, int cap, int terms) {
  const auto list = vars.list();
  std::uniform_int_distribution<int> deg(0, degree);
  std::uniform_int_distribution<std::size_t> pick(0, list.size() - 1);
  TruncatedPoly<Rational> p(vars, cap);
  for (int t = 0; t < terms; ++t) {
    Exponents e{};
    const int d = deg(rng);
    for (int k = 0; k < d; ++k) ++e[idx(list[pick(rng)])];
    p.add_term(e, random_rational(rng));
  }
  return p;
}

// Truncated power of a coefficient vector.
template <class T>
std::vector<T> series_power(const std::vector<T>& v, int n, int degree) {
  std::vector<T> out(static_cast<std::size_t>(degree) + 1, T(0));
  out[0] = T(1);
  for (int k = 0; k < n; ++k) {
    std::vector<T> next(out.size(), T(0));
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (std::size_t j = 0; i + j < out.size() && j < v.size(); ++j) next[i + j] += out[i] * v[j];
    }
    out.swap(next);
  }
  return out;
}

// Σ_i ∂²/∂z1_i ∂z2_i of f(z1, z2, z3) = P(z1², z2², z3², z1·z2, z1·z3, z2·z3) at real
// vectors, by central differences with one Richardson step.
inline double fd_mixed_laplacian(const TruncatedPoly<Rational>& p, const std::vector<double>& z1,
                                 const std::vector<double>& z2, const std::vector<double>& z3, double h) {
  auto dotv = [](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  };
  auto f = [&](const std::vector<double>& a, const std::vector<double>& b) {
    GramPoint pt;
    for (auto v : p.vars().list()) {
      double val = 0.0;
      switch (v) {
        case GramVar::Z1: val = dotv(a, a); break;
        case GramVar::Z2: val = dotv(b, b); break;
        case GramVar::Z3: val = dotv(z3, z3); break;
        case GramVar::Z12: val = dotv(a, b); break;
        case GramVar::Z13: val = dotv(a, z3); break;
        case GramVar::Z23: val = dotv(b, z3); break;
      }
      pt[v] = val;
    }
    return eval(p, pt).real();
  };
  auto mixed = [&](double step) {
    double total = 0.0;
    for (std::size_t i = 0; i < z1.size(); ++i) {
      auto ap = z1, am = z1, bp = z2, bm = z2;
      ap[i] += step;
      am[i] -= step;
      bp[i] += step;
      bm[i] -= step;
      total += (f(ap, bp) - f(ap, bm) - f(am, bp) + f(am, bm)) / (4.0 * step * step);
    }
    return total;
  };
  return (4.0 * mixed(h / 2) - mixed(h)) / 3.0;
}

inline GramPoint gram_point(const std::vector<double>& z1, const std::vector<double>& z2,
                            const std::vector<double>& z3) {
  auto dotv = [](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  };
  return {{GramVar::Z1, dotv(z1, z1)},  {GramVar::Z2, dotv(z2, z2)},  {GramVar::Z3, dotv(z3, z3)},
          {GramVar::Z12, dotv(z1, z2)}, {GramVar::Z13, dotv(z1, z3)}, {GramVar::Z23, dotv(z2, z3)}};
}

}  // namespace leeyang::testing
