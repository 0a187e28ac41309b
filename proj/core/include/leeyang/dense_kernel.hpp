#pragma once

// Dense fast path for the transfer recursion.
//
// Polynomials are stored as flat arrays over the simplex {total degree ≤ M},
// enumerated lexicographically with the last variable contiguous. The
// exponential exp(J Δ) is expanded term by term; every application of Δ
// consumes (and zeroes) its source array, so two buffers suffice and no
// re-initialisation is needed between powers. The 2=3 merge is folded into
// the sweep, so the six-variable result is never materialised.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "leeyang/field.hpp"
#include "leeyang/poly_series.hpp"

namespace leeyang {

/// Lexicographic enumeration of exponent K-tuples with total degree ≤ cap.
template <int K>
class SimplexLayout {
 public:
  explicit SimplexLayout(int cap);

  int cap() const { return cap_; }
  std::size_t size() const { return binom(cap_ + K, K); }

  /// Number of tuples skipped by choosing x at a level with `remaining`
  /// free variables (including this one) and budget R.
  std::size_t level_offset(int remaining, int budget, int x) const {
    return binom(budget + remaining, remaining) - binom(budget - x + remaining, remaining);
  }

  std::size_t rank(const std::array<int, K>& x) const;

  std::size_t binom(int n, int k) const { return table_[static_cast<std::size_t>(n) * (K + 1) + static_cast<std::size_t>(k)]; }

 private:
  int cap_;
  std::vector<std::size_t> table_;
};

/// Ψ in (ζ1, ζ2, ζ12), total degree ≤ M, stored densely.
template <CoefficientField T>
class DensePairPoly {
 public:
  explicit DensePairPoly(int max_degree);

  int max_degree() const { return layout_.cap(); }
  T& at(int a, int p, int b) { return data_[layout_.rank({a, p, b})]; }
  const T& at(int a, int p, int b) const { return data_[layout_.rank({a, p, b})]; }
  std::span<T> data() { return data_; }
  std::span<const T> data() const { return data_; }
  const SimplexLayout<3>& layout() const { return layout_; }

  std::vector<T> diagonal() const;
  TruncatedPoly<T> to_sparse() const;
  static DensePairPoly from_sparse(const TruncatedPoly<T>& p);

 private:
  SimplexLayout<3> layout_;
  std::vector<T> data_;
};

/// Reusable workspace for exp(J Δ_{2,D}) and exp(J Δ_{3,D}) at a fixed cap.
template <CoefficientField T>
class DenseTransfer {
 public:
  explicit DenseTransfer(int max_degree);

  int max_degree() const { return cap_; }

  /// Ψ₂ = exp(J Δ_{2,D}) v1(ζ1) v2(ζ2).
  DensePairPoly<T> psi_two(std::span<const T> v1, std::span<const T> v2, const T& coupling, int dimension) const;

  /// Ψ_N = [exp(J Δ_{3,D}) v(ζ1) Ψ_{N−1}(ζ2, ζ3, ζ23)]_{2=3}.
  DensePairPoly<T> psi_step(std::span<const T> v, const DensePairPoly<T>& previous, const T& coupling,
                            int dimension);

  /// Entries in each six-variable buffer.
  std::size_t buffer_size() const { return six_.size(); }

 private:
  int cap_;
  SimplexLayout<6> six_;
  std::vector<T> current_;
  std::vector<T> next_;
};

extern template class SimplexLayout<3>;
extern template class SimplexLayout<6>;
extern template class DensePairPoly<double>;
extern template class DensePairPoly<Rational>;
extern template class DenseTransfer<double>;
extern template class DenseTransfer<Rational>;

}  // namespace leeyang
