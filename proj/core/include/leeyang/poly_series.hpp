#pragma once

// Sparse truncated polynomials over the Gram coordinates
//   ζ1 = z1², ζ2 = z2², ζ3 = z3², ζ12 = z1·z2, ζ13 = z1·z3, ζ23 = z2·z3
// together with linear differential operators whose every term lowers the
// total degree by exactly one. For such operators exp(J·op) terminates on any
// polynomial, so the exponential is computed without truncation error.

#include <array>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "leeyang/field.hpp"

namespace leeyang {

/// Canonical variable order; multi-indices are stored in this order.
enum class GramVar : std::uint8_t { Z1 = 0, Z2 = 1, Z3 = 2, Z12 = 3, Z13 = 4, Z23 = 5 };
inline constexpr int kGramVarCount = 6;

std::string_view gram_var_name(GramVar v);
GramVar parse_gram_var(std::string_view name);

inline constexpr std::size_t idx(GramVar v) { return static_cast<std::size_t>(v); }

using Exponents = std::array<std::uint16_t, kGramVarCount>;

int total_degree(const Exponents& e);

/// An ordered subset of the six Gram variables.
class VarSet {
 public:
  VarSet() = default;
  VarSet(std::initializer_list<GramVar> vars);
  static VarSet from_mask(std::uint8_t mask) {
    VarSet s;
    s.mask_ = static_cast<std::uint8_t>(mask & 0x3FU);
    return s;
  }

  static VarSet pair() { return {GramVar::Z1, GramVar::Z2, GramVar::Z12}; }
  static VarSet triple() {
    return {GramVar::Z1, GramVar::Z2, GramVar::Z3, GramVar::Z12, GramVar::Z13, GramVar::Z23};
  }

  bool contains(GramVar v) const { return (mask_ >> idx(v)) & 1U; }
  bool contains(const VarSet& other) const { return (other.mask_ & ~mask_) == 0; }
  std::vector<GramVar> list() const;
  std::size_t size() const;
  std::uint8_t mask() const { return mask_; }

  friend bool operator==(const VarSet&, const VarSet&) = default;

 private:
  std::uint8_t mask_ = 0;
};

using GramPoint = std::map<GramVar, std::complex<double>>;

template <CoefficientField T>
class TruncatedPoly {
 public:
  using Terms = std::map<Exponents, T>;

  TruncatedPoly(VarSet vars, int max_degree);

  static TruncatedPoly constant(VarSet vars, int max_degree, const T& c);
  static TruncatedPoly monomial(VarSet vars, int max_degree, const Exponents& e, const T& c);
  static TruncatedPoly variable(VarSet vars, int max_degree, GramVar v);
  /// Σ c_n vⁿ for a univariate coefficient list.
  static TruncatedPoly univariate(VarSet vars, int max_degree, GramVar v, const std::vector<T>& c);

  const VarSet& vars() const { return vars_; }
  int max_degree() const { return max_degree_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  /// Largest stored total degree, −1 for the zero polynomial.
  int degree() const;

  T coefficient(const Exponents& e) const;
  /// Accumulate c into the e coefficient. Terms above the cap are dropped;
  /// exact (or, in float mode, underflow-scale) zeros are erased.
  void add_term(const Exponents& e, const T& c);

  TruncatedPoly& operator+=(const TruncatedPoly& other);
  TruncatedPoly& operator-=(const TruncatedPoly& other);
  TruncatedPoly& operator*=(const T& scalar);

  TruncatedPoly derivative(GramVar v) const;

  friend bool operator==(const TruncatedPoly& a, const TruncatedPoly& b) {
    return a.vars_ == b.vars_ && a.max_degree_ == b.max_degree_ && a.terms_ == b.terms_;
  }

 private:
  void require_compatible(const TruncatedPoly& other) const;

  VarSet vars_;
  int max_degree_;
  Terms terms_;
};

template <CoefficientField T>
TruncatedPoly<T> add(const TruncatedPoly<T>& p, const TruncatedPoly<T>& q);
template <CoefficientField T>
TruncatedPoly<T> mul(const TruncatedPoly<T>& p, const TruncatedPoly<T>& q);
template <CoefficientField T>
TruncatedPoly<T> scale(const TruncatedPoly<T>& p, const T& c);

template <CoefficientField T>
TruncatedPoly<T> operator+(TruncatedPoly<T> p, const TruncatedPoly<T>& q) {
  p += q;
  return p;
}
template <CoefficientField T>
TruncatedPoly<T> operator-(TruncatedPoly<T> p, const TruncatedPoly<T>& q) {
  p -= q;
  return p;
}
template <CoefficientField T>
TruncatedPoly<T> operator*(const TruncatedPoly<T>& p, const TruncatedPoly<T>& q) {
  return mul(p, q);
}

/// Evaluate at a complex point; every variable of p must be assigned.
template <CoefficientField T>
std::complex<double> eval(const TruncatedPoly<T>& p, const GramPoint& point);

/// Substitute ζ_all = ζ and collect by total degree.
template <CoefficientField T>
std::vector<T> diagonal(const TruncatedPoly<T>& p);

/// Rename variables: each v of p becomes mapping[v]. The target set must
/// contain every image.
template <CoefficientField T>
TruncatedPoly<T> rename_variables(const TruncatedPoly<T>& p, const std::array<GramVar, kGramVarCount>& mapping,
                                  VarSet target);

/// [·]_{2=3}: ζ3 → ζ2, ζ23 → ζ2, ζ13 → ζ12, landing in (ζ1, ζ2, ζ12).
template <CoefficientField T>
TruncatedPoly<T> merge_2_3(const TruncatedPoly<T>& p);

/// One term c · multiplier · ∂_{d_1} ⋯ ∂_{d_k}.
struct OperatorTerm {
  long long coefficient = 1;
  Exponents multiplier{};
  std::vector<GramVar> derivatives;
};

class GramOperator {
 public:
  /// Throws std::invalid_argument unless every term lowers total degree by one.
  GramOperator(int dimension, std::vector<OperatorTerm> terms);

  int dimension() const { return dimension_; }
  const std::vector<OperatorTerm>& terms() const { return terms_; }
  VarSet referenced_vars() const;

 private:
  int dimension_;
  std::vector<OperatorTerm> terms_;
};

template <CoefficientField T>
TruncatedPoly<T> apply_operator(const GramOperator& op, const TruncatedPoly<T>& p);

/// Σ_k (J^k / k!) opᵏ p; exact because op is nilpotent on polynomials.
template <CoefficientField T>
TruncatedPoly<T> exp_operator(const T& coupling, const GramOperator& op, const TruncatedPoly<T>& p);

template <CoefficientField T>
nlohmann::json to_json(const TruncatedPoly<T>& p);
template <CoefficientField T>
TruncatedPoly<T> poly_from_json(const nlohmann::json& j);

}  // namespace leeyang
