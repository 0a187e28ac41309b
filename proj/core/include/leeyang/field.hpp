#pragma once

// Coefficient fields shared by the series and polynomial code.
//
// Two backends are supported: IEEE double (the default, fast path) and exact
// GMP rationals (identity checks, closed-form comparisons).

#include <cmath>
#include <concepts>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace leeyang {

using Rational = boost::multiprecision::mpq_rational;

enum class Backend { Float, Rational };

template <class T>
concept CoefficientField = std::same_as<T, double> || std::same_as<T, Rational>;

/// Error raised when a numeric procedure fails to reach its tolerance.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact conversion: every finite double is a dyadic rational.
Rational to_rational(double x);

inline double to_double(double x) { return x; }
double to_double(const Rational& x);

/// Float-mode pruning threshold. Only underflow-scale values are dropped.
inline constexpr double kFloatPruneThreshold = 1e-300;

inline bool is_negligible(double c) { return std::abs(c) < kFloatPruneThreshold; }
inline bool is_negligible(const Rational& c) { return c == 0; }

/// "num/den" (or "num" for integers).
std::string rational_to_string(const Rational& q);
/// Accepts "num/den", "num", or a decimal/scientific literal (converted exactly).
Rational rational_from_string(std::string_view text);

template <CoefficientField T>
T from_double(double x) {
  if constexpr (std::same_as<T, double>) {
    return x;
  } else {
    return to_rational(x);
  }
}

template <CoefficientField T>
T from_integer(long long n) {
  return T(n);
}

Backend parse_backend(std::string_view name);
std::string_view backend_name(Backend b);

}  // namespace leeyang
