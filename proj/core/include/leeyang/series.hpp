#pragma once

// Small helpers for univariate coefficient vectors c_0 + c_1 ζ + ... .

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace leeyang {

template <class T, class Z>
Z horner(std::span<const T> c, Z z) {
  Z acc{0};
  for (std::size_t i = c.size(); i-- > 0;) {
    acc = acc * z + Z(c[i]);
  }
  return acc;
}

inline double horner(std::span<const double> c, double z) { return horner<double, double>(c, z); }

inline std::complex<double> horner(std::span<const double> c, std::complex<double> z) {
  return horner<double, std::complex<double>>(c, z);
}

/// m-th derivative of a coefficient vector; the result has m fewer entries.
template <class T>
std::vector<T> derivative_coefficients(std::span<const T> c, int m) {
  if (m < 0) m = 0;
  if (static_cast<std::size_t>(m) >= c.size()) return {};
  std::vector<T> out(c.size() - static_cast<std::size_t>(m));
  for (std::size_t n = 0; n < out.size(); ++n) {
    T factor(1);
    for (int j = 1; j <= m; ++j) factor *= T(static_cast<long long>(n) + j);
    out[n] = c[n + static_cast<std::size_t>(m)] * factor;
  }
  return out;
}

/// Composite Simpson rule on a (possibly nonuniform) strictly increasing grid.
/// An odd number of intervals closes with a trapezoid on the last one.
double simpson(std::span<const double> x, std::span<const double> y);

}  // namespace leeyang
