#include "leeyang/field.hpp"

#include <cstdlib>

namespace leeyang {

Rational to_rational(double x) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument("cannot convert non-finite value to a rational");
  }
  return Rational(x);
}

double to_double(const Rational& x) { return x.convert_to<double>(); }

std::string rational_to_string(const Rational& q) {
  const auto num = boost::multiprecision::numerator(q);
  const auto den = boost::multiprecision::denominator(q);
  if (den == 1) {
    return num.str();
  }
  return num.str() + "/" + den.str();
}

Rational rational_from_string(std::string_view text) {
  const std::string s(text);
  if (s.empty()) {
    throw std::invalid_argument("empty rational literal");
  }
  const auto slash = s.find('/');
  const bool integral = s.find_first_of(".eE") == std::string::npos;
  if (slash != std::string::npos || integral) {
    Rational q;
    try {
      q = Rational(s);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed rational literal: " + s);
    }
    if (slash != std::string::npos && s.find_first_not_of("+-0", slash + 1) == std::string::npos) {
      throw std::invalid_argument("zero denominator: " + s);
    }
    return q;
  }
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') {
    throw std::invalid_argument("malformed numeric literal: " + s);
  }
  return to_rational(v);
}

Backend parse_backend(std::string_view name) {
  if (name == "float") return Backend::Float;
  if (name == "rational") return Backend::Rational;
  throw std::invalid_argument("unknown backend '" + std::string(name) + "' (expected float|rational)");
}

std::string_view backend_name(Backend b) { return b == Backend::Float ? "float" : "rational"; }

}  // namespace leeyang
