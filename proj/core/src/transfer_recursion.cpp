#include "leeyang/transfer_recursion.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "leeyang/dense_kernel.hpp"

namespace leeyang {

namespace {

Exponents mono(std::initializer_list<GramVar> vars) {
  Exponents e{};
  for (auto v : vars) ++e[idx(v)];
  return e;
}

template <CoefficientField T>
std::vector<T> truncated(std::span<const T> v, int max_degree) {
  const auto n = std::min<std::size_t>(v.size(), static_cast<std::size_t>(max_degree) + 1);
  return {v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n)};
}

template <CoefficientField T>
PartitionSeries<T> make_series(std::vector<T> coefficients, int n, const LaplaceSeries<T>& v, const T& coupling,
                               int max_degree) {
  PartitionSeries<T> s;
  s.coefficients = std::move(coefficients);
  s.chain_length = n;
  s.dimension = v.dimension;
  s.coupling = to_double(coupling);
  s.measure_label = v.measure_label;
  s.truncation_degree = max_degree;
  s.pi_power = n * v.pi_power;
  return s;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

GramOperator delta_operator(int arity, int dimension) {
  using V = GramVar;
  if (dimension < 1) throw std::invalid_argument("dimension must be >= 1");
  std::vector<OperatorTerm> terms;
  if (arity == 2) {
    terms = {
        {dimension, {}, {V::Z12}},
        {2, mono({V::Z1}), {V::Z1, V::Z12}},
        {2, mono({V::Z2}), {V::Z2, V::Z12}},
        {4, mono({V::Z12}), {V::Z1, V::Z2}},
        {1, mono({V::Z12}), {V::Z12, V::Z12}},
    };
  } else if (arity == 3) {
    terms = {
        {dimension, {}, {V::Z12}},
        {2, mono({V::Z1}), {V::Z1, V::Z12}},
        {2, mono({V::Z2}), {V::Z2, V::Z12}},
        {1, mono({V::Z3}), {V::Z13, V::Z23}},
        {4, mono({V::Z12}), {V::Z1, V::Z2}},
        {1, mono({V::Z12}), {V::Z12, V::Z12}},
        {2, mono({V::Z13}), {V::Z1, V::Z23}},
        {1, mono({V::Z13}), {V::Z12, V::Z13}},
        {2, mono({V::Z23}), {V::Z2, V::Z13}},
        {1, mono({V::Z23}), {V::Z12, V::Z23}},
    };
  } else {
    throw std::invalid_argument("delta_operator arity must be 2 or 3");
  }
  return GramOperator(dimension, std::move(terms));
}

template <CoefficientField T>
TruncatedPoly<T> psi_two(std::span<const T> v1, std::span<const T> v2, const T& coupling, int dimension,
                         int max_degree) {
  const auto vars = VarSet::pair();
  const auto p1 = TruncatedPoly<T>::univariate(vars, max_degree, GramVar::Z1, truncated(v1, max_degree));
  const auto p2 = TruncatedPoly<T>::univariate(vars, max_degree, GramVar::Z2, truncated(v2, max_degree));
  return exp_operator(coupling, delta_operator(2, dimension), mul(p1, p2));
}

template <CoefficientField T>
TruncatedPoly<T> psi_step(std::span<const T> v, const TruncatedPoly<T>& previous, const T& coupling, int dimension) {
  using V = GramVar;
  if (!(previous.vars() == VarSet::pair())) throw std::invalid_argument("psi_step expects Ψ in (z1, z2, z12)");
  const int M = previous.max_degree();
  const auto six = VarSet::triple();
  const std::array<GramVar, kGramVarCount> shift{V::Z2, V::Z3, V::Z3, V::Z23, V::Z13, V::Z23};
  const auto moved = rename_variables(previous, shift, six);
  const auto left = TruncatedPoly<T>::univariate(six, M, V::Z1, truncated(v, M));
  return merge_2_3(exp_operator(coupling, delta_operator(3, dimension), mul(left, moved)));
}

template <CoefficientField T>
std::vector<PartitionSeries<T>> phi_chain(int chain_length, const LaplaceSeries<T>& v, const T& coupling,
                                          int max_degree) {
  if (chain_length < 1) throw std::invalid_argument("chain length must be >= 1");
  if (max_degree < 0) throw std::invalid_argument("truncation degree must be nonnegative");
  if (v.dimension < 1) throw std::invalid_argument("series dimension must be >= 1");
  const auto base = truncated<T>(v.coefficients, max_degree);
  std::vector<PartitionSeries<T>> out;
  auto padded = base;
  padded.resize(static_cast<std::size_t>(max_degree) + 1, T(0));
  out.push_back(make_series(padded, 1, v, coupling, max_degree));
  if (chain_length == 1) return out;

  DenseTransfer<T> kernel(max_degree);
  auto psi = kernel.psi_two(base, base, coupling, v.dimension);
  out.push_back(make_series(psi.diagonal(), 2, v, coupling, max_degree));
  for (int n = 3; n <= chain_length; ++n) {
    psi = kernel.psi_step(base, psi, coupling, v.dimension);
    out.push_back(make_series(psi.diagonal(), n, v, coupling, max_degree));
  }
  return out;
}

template <CoefficientField T>
PartitionSeries<T> phi_from_series(int chain_length, const LaplaceSeries<T>& v, const T& coupling, int max_degree) {
  return phi_chain(chain_length, v, coupling, max_degree).back();
}

PartitionSeries<double> phi(int chain_length, int dimension, double coupling, const RadialMeasure& measure,
                            int max_degree) {
  const auto v = laplace_transform(measure, dimension, max_degree);
  return phi_from_series(chain_length, v, coupling, max_degree);
}

PartitionSeries<Rational> phi_exact(int chain_length, int dimension, const Rational& coupling,
                                    const RadialMeasure& measure, int max_degree) {
  const auto v = laplace_transform_exact(measure, dimension, max_degree);
  return phi_from_series(chain_length, v, coupling, max_degree);
}

PartitionSeries<double> to_float(const PartitionSeries<Rational>& s) {
  PartitionSeries<double> out;
  out.chain_length = s.chain_length;
  out.dimension = s.dimension;
  out.coupling = s.coupling;
  out.measure_label = s.measure_label;
  out.truncation_degree = s.truncation_degree;
  const double scale = std::pow(std::numbers::pi, s.pi_power);
  for (const auto& c : s.coefficients) out.coefficients.push_back(to_double(c) * scale);
  return out;
}

int stable_through(std::span<const double> lower, std::span<const double> higher, double rel_tol) {
  const std::size_t n = std::min(lower.size(), higher.size());
  int k = -1;
  for (std::size_t i = 0; i < n; ++i) {
    const double scale = std::max(std::abs(lower[i]), std::abs(higher[i]));
    if (std::abs(lower[i] - higher[i]) > rel_tol * scale) break;
    k = static_cast<int>(i);
  }
  return k;
}

template <CoefficientField T>
std::string to_csv(const PartitionSeries<T>& s) {
  std::ostringstream os;
  os << "n,a_n\n";
  for (std::size_t n = 0; n < s.coefficients.size(); ++n) {
    if constexpr (std::same_as<T, double>) {
      os << n << ',' << format_double(s.coefficients[n]) << '\n';
    } else {
      os << n << ',' << rational_to_string(s.coefficients[n]) << '\n';
    }
  }
  return os.str();
}

template <CoefficientField T>
nlohmann::json metadata_json(const PartitionSeries<T>& s, std::optional<int> stable) {
  nlohmann::json j;
  j["N"] = s.chain_length;
  j["D"] = s.dimension;
  j["J"] = s.coupling;
  j["measure"] = s.measure_label;
  j["M"] = s.truncation_degree;
  j["pi_power"] = s.pi_power;
  j["stable_through"] = stable ? nlohmann::json(*stable) : nlohmann::json(nullptr);
  return j;
}

#define LEEYANG_INSTANTIATE(T)                                                                                 \
  template TruncatedPoly<T> psi_two(std::span<const T>, std::span<const T>, const T&, int, int);              \
  template TruncatedPoly<T> psi_step(std::span<const T>, const TruncatedPoly<T>&, const T&, int);             \
  template std::vector<PartitionSeries<T>> phi_chain(int, const LaplaceSeries<T>&, const T&, int);            \
  template PartitionSeries<T> phi_from_series(int, const LaplaceSeries<T>&, const T&, int);                   \
  template std::string to_csv(const PartitionSeries<T>&);                                                     \
  template nlohmann::json metadata_json(const PartitionSeries<T>&, std::optional<int>);

LEEYANG_INSTANTIATE(double)
LEEYANG_INSTANTIATE(Rational)

#undef LEEYANG_INSTANTIATE

}  // namespace leeyang
