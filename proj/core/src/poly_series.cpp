#include "leeyang/poly_series.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace leeyang {

namespace {

constexpr std::array<std::string_view, kGramVarCount> kNames = {"z1", "z2", "z3", "z12", "z13", "z23"};

template <CoefficientField T>
nlohmann::json coefficient_to_json(const T& c) {
  if constexpr (std::same_as<T, double>) {
    return c;
  } else {
    return rational_to_string(c);
  }
}

template <CoefficientField T>
T coefficient_from_json(const nlohmann::json& j) {
  if (j.is_number()) return from_double<T>(j.get<double>());
  if (j.is_string()) {
    const Rational q = rational_from_string(j.get<std::string>());
    if constexpr (std::same_as<T, double>) {
      return to_double(q);
    } else {
      return q;
    }
  }
  throw std::invalid_argument("coefficient must be a number or a \"num/den\" string");
}

}  // namespace

std::string_view gram_var_name(GramVar v) { return kNames[idx(v)]; }

GramVar parse_gram_var(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<GramVar>(i);
  }
  throw std::invalid_argument("unknown Gram variable '" + std::string(name) + "'");
}

int total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

VarSet::VarSet(std::initializer_list<GramVar> vars) {
  for (auto v : vars) mask_ |= static_cast<std::uint8_t>(1U << idx(v));
}

std::vector<GramVar> VarSet::list() const {
  std::vector<GramVar> out;
  for (int i = 0; i < kGramVarCount; ++i) {
    if ((mask_ >> i) & 1U) out.push_back(static_cast<GramVar>(i));
  }
  return out;
}

std::size_t VarSet::size() const { return static_cast<std::size_t>(std::popcount(mask_)); }

template <CoefficientField T>
TruncatedPoly<T>::TruncatedPoly(VarSet vars, int max_degree) : vars_(vars), max_degree_(max_degree) {
  if (max_degree < 0) throw std::invalid_argument("maxDegree must be nonnegative");
}

template <CoefficientField T>
TruncatedPoly<T> TruncatedPoly<T>::constant(VarSet vars, int max_degree, const T& c) {
  return monomial(vars, max_degree, Exponents{}, c);
}

template <CoefficientField T>
TruncatedPoly<T> TruncatedPoly<T>::monomial(VarSet vars, int max_degree, const Exponents& e, const T& c) {
  TruncatedPoly p(vars, max_degree);
  for (int i = 0; i < kGramVarCount; ++i) {
    if (e[static_cast<std::size_t>(i)] != 0 && !vars.contains(static_cast<GramVar>(i))) {
      throw std::invalid_argument("monomial uses a variable outside the polynomial's variable set");
    }
  }
  p.add_term(e, c);
  return p;
}

template <CoefficientField T>
TruncatedPoly<T> TruncatedPoly<T>::variable(VarSet vars, int max_degree, GramVar v) {
  Exponents e{};
  e[idx(v)] = 1;
  return monomial(vars, max_degree, e, T(1));
}

template <CoefficientField T>
TruncatedPoly<T> TruncatedPoly<T>::univariate(VarSet vars, int max_degree, GramVar v, const std::vector<T>& c) {
  if (!vars.contains(v)) throw std::invalid_argument("univariate: variable not in set");
  TruncatedPoly p(vars, max_degree);
  for (std::size_t n = 0; n < c.size() && static_cast<int>(n) <= max_degree; ++n) {
    Exponents e{};
    e[idx(v)] = static_cast<std::uint16_t>(n);
    p.add_term(e, c[n]);
  }
  return p;
}

template <CoefficientField T>
int TruncatedPoly<T>::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
  return d;
}

template <CoefficientField T>
T TruncatedPoly<T>::coefficient(const Exponents& e) const {
  const auto it = terms_.find(e);
  return it == terms_.end() ? T(0) : it->second;
}

template <CoefficientField T>
void TruncatedPoly<T>::add_term(const Exponents& e, const T& c) {
  if (total_degree(e) > max_degree_) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) it->second += c;
  if (is_negligible(it->second)) terms_.erase(it);
}

template <CoefficientField T>
void TruncatedPoly<T>::require_compatible(const TruncatedPoly& other) const {
  if (!(vars_ == other.vars_)) throw std::invalid_argument("polynomials have different variable sets");
  if (max_degree_ != other.max_degree_) throw std::invalid_argument("polynomials have different degree caps");
}

template <CoefficientField T>
TruncatedPoly<T>& TruncatedPoly<T>::operator+=(const TruncatedPoly& other) {
  require_compatible(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

template <CoefficientField T>
TruncatedPoly<T>& TruncatedPoly<T>::operator-=(const TruncatedPoly& other) {
  require_compatible(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

template <CoefficientField T>
TruncatedPoly<T>& TruncatedPoly<T>::operator*=(const T& scalar) {
  if (is_negligible(scalar)) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= scalar;
    it = is_negligible(it->second) ? terms_.erase(it) : std::next(it);
  }
  return *this;
}

template <CoefficientField T>
TruncatedPoly<T> TruncatedPoly<T>::derivative(GramVar v) const {
  TruncatedPoly out(vars_, max_degree_);
  for (const auto& [e, c] : terms_) {
    const auto k = e[idx(v)];
    if (k == 0) continue;
    Exponents f = e;
    --f[idx(v)];
    out.add_term(f, c * T(static_cast<long long>(k)));
  }
  return out;
}

template <CoefficientField T>
TruncatedPoly<T> add(const TruncatedPoly<T>& p, const TruncatedPoly<T>& q) {
  return p + q;
}

template <CoefficientField T>
TruncatedPoly<T> mul(const TruncatedPoly<T>& p, const TruncatedPoly<T>& q) {
  if (!(p.vars() == q.vars())) throw std::invalid_argument("polynomials have different variable sets");
  if (p.max_degree() != q.max_degree()) throw std::invalid_argument("polynomials have different degree caps");
  TruncatedPoly<T> out(p.vars(), p.max_degree());
  for (const auto& [ep, cp] : p.terms()) {
    const int dp = total_degree(ep);
    for (const auto& [eq, cq] : q.terms()) {
      if (dp + total_degree(eq) > p.max_degree()) continue;
      Exponents e;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::uint16_t>(ep[i] + eq[i]);
      out.add_term(e, cp * cq);
    }
  }
  return out;
}

template <CoefficientField T>
TruncatedPoly<T> scale(const TruncatedPoly<T>& p, const T& c) {
  TruncatedPoly<T> out = p;
  out *= c;
  return out;
}

template <CoefficientField T>
std::complex<double> eval(const TruncatedPoly<T>& p, const GramPoint& point) {
  std::array<std::complex<double>, kGramVarCount> value{};
  for (auto v : p.vars().list()) {
    const auto it = point.find(v);
    if (it == point.end()) {
      throw std::invalid_argument("evaluation point does not assign " + std::string(gram_var_name(v)));
    }
    value[idx(v)] = it->second;
  }
  std::complex<double> sum{0.0, 0.0};
  for (const auto& [e, c] : p.terms()) {
    std::complex<double> term = to_double(c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (int k = 0; k < e[i]; ++k) term *= value[i];
    }
    sum += term;
  }
  return sum;
}

template <CoefficientField T>
std::vector<T> diagonal(const TruncatedPoly<T>& p) {
  std::vector<T> out(static_cast<std::size_t>(p.max_degree()) + 1, T(0));
  for (const auto& [e, c] : p.terms()) out[static_cast<std::size_t>(total_degree(e))] += c;
  return out;
}

template <CoefficientField T>
TruncatedPoly<T> rename_variables(const TruncatedPoly<T>& p, const std::array<GramVar, kGramVarCount>& mapping,
                                  VarSet target) {
  for (auto v : p.vars().list()) {
    if (!target.contains(mapping[idx(v)])) {
      throw std::invalid_argument("rename target set lacks " + std::string(gram_var_name(mapping[idx(v)])));
    }
  }
  TruncatedPoly<T> out(target, p.max_degree());
  for (const auto& [e, c] : p.terms()) {
    Exponents f{};
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) f[idx(mapping[i])] = static_cast<std::uint16_t>(f[idx(mapping[i])] + e[i]);
    }
    out.add_term(f, c);
  }
  return out;
}

template <CoefficientField T>
TruncatedPoly<T> merge_2_3(const TruncatedPoly<T>& p) {
  using enum GramVar;
  const std::array<GramVar, kGramVarCount> mapping = {Z1, Z2, Z2, Z12, Z12, Z2};
  return rename_variables(p, mapping, VarSet::pair());
}

GramOperator::GramOperator(int dimension, std::vector<OperatorTerm> terms)
    : dimension_(dimension), terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    const int balance = total_degree(t.multiplier) - static_cast<int>(t.derivatives.size());
    if (balance != -1) {
      throw std::invalid_argument("operator term does not lower total degree by exactly one");
    }
  }
}

VarSet GramOperator::referenced_vars() const {
  std::uint8_t mask = 0;
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < t.multiplier.size(); ++i) {
      if (t.multiplier[i] != 0) mask |= static_cast<std::uint8_t>(1U << i);
    }
    for (auto d : t.derivatives) mask |= static_cast<std::uint8_t>(1U << idx(d));
  }
  return VarSet::from_mask(mask);
}

template <CoefficientField T>
TruncatedPoly<T> apply_operator(const GramOperator& op, const TruncatedPoly<T>& p) {
  if (!p.vars().contains(op.referenced_vars())) {
    throw std::invalid_argument("operator references variables outside the polynomial's variable set");
  }
  TruncatedPoly<T> out(p.vars(), p.max_degree());
  for (const auto& [e, c] : p.terms()) {
    for (const auto& term : op.terms()) {
      Exponents f = e;
      long long factor = term.coefficient;
      bool vanished = false;
      // Derivatives act first (right to left; they commute), the multiplier last.
      for (auto it = term.derivatives.rbegin(); it != term.derivatives.rend(); ++it) {
        auto& k = f[idx(*it)];
        if (k == 0) {
          vanished = true;
          break;
        }
        factor *= k;
        --k;
      }
      if (vanished || factor == 0) continue;
      for (std::size_t i = 0; i < f.size(); ++i) f[i] = static_cast<std::uint16_t>(f[i] + term.multiplier[i]);
      out.add_term(f, c * T(factor));
    }
  }
  return out;
}

template <CoefficientField T>
TruncatedPoly<T> exp_operator(const T& coupling, const GramOperator& op, const TruncatedPoly<T>& p) {
  TruncatedPoly<T> result = p;
  if (is_negligible(coupling)) return result;
  TruncatedPoly<T> term = p;
  for (long long k = 1; !term.is_zero(); ++k) {
    term = apply_operator(op, term);
    term *= coupling / T(k);
    result += term;
  }
  return result;
}

template <CoefficientField T>
nlohmann::json to_json(const TruncatedPoly<T>& p) {
  nlohmann::json j;
  const auto vars = p.vars().list();
  auto names = nlohmann::json::array();
  for (auto v : vars) names.push_back(std::string(gram_var_name(v)));
  j["vars"] = names;
  j["maxDegree"] = p.max_degree();
  auto terms = nlohmann::json::array();
  for (const auto& [e, c] : p.terms()) {
    auto exps = nlohmann::json::array();
    for (auto v : vars) exps.push_back(e[idx(v)]);
    terms.push_back({{"exp", exps}, {"coeff", coefficient_to_json(c)}});
  }
  j["terms"] = terms;
  return j;
}

template <CoefficientField T>
TruncatedPoly<T> poly_from_json(const nlohmann::json& j) {
  std::vector<GramVar> vars;
  std::uint8_t mask = 0;
  for (const auto& name : j.at("vars")) {
    const auto v = parse_gram_var(name.get<std::string>());
    if ((mask >> idx(v)) & 1U) throw std::invalid_argument("duplicate variable in \"vars\"");
    mask |= static_cast<std::uint8_t>(1U << idx(v));
    vars.push_back(v);
  }
  TruncatedPoly<T> p(VarSet::from_mask(mask), j.at("maxDegree").get<int>());
  for (const auto& term : j.at("terms")) {
    const auto& exps = term.at("exp");
    if (!exps.is_array() || exps.size() != vars.size()) {
      throw std::invalid_argument("term exponent list does not match \"vars\"");
    }
    Exponents e{};
    for (std::size_t i = 0; i < vars.size(); ++i) {
      const int k = exps[i].get<int>();
      if (k < 0 || k > 0xFFFF) throw std::invalid_argument("exponent out of range");
      e[idx(vars[i])] = static_cast<std::uint16_t>(k);
    }
    if (total_degree(e) > p.max_degree()) throw std::invalid_argument("term exceeds maxDegree");
    p.add_term(e, coefficient_from_json<T>(term.at("coeff")));
  }
  return p;
}

#define LEEYANG_INSTANTIATE(T)                                                                          \
  template class TruncatedPoly<T>;                                                                     \
  template TruncatedPoly<T> add(const TruncatedPoly<T>&, const TruncatedPoly<T>&);                     \
  template TruncatedPoly<T> mul(const TruncatedPoly<T>&, const TruncatedPoly<T>&);                     \
  template TruncatedPoly<T> scale(const TruncatedPoly<T>&, const T&);                                  \
  template std::complex<double> eval(const TruncatedPoly<T>&, const GramPoint&);                       \
  template std::vector<T> diagonal(const TruncatedPoly<T>&);                                           \
  template TruncatedPoly<T> rename_variables(const TruncatedPoly<T>&,                                  \
                                             const std::array<GramVar, kGramVarCount>&, VarSet);       \
  template TruncatedPoly<T> merge_2_3(const TruncatedPoly<T>&);                                        \
  template TruncatedPoly<T> apply_operator(const GramOperator&, const TruncatedPoly<T>&);              \
  template TruncatedPoly<T> exp_operator(const T&, const GramOperator&, const TruncatedPoly<T>&);      \
  template nlohmann::json to_json(const TruncatedPoly<T>&);                                            \
  template TruncatedPoly<T> poly_from_json<T>(const nlohmann::json&);

LEEYANG_INSTANTIATE(double)
LEEYANG_INSTANTIATE(Rational)

#undef LEEYANG_INSTANTIATE

}  // namespace leeyang
