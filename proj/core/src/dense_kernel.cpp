#include "leeyang/dense_kernel.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace leeyang {

namespace {

template <CoefficientField T>
T integer(long long n) {
  return T(n);
}

}  // namespace

template <int K>
SimplexLayout<K>::SimplexLayout(int cap) : cap_(cap) {
  if (cap < 0) throw std::invalid_argument("simplex cap must be nonnegative");
  const int rows = cap + K + 2;
  table_.assign(static_cast<std::size_t>(rows) * (K + 1), 0);
  for (int n = 0; n < rows; ++n) {
    auto row = table_.begin() + static_cast<std::ptrdiff_t>(n) * (K + 1);
    row[0] = 1;
    for (int k = 1; k <= std::min(n, K); ++k) {
      const auto up = table_.begin() + static_cast<std::ptrdiff_t>(n - 1) * (K + 1);
      row[k] = up[k - 1] + up[k];
    }
  }
}

template <int K>
std::size_t SimplexLayout<K>::rank(const std::array<int, K>& x) const {
  std::size_t r = 0;
  int budget = cap_;
  for (int i = 0; i < K; ++i) {
    r += level_offset(K - i, budget, x[static_cast<std::size_t>(i)]);
    budget -= x[static_cast<std::size_t>(i)];
  }
  return r;
}

template <CoefficientField T>
DensePairPoly<T>::DensePairPoly(int max_degree) : layout_(max_degree), data_(layout_.size(), T(0)) {}

template <CoefficientField T>
std::vector<T> DensePairPoly<T>::diagonal() const {
  const int M = max_degree();
  std::vector<T> out(static_cast<std::size_t>(M) + 1, T(0));
  std::size_t i = 0;
  for (int a = 0; a <= M; ++a) {
    for (int p = 0; p <= M - a; ++p) {
      for (int b = 0; b <= M - a - p; ++b, ++i) out[static_cast<std::size_t>(a + p + b)] += data_[i];
    }
  }
  return out;
}

template <CoefficientField T>
TruncatedPoly<T> DensePairPoly<T>::to_sparse() const {
  const int M = max_degree();
  TruncatedPoly<T> out(VarSet::pair(), M);
  std::size_t i = 0;
  for (int a = 0; a <= M; ++a) {
    for (int p = 0; p <= M - a; ++p) {
      for (int b = 0; b <= M - a - p; ++b, ++i) {
        if (data_[i] == 0) continue;
        Exponents e{};
        e[idx(GramVar::Z1)] = static_cast<std::uint16_t>(a);
        e[idx(GramVar::Z2)] = static_cast<std::uint16_t>(p);
        e[idx(GramVar::Z12)] = static_cast<std::uint16_t>(b);
        out.add_term(e, data_[i]);
      }
    }
  }
  return out;
}

template <CoefficientField T>
DensePairPoly<T> DensePairPoly<T>::from_sparse(const TruncatedPoly<T>& p) {
  if (!(p.vars() == VarSet::pair())) throw std::invalid_argument("expected a polynomial in (z1, z2, z12)");
  DensePairPoly out(p.max_degree());
  for (const auto& [e, c] : p.terms()) {
    out.at(e[idx(GramVar::Z1)], e[idx(GramVar::Z2)], e[idx(GramVar::Z12)]) = c;
  }
  return out;
}

template <CoefficientField T>
DenseTransfer<T>::DenseTransfer(int max_degree)
    : cap_(max_degree), six_(max_degree), current_(six_.size(), T(0)), next_(six_.size(), T(0)) {}

template <CoefficientField T>
DensePairPoly<T> DenseTransfer<T>::psi_two(std::span<const T> v1, std::span<const T> v2, const T& coupling,
                                           int dimension) const {
  const int M = cap_;
  DensePairPoly<T> out(M);
  const auto& L = out.layout();
  std::vector<T> cur(L.size(), T(0));
  std::vector<T> nxt(L.size(), T(0));
  const int n1 = std::min<int>(static_cast<int>(v1.size()), M + 1);
  const int n2 = std::min<int>(static_cast<int>(v2.size()), M + 1);
  for (int a = 0; a < n1; ++a) {
    for (int p = 0; p < n2 && a + p <= M; ++p) cur[L.rank({a, p, 0})] = v1[static_cast<std::size_t>(a)] * v2[static_cast<std::size_t>(p)];
  }

  auto acc = out.data();
  for (int k = 0; k <= M; ++k) {
    const int R = M - k;
    const T s = coupling / integer<T>(k + 1);
    bool any = false;
    for (int a = 0; a <= R; ++a) {
      const std::size_t off_a = L.level_offset(3, M, a);
      for (int p = 0; p <= R - a; ++p) {
        const std::size_t row = off_a + L.level_offset(2, M - a, p);
        const bool shift5 = a > 0 && p > 0;
        const std::size_t row5 = shift5 ? L.level_offset(3, M, a - 1) + L.level_offset(2, M - a + 1, p - 1) : 0;
        const long long base_b = dimension + 2LL * a + 2LL * p - 1;
        const long long coef5 = 4LL * a * p;
        for (int b = k & 1; b <= R - a - p; b += 2) {
          T& src = cur[row + static_cast<std::size_t>(b)];
          if (src == 0) continue;
          any = true;
          acc[row + static_cast<std::size_t>(b)] += src;
          const T sv = s * src;
          if (b > 0) nxt[row + static_cast<std::size_t>(b) - 1] += sv * integer<T>(b * (base_b + b));
          if (shift5) nxt[row5 + static_cast<std::size_t>(b) + 1] += sv * integer<T>(coef5);
          src = T(0);
        }
      }
    }
    if (!any) break;
    std::swap(cur, nxt);
  }
  return out;
}

template <CoefficientField T>
DensePairPoly<T> DenseTransfer<T>::psi_step(std::span<const T> v, const DensePairPoly<T>& previous,
                                            const T& coupling, int dimension) {
  const int M = cap_;
  if (previous.max_degree() != M) throw std::invalid_argument("psi_step: degree cap mismatch");
  const auto& S = six_;
  DensePairPoly<T> out(M);
  const auto& L3 = out.layout();
  auto acc = out.data();
  std::vector<T>* cur = &current_;
  std::vector<T>* nxt = &next_;

  // Six-variable layout order: (ζ1, ζ2, ζ3, ζ13, ζ23, ζ12) = (a, p, q, c, d, b).
  struct Prefix {
    std::size_t offset;
    int budget;
  };
  auto prefix = [&](int a, int p, int q, int c) {
    int r = M;
    std::size_t off = S.level_offset(6, r, a);
    r -= a;
    off += S.level_offset(5, r, p);
    r -= p;
    off += S.level_offset(4, r, q);
    r -= q;
    off += S.level_offset(3, r, c);
    r -= c;
    return Prefix{off, r};
  };

  // v(ζ1) · Ψ_{N−1}(ζ2, ζ3, ζ23): Ψ's (ζ1, ζ2, ζ12) exponents become (p, q, d).
  const int nv = std::min<int>(static_cast<int>(v.size()), M + 1);
  const auto prev = previous.data();
  for (int a = 0; a < nv; ++a) {
    const T& va = v[static_cast<std::size_t>(a)];
    if (va == 0) continue;
    std::size_t i = 0;
    for (int x = 0; x <= M; ++x) {
      for (int y = 0; y <= M - x; ++y) {
        for (int w = 0; w <= M - x - y; ++w, ++i) {
          if (a + x + y + w > M || prev[i] == 0) continue;
          const auto pre = prefix(a, x, y, 0);
          (*cur)[pre.offset + S.level_offset(2, pre.budget, w)] = va * prev[i];
        }
      }
    }
  }

  for (int k = 0; k <= M; ++k) {
    const int R = M - k;
    const T s = coupling / integer<T>(k + 1);
    bool any = false;
    auto& src_buf = *cur;
    auto& dst = *nxt;
    for (int a = 0; a <= R; ++a) {
      const std::size_t off1 = S.level_offset(6, M, a);
      const int ra = M - a;
      const std::size_t out_a = L3.level_offset(3, M, a);
      for (int p = 0; p <= R - a; ++p) {
        const std::size_t off2 = off1 + S.level_offset(5, ra, p);
        const int rp = ra - p;
        for (int q = 0; q <= R - a - p; ++q) {
          const std::size_t off3 = off2 + S.level_offset(4, rp, q);
          const int rq = rp - q;
          for (int c = 0; c <= R - a - p - q; ++c) {
            const std::size_t off4 = off3 + S.level_offset(3, rq, c);
            const int rc = rq - c;
            const bool has5 = a > 0 && p > 0;
            const bool has9 = p > 0 && c > 0;
            const Prefix pre5 = has5 ? prefix(a - 1, p - 1, q, c) : Prefix{0, 0};
            const Prefix pre4 = c > 0 ? prefix(a, p, q + 1, c - 1) : Prefix{0, 0};
            const Prefix pre7 = a > 0 ? prefix(a - 1, p, q, c + 1) : Prefix{0, 0};
            const Prefix pre9 = has9 ? prefix(a, p - 1, q, c - 1) : Prefix{0, 0};
            const int b_start = (k + c) & 1;  // b + c ≡ k (mod 2)
            for (int d = 0; d <= R - a - p - q - c; ++d) {
              const int bmax = R - a - p - q - c - d;
              if (b_start > bmax) continue;
              const std::size_t row = off4 + S.level_offset(2, rc, d);
              const std::size_t out_row = out_a + L3.level_offset(2, M - a, p + q + d) + static_cast<std::size_t>(c);
              const bool has4 = c > 0 && d > 0;
              const bool has7 = a > 0 && d > 0;
              const std::size_t row5 = has5 ? pre5.offset + S.level_offset(2, pre5.budget, d) : 0;
              const std::size_t row4 = has4 ? pre4.offset + S.level_offset(2, pre4.budget, d - 1) : 0;
              const std::size_t row7 = has7 ? pre7.offset + S.level_offset(2, pre7.budget, d - 1) : 0;
              const std::size_t row9 = has9 ? pre9.offset + S.level_offset(2, pre9.budget, d + 1) : 0;
              const long long base_b = dimension + 2LL * a + 2LL * p + c + d - 1;
              const T coef5 = integer<T>(4LL * a * p);
              const T coef4 = integer<T>(static_cast<long long>(c) * d);
              const T coef7 = integer<T>(2LL * a * d);
              const T coef9 = integer<T>(2LL * p * c);
              for (int b = b_start; b <= bmax; b += 2) {
                const std::size_t ub = static_cast<std::size_t>(b);
                T& src = src_buf[row + ub];
                if (src == 0) continue;
                any = true;
                acc[out_row + ub] += src;
                const T sv = s * src;
                if (b > 0) dst[row + ub - 1] += sv * integer<T>(b * (base_b + b));
                if (has5) dst[row5 + ub + 1] += sv * coef5;
                if (has4) dst[row4 + ub] += sv * coef4;
                if (has7) dst[row7 + ub] += sv * coef7;
                if (has9) dst[row9 + ub] += sv * coef9;
                src = T(0);
              }
            }
          }
        }
      }
    }
    if (!any) break;
    std::swap(cur, nxt);
  }
  return out;
}

template class SimplexLayout<3>;
template class SimplexLayout<6>;
template class DensePairPoly<double>;
template class DensePairPoly<Rational>;
template class DenseTransfer<double>;
template class DenseTransfer<Rational>;

}  // namespace leeyang
