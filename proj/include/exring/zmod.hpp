#pragma once

// Exact linear algebra over Z/L, L composite: Howell-style row bases for
// additive spans, membership solves that report a combination of the original
// generators, subgroup sizes and a fixed enumeration order.
//
// A plain row echelon form over Z/L is not enough to decide membership (the
// span of (2,1) mod 4 contains (0,2), which echelon reduction misses), so the
// basis keeps the annihilator row (L/g)*r for every placed pivot row r.

#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

namespace exring::zmod {

using i64 = std::int64_t;
using Vec = std::vector<i64>;

inline i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

// g = u*a + v*b
inline i64 xgcd(i64 a, i64 b, i64& u, i64& v) {
  if (b == 0) {
    u = 1;
    v = 0;
    return a;
  }
  i64 u1, v1;
  i64 g = xgcd(b, a % b, u1, v1);
  u = v1;
  v = u1 - (a / b) * v1;
  return g;
}

// inverse of a mod m, gcd(a, m) must be 1
inline i64 inv_mod(i64 a, i64 m) {
  if (m == 1) return 0;
  i64 u, v;
  xgcd(mod(a, m), m, u, v);
  return mod(u, m);
}

struct RowBasis {
  i64 L = 1;
  int cols = 0;
  int gens = 0;                // number of original generators
  std::vector<Vec> rows;       // placed rows, ascending pivot columns
  std::vector<Vec> combo;      // rows[k] = sum_j combo[k][j] * generator[j]
  std::vector<int> pivot;      // pivot column of rows[k]
  std::vector<i64> pivot_div;  // gcd(rows[k][pivot[k]], L)

  i64 subgroup_size() const {
    i64 s = 1;
    for (i64 pd : pivot_div) s *= L / pd;
    return s;
  }
};

namespace detail {

inline void add_scaled(Vec& dst, const Vec& src, i64 c, i64 L) {
  for (std::size_t k = 0; k < dst.size(); ++k) dst[k] = mod(dst[k] + c * src[k], L);
}

// smallest c >= 0 with c*a == b (mod L), or -1
inline i64 solve_scalar(i64 a, i64 b, i64 L) {
  if (L == 1) return 0;
  i64 g = std::gcd(a, L);
  if (g == 0) return b == 0 ? 0 : -1;
  if (b % g != 0) return -1;
  i64 m = L / g;
  return mod((b / g) % m * inv_mod(a / g, m), m);
}

}  // namespace detail

inline RowBasis howell(i64 L, const std::vector<Vec>& generators, int cols_hint = -1) {
  RowBasis B;
  B.L = L;
  B.gens = static_cast<int>(generators.size());
  B.cols = generators.empty() ? (cols_hint < 0 ? 0 : cols_hint)
                              : static_cast<int>(generators[0].size());

  std::vector<Vec> work;
  std::vector<Vec> wcombo;
  work.reserve(generators.size());
  for (std::size_t t = 0; t < generators.size(); ++t) {
    Vec r(B.cols);
    for (int k = 0; k < B.cols; ++k) r[k] = mod(generators[t][k], L);
    work.push_back(std::move(r));
    Vec c(B.gens, 0);
    c[t] = 1;
    wcombo.push_back(std::move(c));
  }

  for (int col = 0; col < B.cols; ++col) {
    int idx = -1;
    for (std::size_t t = 0; t < work.size(); ++t)
      if (work[t][col] != 0) {
        idx = static_cast<int>(t);
        break;
      }
    if (idx < 0) continue;

    Vec prow = std::move(work[idx]);
    Vec pcombo = std::move(wcombo[idx]);
    work.erase(work.begin() + idx);
    wcombo.erase(wcombo.begin() + idx);

    for (std::size_t t = 0; t < work.size(); ++t) {
      i64 b = work[t][col];
      if (b == 0) continue;
      i64 a = prow[col];
      i64 u, v;
      i64 g = xgcd(a, b, u, v);
      Vec np(B.cols), npc(B.gens);
      Vec ot(B.cols), otc(B.gens);
      for (int k = 0; k < B.cols; ++k) {
        np[k] = mod(u * prow[k] + v * work[t][k], L);
        ot[k] = mod((a / g) * work[t][k] - (b / g) * prow[k], L);
      }
      for (int k = 0; k < B.gens; ++k) {
        npc[k] = mod(u * pcombo[k] + v * wcombo[t][k], L);
        otc[k] = mod((a / g) * wcombo[t][k] - (b / g) * pcombo[k], L);
      }
      prow = std::move(np);
      pcombo = std::move(npc);
      work[t] = std::move(ot);
      wcombo[t] = std::move(otc);
    }

    i64 pd = std::gcd(prow[col], L);
    // annihilator row keeps the Howell membership property
    i64 ann = L / pd;
    if (ann > 1) {
      Vec ar(B.cols), ac(B.gens);
      bool nonzero = false;
      for (int k = 0; k < B.cols; ++k) {
        ar[k] = mod(ann * prow[k], L);
        nonzero = nonzero || ar[k] != 0;
      }
      if (nonzero) {
        for (int k = 0; k < B.gens; ++k) ac[k] = mod(ann * pcombo[k], L);
        work.push_back(std::move(ar));
        wcombo.push_back(std::move(ac));
      }
    }

    B.rows.push_back(std::move(prow));
    B.combo.push_back(std::move(pcombo));
    B.pivot.push_back(col);
    B.pivot_div.push_back(pd);
  }

  // reduce entries above each pivot into [0, pivot_div)
  for (std::size_t k = 1; k < B.rows.size(); ++k) {
    int col = B.pivot[k];
    i64 pd = B.pivot_div[k];
    for (std::size_t m = 0; m < k; ++m) {
      i64 e = B.rows[m][col];
      i64 delta = e - mod(e, pd);
      if (delta == 0) continue;
      i64 c = detail::solve_scalar(B.rows[k][col], delta, L);
      detail::add_scaled(B.rows[m], B.rows[k], -c, L);
      detail::add_scaled(B.combo[m], B.combo[k], -c, L);
    }
  }
  return B;
}

// Coefficients over the original generators, or nullopt if v is not in the span.
inline std::optional<Vec> express(const RowBasis& B, Vec v) {
  for (auto& x : v) x = mod(x, B.L);
  Vec coeff(B.gens, 0);
  for (std::size_t k = 0; k < B.rows.size(); ++k) {
    i64 e = v[B.pivot[k]];
    if (e == 0) continue;
    i64 c = detail::solve_scalar(B.rows[k][B.pivot[k]], e, B.L);
    if (c < 0) return std::nullopt;
    detail::add_scaled(v, B.rows[k], -c, B.L);
    detail::add_scaled(coeff, B.combo[k], c, B.L);
  }
  for (i64 x : v)
    if (x != 0) return std::nullopt;
  return coeff;
}

inline bool contains(const RowBasis& B, const Vec& v) { return express(B, v).has_value(); }

inline bool same_span(const RowBasis& A, const RowBasis& B) {
  if (A.L != B.L || A.cols != B.cols) return false;
  for (const auto& r : A.rows)
    if (!contains(B, r)) return false;
  for (const auto& r : B.rows)
    if (!contains(A, r)) return false;
  return true;
}

// Visit every subgroup element once, in mixed-radix order over the basis rows.
template <class F>
inline void enumerate(const RowBasis& B, F&& f) {
  std::size_t n = B.rows.size();
  std::vector<i64> radix(n), digit(n, 0);
  for (std::size_t k = 0; k < n; ++k) radix[k] = B.L / B.pivot_div[k];
  Vec cur(B.cols, 0);
  while (true) {
    f(cur);
    std::size_t k = n;
    while (k > 0) {
      --k;
      ++digit[k];
      detail::add_scaled(cur, B.rows[k], 1, B.L);
      if (digit[k] < radix[k]) break;
      detail::add_scaled(cur, B.rows[k], -digit[k], B.L);
      digit[k] = 0;
      if (k == 0) return;
    }
    if (n == 0) return;
  }
}

}  // namespace exring::zmod
