#pragma once

// Built-in ring constructors and the preset name grammar:
//   Z/<n>            integers mod n
//   F<q>             finite field with q = p^k elements (smallest monic
//                    irreducible polynomial over F_p, found by search)
//   M<k>(F<q>)       k x k matrices over F_q
//   UT<k>(F<q>)      upper triangular k x k matrices over F_q
//   SqZero4(F<p>)    F_p plus four square-zero generators a1..a4, ai*aj = 0
//                    (accepted alias: Ex2.12(F<p>))
//   A*B              direct product

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "exring/ring.hpp"

namespace exring::presets {

inline bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

// q = p^k with p prime, or false
inline bool prime_power(i64 q, i64& p, int& k) {
  if (q < 2) return false;
  for (i64 c = 2; c * c <= q; ++c) {
    if (q % c == 0) {
      p = c;
      k = 0;
      while (q > 1) {
        if (q % c != 0) return false;
        q /= c;
        ++k;
      }
      return true;
    }
  }
  p = q;
  k = 1;
  return true;
}

namespace detail {

using Poly = std::vector<i64>;  // coefficients, index = degree, reduced mod p

inline Poly poly_trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

inline Poly poly_mul(const Poly& a, const Poly& b, i64 p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = zmod::mod(r[i + j] + a[i] * b[j], p);
  return poly_trim(std::move(r));
}

inline Poly poly_mod(Poly a, const Poly& m, i64 p) {
  a = poly_trim(std::move(a));
  i64 lead_inv = zmod::inv_mod(m.back(), p);
  while (a.size() >= m.size()) {
    i64 c = zmod::mod(a.back() * lead_inv, p);
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i)
      a[shift + i] = zmod::mod(a[shift + i] - c * m[i], p);
    a = poly_trim(std::move(a));
  }
  return a;
}

inline bool poly_divides(const Poly& d, const Poly& a, i64 p) {
  return poly_mod(a, d, p).empty();
}

// lexicographically smallest monic irreducible of degree k over F_p
inline Poly smallest_irreducible(i64 p, int k) {
  std::vector<i64> low(k, 0);
  while (true) {
    Poly f(low);
    f.push_back(1);  // monic
    bool irreducible = f[0] != 0;  // no root at 0, cheap prefilter
    if (irreducible) {
      // trial division by every monic polynomial of degree 1..k/2
      for (int deg = 1; irreducible && 2 * deg <= k; ++deg) {
        std::vector<i64> dl(deg, 0);
        bool carry = false;
        while (!carry) {
          Poly d(dl);
          d.push_back(1);
          if (poly_divides(d, f, p)) {
            irreducible = false;
            break;
          }
          int pos = 0;
          while (pos < deg && ++dl[pos] == p) dl[pos++] = 0;
          carry = pos == deg;
        }
      }
      if (irreducible) return f;
    }
    int pos = 0;
    while (pos < k && ++low[pos] == p) low[pos++] = 0;
    if (pos == k) fail("BadCoordinates", "no irreducible polynomial found");
  }
}

}  // namespace detail

inline RingSpec cyclic_spec(i64 n) {
  RingSpec s;
  s.name = "Z/" + std::to_string(n);
  s.additive_orders = {n};
  s.mul_table = {n == 1 ? 0 : 1};
  s.one = {n == 1 ? 0 : 1};
  return s;
}

inline RingSpec field_spec(i64 q) {
  i64 p;
  int k;
  if (!prime_power(q, p, k)) fail("BadCoordinates", "F" + std::to_string(q) + ": not a prime power");
  RingSpec s;
  s.name = "F" + std::to_string(q);
  s.additive_orders.assign(k, p);
  s.one.assign(k, 0);
  s.one[0] = 1;
  detail::Poly f = detail::smallest_irreducible(p, k);
  // powers of x mod f, up to degree 2k-2
  std::vector<detail::Poly> pw(2 * k - 1);
  pw[0] = {1};
  detail::Poly x = {0, 1};
  for (int i = 1; i < 2 * k - 1; ++i) pw[i] = detail::poly_mod(detail::poly_mul(pw[i - 1], x, p), f, p);
  s.mul_table.assign((i64)k * k * k, 0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      const detail::Poly& prod = pw[i + j];
      for (int t = 0; t < static_cast<int>(prod.size()); ++t)
        s.mul_table[((i64)(i * k + j)) * k + t] = prod[t];
    }
  return s;
}

namespace detail {

// matrix-like ring over an inner spec: basis (cell, inner-basis) for the given
// list of cells, products e_uv s . e_wx t = [v==w] e_ux (s t)
inline RingSpec cells_spec(const std::string& name, const RingSpec& inner,
                           const std::vector<std::pair<int, int>>& cells, int n) {
  int e = static_cast<int>(inner.additive_orders.size());
  int d = static_cast<int>(cells.size()) * e;
  std::vector<int> cell_index(n * n, -1);
  for (std::size_t c = 0; c < cells.size(); ++c)
    cell_index[cells[c].first * n + cells[c].second] = static_cast<int>(c);

  RingSpec s;
  s.name = name;
  s.additive_orders.assign(d, 0);
  for (std::size_t c = 0; c < cells.size(); ++c)
    for (int t = 0; t < e; ++t) s.additive_orders[c * e + t] = inner.additive_orders[t];
  s.one.assign(d, 0);
  for (std::size_t c = 0; c < cells.size(); ++c)
    if (cells[c].first == cells[c].second)
      for (int t = 0; t < e; ++t) s.one[c * e + t] = inner.one[t];
  s.mul_table.assign((i64)d * d * d, 0);
  for (std::size_t c1 = 0; c1 < cells.size(); ++c1)
    for (std::size_t c2 = 0; c2 < cells.size(); ++c2) {
      if (cells[c1].second != cells[c2].first) continue;
      int target = cell_index[cells[c1].first * n + cells[c2].second];
      if (target < 0) continue;  // product cell outside the shape
      for (int si = 0; si < e; ++si)
        for (int sj = 0; sj < e; ++sj) {
          i64 row = ((i64)(c1 * e + si) * d + (c2 * e + sj)) * d;
          for (int t = 0; t < e; ++t)
            s.mul_table[row + target * e + t] = inner.mul_table[((i64)(si * e + sj)) * e + t];
        }
    }
  return s;
}

}  // namespace detail

inline RingSpec matrix_ring_spec(int n, i64 q) {
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cells.emplace_back(i, j);
  return detail::cells_spec("M" + std::to_string(n) + "(F" + std::to_string(q) + ")",
                            field_spec(q), cells, n);
}

inline RingSpec upper_triangular_spec(int n, i64 q) {
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) cells.emplace_back(i, j);
  return detail::cells_spec("UT" + std::to_string(n) + "(F" + std::to_string(q) + ")",
                            field_spec(q), cells, n);
}

// F_p plus a 4-dimensional square-zero ideal: basis 1, a1..a4 with ai*aj = 0
inline RingSpec square_zero4_spec(i64 p) {
  if (!is_prime(p)) fail("BadCoordinates", "SqZero4 needs a prime field");
  RingSpec s;
  s.name = "SqZero4(F" + std::to_string(p) + ")";
  s.additive_orders.assign(5, p);
  s.one = {1, 0, 0, 0, 0};
  s.mul_table.assign(5 * 5 * 5, 0);
  auto set = [&](int i, int j, int k, i64 v) { s.mul_table[((i64)(i * 5 + j)) * 5 + k] = v; };
  set(0, 0, 0, 1);
  for (int i = 1; i < 5; ++i) {
    set(0, i, i, 1);
    set(i, 0, i, 1);
  }
  return s;
}

inline RingSpec product_spec(const RingSpec& a, const RingSpec& b) {
  int da = static_cast<int>(a.additive_orders.size());
  int db = static_cast<int>(b.additive_orders.size());
  int d = da + db;
  RingSpec s;
  s.name = a.name + "*" + b.name;
  s.additive_orders = a.additive_orders;
  s.additive_orders.insert(s.additive_orders.end(), b.additive_orders.begin(),
                           b.additive_orders.end());
  s.one = a.one;
  s.one.insert(s.one.end(), b.one.begin(), b.one.end());
  s.mul_table.assign((i64)d * d * d, 0);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      for (int k = 0; k < da; ++k)
        s.mul_table[((i64)(i * d + j)) * d + k] = a.mul_table[((i64)(i * da + j)) * da + k];
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < db; ++k)
        s.mul_table[((i64)((da + i) * d + (da + j))) * d + (da + k)] =
            b.mul_table[((i64)(i * db + j)) * db + k];
  return s;
}

namespace detail {

inline std::optional<i64> parse_int(const std::string& s) {
  if (s.empty()) return std::nullopt;
  i64 v = 0;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return std::nullopt;
    v = v * 10 + (ch - '0');
    if (v > 1'000'000'000) return std::nullopt;
  }
  return v;
}

inline std::optional<i64> parse_field_arg(const std::string& s) {
  // "F<q>" only
  if (s.size() < 2 || s[0] != 'F') return std::nullopt;
  return parse_int(s.substr(1));
}

inline std::optional<RingSpec> parse_simple(const std::string& s) {
  if (s.rfind("Z/", 0) == 0) {
    auto n = parse_int(s.substr(2));
    if (!n || *n < 1) return std::nullopt;
    return cyclic_spec(*n);
  }
  if (s.size() >= 2 && s[0] == 'F' && std::isdigit(static_cast<unsigned char>(s[1]))) {
    auto q = parse_int(s.substr(1));
    i64 p;
    int k;
    if (!q || !prime_power(*q, p, k)) return std::nullopt;
    return field_spec(*q);
  }
  auto call = [&](const std::string& head) -> std::optional<std::string> {
    if (s.rfind(head, 0) == 0 && s.size() > head.size() + 1 && s.back() == ')' &&
        s[head.size()] == '(')
      return s.substr(head.size() + 1, s.size() - head.size() - 2);
    return std::nullopt;
  };
  for (const char* head : {"SqZero4", "Ex2.12"}) {
    if (auto arg = call(head)) {
      auto p = parse_field_arg(*arg);
      if (!p || !is_prime(*p)) return std::nullopt;
      return square_zero4_spec(*p);
    }
  }
  if (s[0] == 'M' || s[0] == 'U') {
    bool ut = s.rfind("UT", 0) == 0;
    std::size_t pos = ut ? 2 : 1;
    if (!ut && s[0] != 'M') return std::nullopt;
    std::size_t open = s.find('(', pos);
    if (open == std::string::npos || s.back() != ')') return std::nullopt;
    auto n = parse_int(s.substr(pos, open - pos));
    auto q = parse_field_arg(s.substr(open + 1, s.size() - open - 2));
    if (!n || *n < 1 || *n > 8 || !q) return std::nullopt;
    i64 p;
    int k;
    if (!prime_power(*q, p, k)) return std::nullopt;
    return ut ? upper_triangular_spec(static_cast<int>(*n), *q)
              : matrix_ring_spec(static_cast<int>(*n), *q);
  }
  return std::nullopt;
}

}  // namespace detail

// Parse a preset name; nullopt if the name does not match the grammar.
inline std::optional<RingSpec> preset_spec(const std::string& name) {
  // top-level '*' splits a direct product
  std::vector<std::string> parts;
  std::size_t depth = 0, start = 0;
  for (std::size_t i = 0; i < name.size(); ++i) {
    if (name[i] == '(') ++depth;
    if (name[i] == ')') {
      if (depth == 0) return std::nullopt;
      --depth;
    }
    if (name[i] == '*' && depth == 0) {
      parts.push_back(name.substr(start, i - start));
      start = i + 1;
    }
  }
  parts.push_back(name.substr(start));
  std::optional<RingSpec> acc;
  for (const auto& part : parts) {
    auto s = detail::parse_simple(part);
    if (!s) return std::nullopt;
    acc = acc ? product_spec(*acc, *s) : *s;
  }
  return acc;
}

inline std::optional<Ring> resolve_preset(const std::string& name, i64 cap = kDefaultRingCap) {
  auto spec = preset_spec(name);
  if (!spec) return std::nullopt;
  return Ring::load(*spec, cap);
}

}  // namespace exring::presets
