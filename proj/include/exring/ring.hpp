#pragma once

// Finite unital rings presented by structure constants over Z/m1 + ... + Z/md,
// with exact element arithmetic, eager validation, a canonical total order on
// elements, and per-ring caches. No floating point anywhere.

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "exring/zmod.hpp"

namespace exring {

using i64 = std::int64_t;

class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& msg) {
  throw Error(kind, msg);
}

constexpr i64 kDefaultRingCap = 65536;

// Raw presentation: additive group is the direct sum of Z/m_i, multiplication
// of basis elements given by a d*d*d tensor, flattened row-major.
struct RingSpec {
  std::string name;
  std::vector<i64> additive_orders;
  std::vector<i64> mul_table;  // entry ((i*d)+j)*d+k = k-th coordinate of b_i*b_j
  std::vector<i64> one;
};

struct RingData {
  std::string name;
  int dim = 0;
  std::vector<i64> orders;
  std::vector<i64> table;
  std::vector<i64> one_c;
  i64 order = 1;              // |R|
  i64 lcm = 1;                // common modulus for linear solves
  std::vector<i64> stride;    // mixed-radix strides, coordinate 0 most significant
  std::vector<i64> scale;     // lcm / orders[k]

  // lazy caches, write once
  mutable std::once_flag units_once;
  mutable std::vector<i64> unit_inv;  // element index -> inverse index, -1 if none
  mutable std::once_flag idem_once;
  mutable std::vector<i64> idem_idx;  // ascending indices of idempotents

  const i64* basis_product(int i, int j) const { return &table[(i * (i64)dim + j) * dim]; }
};

struct Element {
  const RingData* rd = nullptr;
  std::vector<i64> c;

  bool is_zero() const {
    for (i64 x : c)
      if (x != 0) return false;
    return true;
  }
  bool operator==(const Element& o) const { return rd == o.rd && c == o.c; }
  bool operator!=(const Element& o) const { return !(*this == o); }
};

inline void require_same_ring(const Element& a, const Element& b) {
  if (a.rd != b.rd) fail("MixedRings", "elements belong to different rings");
}

inline Element zero_of(const RingData* rd) { return Element{rd, std::vector<i64>(rd->dim, 0)}; }

inline Element one_of(const RingData* rd) { return Element{rd, rd->one_c}; }

inline Element basis_of(const RingData* rd, int i) {
  Element e = zero_of(rd);
  e.c[i] = rd->orders[i] == 1 ? 0 : 1;
  return e;
}

inline Element element_from(const RingData* rd, std::vector<i64> coords) {
  if (static_cast<int>(coords.size()) != rd->dim)
    fail("BadCoordinates", "coordinate vector has wrong length");
  for (int k = 0; k < rd->dim; ++k) coords[k] = zmod::mod(coords[k], rd->orders[k]);
  return Element{rd, std::move(coords)};
}

inline Element operator+(const Element& a, const Element& b) {
  require_same_ring(a, b);
  Element r{a.rd, std::vector<i64>(a.rd->dim)};
  for (int k = 0; k < a.rd->dim; ++k) r.c[k] = zmod::mod(a.c[k] + b.c[k], a.rd->orders[k]);
  return r;
}

inline Element operator-(const Element& a) {
  Element r{a.rd, std::vector<i64>(a.rd->dim)};
  for (int k = 0; k < a.rd->dim; ++k) r.c[k] = zmod::mod(-a.c[k], a.rd->orders[k]);
  return r;
}

inline Element operator-(const Element& a, const Element& b) { return a + (-b); }

inline Element operator*(const Element& a, const Element& b) {
  require_same_ring(a, b);
  const RingData* rd = a.rd;
  int d = rd->dim;
  std::vector<i64> acc(d, 0);
  for (int i = 0; i < d; ++i) {
    if (a.c[i] == 0) continue;
    for (int j = 0; j < d; ++j) {
      if (b.c[j] == 0) continue;
      i64 coef = a.c[i] * b.c[j];
      const i64* row = rd->basis_product(i, j);
      for (int k = 0; k < d; ++k) acc[k] += coef * row[k];
    }
  }
  Element r{rd, std::move(acc)};
  for (int k = 0; k < d; ++k) r.c[k] = zmod::mod(r.c[k], rd->orders[k]);
  return r;
}

// integer scalar multiple (additive)
inline Element scale_by(i64 n, const Element& a) {
  Element r{a.rd, std::vector<i64>(a.rd->dim)};
  for (int k = 0; k < a.rd->dim; ++k) r.c[k] = zmod::mod(n * a.c[k], a.rd->orders[k]);
  return r;
}

inline i64 index_of(const Element& a) {
  i64 idx = 0;
  for (int k = 0; k < a.rd->dim; ++k) idx += a.c[k] * a.rd->stride[k];
  return idx;
}

inline Element element_at(const RingData* rd, i64 idx) {
  Element e{rd, std::vector<i64>(rd->dim)};
  for (int k = 0; k < rd->dim; ++k) {
    e.c[k] = (idx / rd->stride[k]) % rd->orders[k];
  }
  return e;
}

// scaled embedding of the additive group into (Z/lcm)^d, for linear solves
inline zmod::Vec scaled_coords(const Element& a) {
  zmod::Vec v(a.rd->dim);
  for (int k = 0; k < a.rd->dim; ++k) v[k] = a.c[k] * a.rd->scale[k];
  return v;
}

inline void append_scaled(zmod::Vec& out, const Element& a) {
  for (int k = 0; k < a.rd->dim; ++k) out.push_back(a.c[k] * a.rd->scale[k]);
}

class Ring {
 public:
  Ring() = default;

  static Ring load(const RingSpec& spec, i64 cap = kDefaultRingCap) {
    auto rd = std::make_shared<RingData>();
    rd->name = spec.name;
    rd->dim = static_cast<int>(spec.additive_orders.size());
    int d = rd->dim;
    if (d <= 0) fail("BadCoordinates", "ring needs at least one additive generator");
    rd->orders = spec.additive_orders;
    for (int i = 0; i < d; ++i)
      if (rd->orders[i] < 1)
        fail("BadCoordinates", "additive order " + std::to_string(i + 1) + " must be positive");

    rd->order = 1;
    for (int i = 0; i < d; ++i) {
      if (rd->order > cap / std::max<i64>(rd->orders[i], 1) + 1) fail("CapExceeded", "ring order exceeds cap");
      rd->order *= rd->orders[i];
    }
    if (rd->order > cap)
      fail("CapExceeded", "ring order " + std::to_string(rd->order) + " exceeds cap " +
                              std::to_string(cap));

    rd->lcm = 1;
    for (int i = 0; i < d; ++i) rd->lcm = std::lcm(rd->lcm, rd->orders[i]);
    rd->stride.assign(d, 1);
    for (int i = d - 2; i >= 0; --i) rd->stride[i] = rd->stride[i + 1] * rd->orders[i + 1];
    rd->scale.assign(d, 1);
    for (int i = 0; i < d; ++i) rd->scale[i] = rd->lcm / rd->orders[i];

    if (static_cast<i64>(spec.mul_table.size()) != (i64)d * d * d)
      fail("BadCoordinates", "mul_table must hold " + std::to_string((i64)d * d * d) +
                                 " integers, got " + std::to_string(spec.mul_table.size()));
    rd->table = spec.mul_table;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
          i64 t = rd->table[((i64)(i * d + j)) * d + k];
          if (t < 0 || t >= rd->orders[k])
            fail("BadCoordinates", "mul_table entry (" + std::to_string(i + 1) + "," +
                                       std::to_string(j + 1) + "," + std::to_string(k + 1) +
                                       ") not reduced");
          // bilinear extension must respect the additive orders
          if ((rd->orders[i] * t) % rd->orders[k] != 0 || (rd->orders[j] * t) % rd->orders[k] != 0)
            fail("BadCoordinates", "mul_table entry (" + std::to_string(i + 1) + "," +
                                       std::to_string(j + 1) + "," + std::to_string(k + 1) +
                                       ") incompatible with additive orders");
        }

    if (static_cast<int>(spec.one.size()) != d)
      fail("BadCoordinates", "one must have " + std::to_string(d) + " coordinates");
    rd->one_c = spec.one;
    for (int k = 0; k < d; ++k)
      if (rd->one_c[k] < 0 || rd->one_c[k] >= rd->orders[k])
        fail("BadCoordinates", "coordinate " + std::to_string(k + 1) + " of one not reduced");

    const RingData* p = rd.get();
    Element one{p, rd->one_c};
    for (int i = 0; i < d; ++i) {
      Element bi = basis_of(p, i);
      if (!(one * bi == bi) || !(bi * one == bi))
        fail("UnitLawViolation", "one fails on basis element " + std::to_string(i + 1));
    }
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
          Element bi = basis_of(p, i), bj = basis_of(p, j), bk = basis_of(p, k);
          if (!((bi * bj) * bk == bi * (bj * bk)))
            fail("AssociativityViolation", "basis triple (" + std::to_string(i + 1) + "," +
                                               std::to_string(j + 1) + "," +
                                               std::to_string(k + 1) + ")");
        }

    Ring r;
    r.d_ = std::move(rd);
    return r;
  }

  const RingData* data() const { return d_.get(); }
  const std::string& name() const { return d_->name; }
  int dim() const { return d_->dim; }
  i64 order() const { return d_->order; }

  Element zero() const { return zero_of(d_.get()); }
  Element one() const { return one_of(d_.get()); }
  Element basis(int i) const { return basis_of(d_.get(), i); }
  Element element(std::vector<i64> coords) const { return element_from(d_.get(), std::move(coords)); }
  Element at(i64 idx) const { return element_at(d_.get(), idx); }

  // multiplication reversed, additive structure unchanged
  Ring opposite() const {
    RingSpec spec;
    spec.name = d_->name + "^op";
    spec.additive_orders = d_->orders;
    spec.one = d_->one_c;
    int d = d_->dim;
    spec.mul_table.assign((i64)d * d * d, 0);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          spec.mul_table[((i64)(i * d + j)) * d + k] = d_->table[((i64)(j * d + i)) * d + k];
    return load(spec, d_->order);
  }

  const std::vector<i64>& idempotent_indices() const {
    const RingData* rd = d_.get();
    std::call_once(rd->idem_once, [rd] {
      for (i64 idx = 0; idx < rd->order; ++idx) {
        Element x = element_at(rd, idx);
        if (x * x == x) rd->idem_idx.push_back(idx);
      }
    });
    return rd->idem_idx;
  }

  explicit operator bool() const { return static_cast<bool>(d_); }
  bool same_as(const Ring& o) const { return d_.get() == o.d_.get(); }

 private:
  std::shared_ptr<const RingData> d_;
};

// canonical order: lexicographic on reduced coordinates, equals index order
inline bool canonical_less(const Element& a, const Element& b) {
  return a.c < b.c;
}

inline std::string show(const Element& a) {
  std::string s = "(";
  for (int k = 0; k < a.rd->dim; ++k) {
    if (k) s += ",";
    s += std::to_string(a.c[k]);
  }
  return s + ")";
}

}  // namespace exring
