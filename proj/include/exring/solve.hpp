#pragma once

// Ideal-membership solvers and element predicates over a loaded ring. All of
// them reduce to additive linear algebra in (Z/lcm)^d via the scaled
// embedding; witnesses are always returned so callers can replay them.

#include <optional>
#include <vector>

#include "exring/ring.hpp"

namespace exring {

// span of { g_t * b_j : t, j }, solves  sum_t g_t * x_t = b  for right coefficients
class RightCombinationBasis {
 public:
  RightCombinationBasis(const RingData* rd, std::vector<Element> gens)
      : rd_(rd), gens_(std::move(gens)) {
    std::vector<zmod::Vec> rows;
    rows.reserve(gens_.size() * rd_->dim);
    for (const auto& g : gens_) {
      require_same_ring(g, Element{rd_, rd_->one_c});
      for (int j = 0; j < rd_->dim; ++j) rows.push_back(scaled_coords(g * basis_of(rd_, j)));
    }
    basis_ = zmod::howell(rd_->lcm, rows, rd_->dim);
  }

  std::optional<std::vector<Element>> solve(const Element& b) const {
    auto coeff = zmod::express(basis_, scaled_coords(b));
    if (!coeff) return std::nullopt;
    std::vector<Element> xs;
    xs.reserve(gens_.size());
    for (std::size_t t = 0; t < gens_.size(); ++t) {
      Element x = zero_of(rd_);
      for (int j = 0; j < rd_->dim; ++j)
        x = x + scale_by((*coeff)[t * rd_->dim + j], basis_of(rd_, j));
      xs.push_back(std::move(x));
    }
    return xs;
  }

  bool contains(const Element& b) const { return zmod::contains(basis_, scaled_coords(b)); }
  const zmod::RowBasis& row_basis() const { return basis_; }

 private:
  const RingData* rd_;
  std::vector<Element> gens_;
  zmod::RowBasis basis_;
};

// mirror: solves  sum_t x_t * g_t = b
class LeftCombinationBasis {
 public:
  LeftCombinationBasis(const RingData* rd, std::vector<Element> gens)
      : rd_(rd), gens_(std::move(gens)) {
    std::vector<zmod::Vec> rows;
    rows.reserve(gens_.size() * rd_->dim);
    for (const auto& g : gens_)
      for (int j = 0; j < rd_->dim; ++j) rows.push_back(scaled_coords(basis_of(rd_, j) * g));
    basis_ = zmod::howell(rd_->lcm, rows, rd_->dim);
  }

  std::optional<std::vector<Element>> solve(const Element& b) const {
    auto coeff = zmod::express(basis_, scaled_coords(b));
    if (!coeff) return std::nullopt;
    std::vector<Element> xs;
    xs.reserve(gens_.size());
    for (std::size_t t = 0; t < gens_.size(); ++t) {
      Element x = zero_of(rd_);
      for (int j = 0; j < rd_->dim; ++j)
        x = x + scale_by((*coeff)[t * rd_->dim + j], basis_of(rd_, j));
      xs.push_back(std::move(x));
    }
    return xs;
  }

  bool contains(const Element& b) const { return zmod::contains(basis_, scaled_coords(b)); }

 private:
  const RingData* rd_;
  std::vector<Element> gens_;
  zmod::RowBasis basis_;
};

inline std::optional<std::vector<Element>> solve_right_combination(
    const std::vector<Element>& gens, const Element& b) {
  for (const auto& g : gens) require_same_ring(g, b);
  return RightCombinationBasis(b.rd, gens).solve(b);
}

inline std::optional<std::vector<Element>> solve_left_combination(
    const std::vector<Element>& gens, const Element& b) {
  for (const auto& g : gens) require_same_ring(g, b);
  return LeftCombinationBasis(b.rd, gens).solve(b);
}

// b in aR, with the right coefficient
inline std::optional<Element> in_right_ideal(const Element& a, const Element& b) {
  auto xs = solve_right_combination({a}, b);
  if (!xs) return std::nullopt;
  return (*xs)[0];
}

// b in Ra, with the left coefficient
inline std::optional<Element> in_left_ideal(const Element& a, const Element& b) {
  auto xs = solve_left_combination({a}, b);
  if (!xs) return std::nullopt;
  return (*xs)[0];
}

// two-sided inverse; unique when it exists
inline std::optional<Element> is_unit(const Element& x) {
  const RingData* rd = x.rd;
  std::vector<zmod::Vec> rows(rd->dim);
  for (int j = 0; j < rd->dim; ++j) {
    Element bj = basis_of(rd, j);
    zmod::Vec row;
    row.reserve(2 * rd->dim);
    append_scaled(row, x * bj);
    append_scaled(row, bj * x);
    rows[j] = std::move(row);
  }
  zmod::Vec target;
  Element one = one_of(rd);
  append_scaled(target, one);
  append_scaled(target, one);
  auto coeff = zmod::express(zmod::howell(rd->lcm, rows, 2 * rd->dim), target);
  if (!coeff) return std::nullopt;
  Element y = zero_of(rd);
  for (int j = 0; j < rd->dim; ++j) y = y + scale_by((*coeff)[j], basis_of(rd, j));
  if (!(x * y == one) || !(y * x == one)) fail("BadCoordinates", "inverse solve inconsistent");
  return y;
}

// element index -> inverse index, -1 for non-units; built once per ring
inline const std::vector<i64>& unit_table(const Ring& ring) {
  const RingData* rd = ring.data();
  std::call_once(rd->units_once, [rd] {
    rd->unit_inv.assign(rd->order, -1);
    for (i64 idx = 0; idx < rd->order; ++idx) {
      if (rd->unit_inv[idx] != -1) continue;
      Element x = element_at(rd, idx);
      if (auto y = is_unit(x)) {
        i64 j = index_of(*y);
        rd->unit_inv[idx] = j;
        rd->unit_inv[j] = idx;
      }
    }
  });
  return rd->unit_inv;
}

// ascending unit indices (the canonical scan order)
inline std::vector<i64> unit_indices(const Ring& ring) {
  const auto& tab = unit_table(ring);
  std::vector<i64> out;
  for (i64 idx = 0; idx < static_cast<i64>(tab.size()); ++idx)
    if (tab[idx] != -1) out.push_back(idx);
  return out;
}

// inner inverse: first y in canonical order with x*y*x == x
inline std::optional<Element> is_regular(const Element& x) {
  const RingData* rd = x.rd;
  for (i64 idx = 0; idx < rd->order; ++idx) {
    Element y = element_at(rd, idx);
    if (x * y * x == x) return y;
  }
  return std::nullopt;
}

struct FullnessWitness {
  std::vector<Element> left, right;  // same length
  Element target;

  bool replay() const {
    Element acc = zero_of(target.rd);
    for (std::size_t i = 0; i < left.size(); ++i) acc = acc + left[i] * target * right[i];
    return acc == one_of(target.rd);
  }
};

// additive span of { b_i * g * b_j : g in gens }, i.e. the two-sided ideal
inline zmod::RowBasis two_sided_span(const RingData* rd, const std::vector<Element>& gens) {
  std::vector<zmod::Vec> rows;
  rows.reserve(gens.size() * rd->dim * rd->dim);
  for (const auto& g : gens)
    for (int i = 0; i < rd->dim; ++i) {
      Element big = basis_of(rd, i) * g;
      for (int j = 0; j < rd->dim; ++j) rows.push_back(scaled_coords(big * basis_of(rd, j)));
    }
  return zmod::howell(rd->lcm, rows, rd->dim);
}

// witness for RaR = R, or nullopt
inline std::optional<FullnessWitness> is_full(const Element& a) {
  const RingData* rd = a.rd;
  int d = rd->dim;
  std::vector<zmod::Vec> rows;
  rows.reserve((std::size_t)d * d);
  for (int i = 0; i < d; ++i) {
    Element bia = basis_of(rd, i) * a;
    for (int j = 0; j < d; ++j) rows.push_back(scaled_coords(bia * basis_of(rd, j)));
  }
  auto coeff = zmod::express(zmod::howell(rd->lcm, rows, d), scaled_coords(one_of(rd)));
  if (!coeff) return std::nullopt;
  FullnessWitness w{{}, {}, a};
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      i64 c = (*coeff)[i * d + j];
      if (c == 0) continue;
      w.left.push_back(scale_by(c, basis_of(rd, i)));
      w.right.push_back(basis_of(rd, j));
    }
  if (!w.replay()) fail("BadCoordinates", "fullness solve inconsistent");
  return w;
}

// right ideal aR as a row basis (membership: contains(scaled b))
inline zmod::RowBasis right_ideal_span(const Element& a) {
  const RingData* rd = a.rd;
  std::vector<zmod::Vec> rows(rd->dim);
  for (int j = 0; j < rd->dim; ++j) rows[j] = scaled_coords(a * basis_of(rd, j));
  return zmod::howell(rd->lcm, rows, rd->dim);
}

inline zmod::RowBasis left_ideal_span(const Element& a) {
  const RingData* rd = a.rd;
  std::vector<zmod::Vec> rows(rd->dim);
  for (int j = 0; j < rd->dim; ++j) rows[j] = scaled_coords(basis_of(rd, j) * a);
  return zmod::howell(rd->lcm, rows, rd->dim);
}

}  // namespace exring
