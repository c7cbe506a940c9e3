#pragma once

// The constructive diagonalization pipeline over finite exchange rings:
// unimodular-row orthogonalization, leading-entry fullification, second-entry
// regularization, pivot preparation with ideal witnesses, unit-regular
// factorization by canonical unit scan, GE diagonalization of invertible
// matrices, and two-sided diagonalization of regular matrices via a bounded
// search for a diagonalizing pair.
//
// Certificates consist of elementary operations only. Diagonal factors that
// arise when a unit is extracted from a pivot are folded by conjugating later
// transvections past the diagonal (diag * (I + r e_ij) * diag^-1 =
// I + (u_i r u_j^-1) e_ij), which is exact.

#include <optional>
#include <utility>
#include <vector>

#include "exring/exchange.hpp"
#include "exring/matrix.hpp"
#include "exring/rng.hpp"

namespace exring {

// ---- unimodular row pipeline -------------------------------------------

struct RowOrthogonalization {
  Transcript transcript;        // column ops only
  std::vector<Element> b;       // final entries, b_i = e_i a_i in a_i R a_i
  std::vector<Element> e;       // orthogonal idempotents, sum 1, b_i R = e_i R
  std::vector<Element> inner;   // r_i with e_i = a_i r_i and e_i = b_i r_i
};

// Splits a right unimodular row so the ring decomposes as the direct sum of
// the entry ideals.
inline RowOrthogonalization orthogonalize_row(const Ring& ring, const Mat& row) {
  if (row.rows != 1) fail("DimensionMismatch", "expected a 1 x n row");
  int n = row.cols;
  std::vector<Element> a(row.e);
  if (!solve_right_combination(a, ring.one()))
    fail("NotUnimodular", "row entries do not generate R as a right ideal");

  std::vector<std::vector<Element>> ideals(n);
  for (int i = 0; i < n; ++i) ideals[i] = {a[i]};
  OrthogonalSystem sys = orthogonal_idempotents(ring, ideals);

  RowOrthogonalization out;
  out.transcript = Transcript{ring.data(), 1, n, {}};
  out.e = sys.idempotents;
  out.inner.reserve(n);
  for (int i = 0; i < n; ++i) out.inner.push_back(sys.memberships[i][0]);

  std::vector<Element> v(a);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      // v_k <- (1 - e_i) v_k, using e_i = v_i r_i whether or not column i was
      // already processed
      Element coeff = -(out.inner[i] * v[k]);
      if (coeff.is_zero()) continue;
      out.transcript.push(Side::Col, k, i, coeff);
      v[k] = v[k] + v[i] * coeff;
    }
  }
  out.b = v;
  for (int i = 0; i < n; ++i) {
    if (!(out.b[i] == out.e[i] * a[i]) || !(out.b[i] == a[i] * out.inner[i] * a[i]) ||
        !(out.b[i] * out.inner[i] == out.e[i]))
      fail("NotUnimodular", "orthogonalization postcondition failed");
  }
  return out;
}

struct LeadingFullification {
  Transcript transcript;  // column ops only
  Element b1;             // final first entry, full
  FullnessWitness fullness;
  RowOrthogonalization orth;  // the split this was built from
};

// Makes the first entry full (RbR = R) by adding every other entry into it
// after orthogonalization.
inline LeadingFullification fullify_leading_entry(const Ring& ring, const Mat& row) {
  if (row.cols < 2) fail("DimensionMismatch", "need at least two entries");
  RowOrthogonalization orth = orthogonalize_row(ring, row);
  int n = row.cols;
  Transcript t = orth.transcript;
  Element b1 = orth.b[0];
  for (int i = 1; i < n; ++i) {
    if (orth.b[i].is_zero()) continue;
    t.push(Side::Col, 0, i, ring.one());
    b1 = b1 + orth.b[i];
  }
  auto fw = is_full(b1);
  if (!fw) fail("NotFull", "sum of direct-sum components is not full");
  return LeadingFullification{std::move(t), b1, std::move(*fw), std::move(orth)};
}

struct SecondRegularization {
  Transcript transcript;  // column ops only
  Element c2;             // final second entry, regular
  Element g;              // idempotent with c2 R = (1-g)R and RgR = R
  Element left_coeff;     // c2 = left_coeff * (original second entry)
  Element ideal_in;       // c2 = (1-g) * ideal_in
  Element ideal_out;      // 1-g = c2 * ideal_out
  FullnessWitness g_full;
};

// Column ops after which the second entry is regular, a left multiple of the
// original second entry, and generates the complement of a full idempotent.
inline SecondRegularization regularize_second_entry(const Ring& ring, const Mat& row) {
  if (row.cols < 2) fail("DimensionMismatch", "need at least two entries");
  int n = row.cols;
  Element a2_original = row.e[1];

  LeadingFullification lead = fullify_leading_entry(ring, row);
  Transcript t = lead.transcript;
  std::vector<Element> v = apply_transcript(row, t).e;

  RangeFullIdempotent rf = full_idempotent_in_range(ring, v[0]);
  // subtract e * v1 from the second entry; e = v0 * rf.r
  Element coeff = -(rf.r * v[1]);
  if (!coeff.is_zero()) {
    t.push(Side::Col, 1, 0, coeff);
    v[1] = v[1] + v[0] * coeff;
  }

  Mat mid{ring.data(), 1, n, v};
  RowOrthogonalization orth = orthogonalize_row(ring, mid);
  for (const auto& op : orth.transcript.ops) t.ops.push_back(op);

  SecondRegularization out;
  out.transcript = std::move(t);
  out.c2 = orth.b[1];
  out.g = ring.one() - orth.e[1];
  // track the left coefficient back to the original entry:
  // after fullify entry2 = e2' a2, then (1-e) scales it, then e2'' projects
  Element one = ring.one();
  out.left_coeff = orth.e[1] * (one - rf.e) * lead.orth.e[1];
  if (!(out.left_coeff * a2_original == out.c2))
    fail("NotUnimodular", "left-multiple tracking failed");
  out.ideal_in = out.c2;  // (1-g) c2 = e2'' c2 = c2
  if (!((one - out.g) * out.ideal_in == out.c2)) fail("NotUnimodular", "ideal membership failed");
  out.ideal_out = orth.inner[1];  // c2 r2 = e2'' = 1-g
  if (!(out.c2 * out.ideal_out == one - out.g)) fail("NotUnimodular", "ideal membership failed");
  auto gf = is_full(out.g);
  if (!gf) fail("NotFull", "complement idempotent is not full");
  out.g_full = std::move(*gf);
  return out;
}

// ---- pivot preparation ---------------------------------------------------

struct PivotCertificate {
  Transcript transcript;  // mixed row and column ops on the full matrix
  Element d;              // the final (1,1) entry, regular
  Element inner;          // d * inner * d = d
  bool unit_pivot = false;
  Element unit_inverse;   // two-sided inverse of d when unit_pivot

  Element p, q;           // idempotents; zero in unit mode
  Element d_from_p;       // d = (1-p) * d_from_p
  Element p_from_d;       // 1-p = d * p_from_d
  Element d_from_q;       // d = d_from_q * (1-q)
  Element q_from_d;       // 1-q = q_from_d * d
  std::optional<FullnessWitness> p_full, q_full;  // absent in unit mode

  bool replay() const {
    const RingData* rd = d.rd;
    Element one = one_of(rd);
    if (!(d * inner * d == d)) return false;
    if (unit_pivot) return d * unit_inverse == one && unit_inverse * d == one;
    if (!(p * p == p) || !(q * q == q)) return false;
    if (!((one - p) * d_from_p == d)) return false;
    if (!(d * p_from_d == one - p)) return false;
    if (!(d_from_q * (one - q) == d)) return false;
    if (!(q_from_d * d == one - q)) return false;
    if (!p_full || p_full->target != p || !p_full->replay()) return false;
    if (!q_full || q_full->target != q || !q_full->replay()) return false;
    return true;
  }
};

namespace detail {

inline PivotCertificate unit_pivot_certificate(const Ring& ring, Transcript t, const Element& d,
                                               const Element& dinv) {
  PivotCertificate pc;
  pc.transcript = std::move(t);
  pc.d = d;
  pc.inner = dinv;
  pc.unit_pivot = true;
  pc.unit_inverse = dinv;
  pc.p = ring.zero();
  pc.q = ring.zero();
  pc.d_from_p = d;
  pc.p_from_d = dinv;
  pc.d_from_q = d;
  pc.q_from_d = dinv;
  return pc;
}

}  // namespace detail

// Elementary ops after which the (1,1) entry d is regular with dR = (1-p)R
// and Rd = R(1-q) for full idempotents p, q. When a unit entry exists it is
// moved to (1,1) instead and the certificate records the unit short-circuit
// (p = q = 0 is not full; the fullness clauses are replaced by the inverse).
inline PivotCertificate prepare_pivot(const Ring& ring, const Mat& a) {
  if (!a.is_square() || a.rows < 2) fail("DimensionMismatch", "pivot prep needs n >= 2");
  if (!is_invertible(a)) fail("NotInvertible", "matrix is not invertible");
  int n = a.rows;
  Mat m = a;
  Transcript t{ring.data(), n, n, {}};
  auto run = [&](const Transcript& part) {
    for (const auto& op : part.ops) {
      apply_op(m, op);
      t.ops.push_back(op);
    }
  };

  // unit short-circuit: first unit entry in row-major order
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (auto inv = is_unit(m.at(i, j))) {
        run(move_entry(ring, n, n, {i, j}, {0, 0}));
        Element d = m.at(0, 0);
        return detail::unit_pivot_certificate(ring, std::move(t), d, *is_unit(d));
      }

  // regularize the (1,2) entry by column ops
  SecondRegularization reg = regularize_second_entry(ring, m.row_slice(0));
  run(reg.transcript);

  // move it to (2,1)
  run(move_entry(ring, n, n, {0, 1}, {1, 0}));
  Element c = m.at(1, 0);
  if (c.c != reg.c2.c) fail("BadIndex", "moved entry changed unexpectedly");

  // transposed regularization of the first column, as row ops
  Ring op = ring.opposite();
  Mat mt = transpose_to(op, m);
  SecondRegularization reg2 = regularize_second_entry(op, mt.row_slice(0));
  run(transcript_from_opposite(ring, reg2.transcript));
  Element d = m.at(1, 0);
  if (d.c != reg2.c2.c) fail("BadIndex", "transposed pipeline out of sync");

  // move d to (1,1)
  run(move_entry(ring, n, n, {1, 0}, {0, 0}));

  if (auto dinv = is_unit(m.at(0, 0)))
    return detail::unit_pivot_certificate(ring, std::move(t), m.at(0, 0), *dinv);

  PivotCertificate pc;
  pc.transcript = std::move(t);
  pc.d = m.at(0, 0);
  auto y = is_regular(pc.d);
  if (!y) fail("NotInvertible", "pivot is not regular");
  pc.inner = *y;
  pc.unit_inverse = ring.zero();
  Element one = ring.one();
  pc.p = one - pc.d * pc.inner;  // dR = (dy)R = (1-p)R
  pc.d_from_p = pc.d;
  pc.p_from_d = pc.inner;
  // Rd = R(1-q) transported from the opposite-ring run
  pc.q = Element{ring.data(), reg2.g.c};
  pc.d_from_q = Element{ring.data(), reg2.ideal_in.c};
  pc.q_from_d = Element{ring.data(), reg2.ideal_out.c};
  auto pf = is_full(pc.p);
  auto qf = is_full(pc.q);
  if (!pf || !qf) fail("NotFull", "pivot idempotents are not full");
  pc.p_full = std::move(*pf);
  pc.q_full = std::move(*qf);
  if (!pc.replay()) fail("BadIndex", "pivot certificate failed to replay");
  return pc;
}

// ---- unit-regular factorization and idempotent clearing ------------------

struct UnitRegularFactorization {
  Element d, u, u_inverse, e;  // d = u e, u a unit, e idempotent

  bool replay() const {
    Element one = one_of(d.rd);
    return u * u_inverse == one && u_inverse * u == one && e * e == e && u * e == d;
  }
};

// Canonical scan over units: first u with u^-1 d idempotent. On separative
// ground this always succeeds for pivots produced by prepare_pivot.
inline UnitRegularFactorization unit_regular_factorization(const Ring& ring, const Element& d) {
  const auto& inv_table = unit_table(ring);
  for (i64 idx = 0; idx < static_cast<i64>(inv_table.size()); ++idx) {
    if (inv_table[idx] < 0) continue;
    Element u = ring.at(idx);
    Element uinv = ring.at(inv_table[idx]);
    Element e = uinv * d;
    if (e * e == e) return UnitRegularFactorization{d, u, uinv, e};
  }
  fail("NoUnit", "no unit-regular factorization; separativity counterexample candidate: d = " +
                     show(d));
}

inline UnitRegularFactorization unit_regular_factorization(const Ring& ring, const Element& d,
                                                           const PivotCertificate& cert) {
  if (cert.d != d) fail("BadIndex", "certificate does not match the pivot");
  return unit_regular_factorization(ring, d);
}

// Reduces an invertible matrix with an idempotent entry to diag(1, A'). The
// transcript moves the idempotent to (1,1), clears e b_i from the first row,
// adds 1-e into the corner, then clears the first row and column.
inline Transcript clear_with_idempotent(const Ring& ring, const Mat& a, std::pair<int, int> pos) {
  if (!a.is_square()) fail("DimensionMismatch", "need a square matrix");
  int n = a.rows;
  auto [pi, pj] = pos;
  if (pi < 0 || pi >= n || pj < 0 || pj >= n) fail("BadIndex", "position out of range");
  Element e = a.at(pi, pj);
  if (!(e * e == e)) fail("NotIdempotentEntry", "entry is not idempotent");
  if (!is_invertible(a)) fail("NotInvertible", "matrix is not invertible");

  Mat m = a;
  Transcript t{ring.data(), n, n, {}};
  auto run = [&](const Transcript& part) {
    for (const auto& op : part.ops) {
      apply_op(m, op);
      t.ops.push_back(op);
    }
  };

  if (n == 1) {
    // the only invertible idempotent is 1
    if (e != ring.one()) fail("NotInvertible", "invertible 1x1 idempotent must be 1");
    return t;
  }

  run(move_entry(ring, n, n, {pi, pj}, {0, 0}));
  e = m.at(0, 0);

  // first row becomes [e, (1-e)b_2, ..., (1-e)b_n]; column 0 holds e, so
  // coefficient -b_j subtracts e b_j from entry j
  for (int j = 1; j < n; ++j) {
    Element coeff = -m.at(0, j);
    if (coeff.is_zero()) continue;
    ElementaryOp op{Side::Col, j, 0, coeff};
    apply_op(m, op);
    t.ops.push_back(op);
  }

  // unimodularity of the first row gives sum_j b_j x_j = 1 - e
  std::vector<Element> row(m.row_slice(0).e);
  auto xs = solve_right_combination(row, ring.one());
  if (!xs) fail("NotInvertible", "first row is not unimodular");
  for (int j = 1; j < n; ++j) {
    if ((*xs)[j].is_zero()) continue;
    ElementaryOp op{Side::Col, 0, j, (*xs)[j]};
    apply_op(m, op);
    t.ops.push_back(op);
  }
  if (m.at(0, 0) != ring.one()) fail("NotInvertible", "pivot did not become 1");

  for (int j = 1; j < n; ++j) {
    Element coeff = -m.at(0, j);
    if (coeff.is_zero()) continue;
    ElementaryOp op{Side::Col, j, 0, coeff};
    apply_op(m, op);
    t.ops.push_back(op);
  }
  for (int i = 1; i < n; ++i) {
    Element coeff = -m.at(i, 0);
    if (coeff.is_zero()) continue;
    ElementaryOp op{Side::Row, i, 0, coeff};
    apply_op(m, op);
    t.ops.push_back(op);
  }
  for (int j = 1; j < n; ++j)
    if (!m.at(0, j).is_zero() || !m.at(j, 0).is_zero())
      fail("NotInvertible", "clearing postcondition failed");
  return t;
}

// ---- GE diagonalization ---------------------------------------------------

// Reduces an invertible matrix to an invertible diagonal matrix by elementary
// row and column operations, recorded as replayable transcripts.
inline GEDecomposition ge_diagonalize(const Ring& ring, const Mat& a) {
  if (!a.is_square()) fail("DimensionMismatch", "need a square matrix");
  if (!is_invertible(a)) fail("NotInvertible", "matrix is not invertible");
  int n = a.rows;
  Mat m = a;
  GEDecomposition g;
  g.input = a;
  g.left = Transcript{ring.data(), n, n, {}};
  g.right = Transcript{ring.data(), n, n, {}};
  std::vector<Element> delta(n, ring.one()), delta_inv(n, ring.one());

  // invariant: (left ops) * a * (right ops) = diag(delta) * m
  auto push_shifted = [&](const Transcript& part, int k) {
    for (const auto& op : part.ops) {
      ElementaryOp full{op.side, op.i + k, op.j + k, op.r};
      apply_op(m, full);
      if (op.side == Side::Row) {
        full.r = delta[full.i] * full.r * delta_inv[full.j];
        g.left.ops.push_back(full);
      } else {
        g.right.ops.push_back(full);
      }
    }
  };

  for (int k = 0; k < n; ++k) {
    Element d = m.at(k, k);
    if (n - k > 1) {
      PivotCertificate pc = prepare_pivot(ring, m.corner(k));
      push_shifted(pc.transcript, k);
      d = m.at(k, k);
    }
    Element u = d, uinv = ring.one();
    if (auto inv = is_unit(d)) {
      uinv = *inv;
    } else {
      if (n - k == 1) fail("NotInvertible", "trailing 1x1 entry is not a unit");
      UnitRegularFactorization f = unit_regular_factorization(ring, d);
      u = f.u;
      uinv = f.u_inverse;
    }
    delta[k] = u;
    delta_inv[k] = uinv;
    // extract the unit as a diagonal factor: m <- diag(..,uinv,..) * m
    for (int j = 0; j < n; ++j) m.at(k, j) = uinv * m.at(k, j);
    if (n - k > 1) {
      Transcript ct = clear_with_idempotent(ring, m.corner(k), {0, 0});
      push_shifted(ct, k);
    } else if (m.at(k, k) != ring.one()) {
      fail("NotInvertible", "final pivot did not normalize");
    }
  }
  if (m != Mat::identity(ring, n)) fail("NotInvertible", "reduction did not reach the identity");

  g.diag = Mat::zero(ring, n, n);
  for (int k = 0; k < n; ++k) g.diag.at(k, k) = delta[k];
  g.diag_inverses = delta_inv;
  return g;
}

// ---- regular matrices -----------------------------------------------------

struct RegularDiagonalization {
  Transcript left, right;
  Mat diag;  // entries need not be units
};

struct RegularSearchOptions {
  i64 exhaustive_ring_cap = 16;  // exhaust GL pairs when |R| <= cap and n == 2
  i64 random_budget = 100000;    // sampled pairs otherwise
  std::uint64_t seed = 1;
};

namespace detail {

// op lists for V = D^-1 E^-1 D F^-1 (rows) and V' = E^-1 (D F^-1 D^-1) (cols)
inline void append_inverse_colops_as_rowops(Transcript& out, const Transcript& right) {
  for (const auto& op : right.ops) out.push(Side::Row, op.j, op.i, -op.r);
}

inline void append_inverse_rowops_conjugated(Transcript& out, const Transcript& left,
                                             const std::vector<Element>& delta,
                                             const std::vector<Element>& delta_inv) {
  for (auto it = left.ops.rbegin(); it != left.ops.rend(); ++it)
    out.push(Side::Row, it->i, it->j, delta_inv[it->i] * (-it->r) * delta[it->j]);
}

inline void append_inverse_rowops_as_colops(Transcript& out, const Transcript& left) {
  for (const auto& op : left.ops) out.push(Side::Col, op.j, op.i, -op.r);
}

inline void append_inverse_colops_conjugated(Transcript& out, const Transcript& right,
                                             const std::vector<Element>& delta,
                                             const std::vector<Element>& delta_inv) {
  for (auto it = right.ops.rbegin(); it != right.ops.rend(); ++it)
    out.push(Side::Col, it->i, it->j, delta[it->j] * (-it->r) * delta_inv[it->i]);
}

}  // namespace detail

// Diagonalizes a von Neumann regular square matrix by elementary row and
// column operations: find invertible P, Q with P A Q diagonal (bounded
// search), then fold the GE decompositions of P and Q. Returns nullopt when
// the search budget is exhausted without a hit.
inline std::optional<RegularDiagonalization> diagonalize_regular(
    const Ring& ring, const Mat& a, const RegularSearchOptions& opts = {}) {
  if (!a.is_square()) fail("DimensionMismatch", "need a square matrix");
  int n = a.rows;
  // regularity: some Y with A Y A = A (linear in Y)
  {
    const RingData* rd = ring.data();
    int d = rd->dim;
    std::vector<zmod::Vec> rows;
    rows.reserve((std::size_t)n * n * d);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        for (int k = 0; k < d; ++k) {
          zmod::Vec row;
          row.reserve((std::size_t)n * n * d);
          Element bk = basis_of(rd, k);
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) append_scaled(row, a.at(i, u) * bk * a.at(v, j));
          rows.push_back(std::move(row));
        }
    zmod::Vec target;
    for (const auto& x : a.e) append_scaled(target, x);
    if (!zmod::express(zmod::howell(rd->lcm, rows, n * n * d), target))
      fail("NotRegularMatrix", "no inner inverse exists");
  }

  if (a.is_diagonal())
    return RegularDiagonalization{Transcript{ring.data(), n, n, {}},
                                  Transcript{ring.data(), n, n, {}}, a};
  if (is_invertible(a)) {
    GEDecomposition g = ge_diagonalize(ring, a);
    return RegularDiagonalization{g.left, g.right, g.diag};
  }

  std::optional<std::pair<Mat, Mat>> found;
  if (ring.order() <= opts.exhaustive_ring_cap && n == 2) {
    std::vector<Mat> gl;
    enumerate_matrices(ring, n, n, [&](const Mat& x) {
      if (is_invertible(x)) gl.push_back(x);
      return true;
    });
    for (const Mat& p : gl) {
      Mat pa = mat_mul(p, a);
      for (const Mat& q : gl) {
        if (mat_mul(pa, q).is_diagonal()) {
          found = {p, q};
          break;
        }
      }
      if (found) break;
    }
  } else {
    Rng rng(opts.seed);
    for (i64 trial = 0; trial < opts.random_budget && !found; ++trial) {
      Mat p = rng.invertible_matrix(ring, n);
      Mat q = rng.invertible_matrix(ring, n);
      if (mat_mul(mat_mul(p, a), q).is_diagonal()) found = {p, q};
    }
  }
  if (!found) return std::nullopt;

  const auto& [p, q] = *found;
  Mat delta_mat = mat_mul(mat_mul(p, a), q);
  GEDecomposition gp = ge_diagonalize(ring, p);
  GEDecomposition gq = ge_diagonalize(ring, q);
  std::vector<Element> dp(n), dpi(n), dq(n), dqi(n);
  for (int k = 0; k < n; ++k) {
    dp[k] = gp.diag.at(k, k);
    dpi[k] = gp.diag_inverses[k];
    dq[k] = gq.diag.at(k, k);
    dqi[k] = gq.diag_inverses[k];
  }

  RegularDiagonalization out;
  out.left = Transcript{ring.data(), n, n, {}};
  out.right = Transcript{ring.data(), n, n, {}};
  // left factor: Dp^-1 P = (Dp^-1 Ep^-1 Dp) Fp^-1, rightmost applied first
  detail::append_inverse_colops_as_rowops(out.left, gp.right);
  detail::append_inverse_rowops_conjugated(out.left, gp.left, dp, dpi);
  // right factor: Q Dq^-1 = Eq^-1 (Dq Fq^-1 Dq^-1), leftmost applied first
  detail::append_inverse_rowops_as_colops(out.right, gq.left);
  detail::append_inverse_colops_conjugated(out.right, gq.right, dq, dqi);

  out.diag = Mat::zero(ring, n, n);
  for (int k = 0; k < n; ++k) out.diag.at(k, k) = dpi[k] * delta_mat.at(k, k) * dqi[k];

  Mat replay = apply_transcript(apply_transcript(a, out.left), out.right);
  if (replay != out.diag) fail("BadIndex", "regular diagonalization failed to replay");
  return out;
}

}  // namespace exring
