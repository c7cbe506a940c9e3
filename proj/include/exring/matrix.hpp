#pragma once

// Matrices over a loaded ring, elementary row/column operations and their
// transcripts, signed swaps, exact inversion, and bit-exact replay checking
// of diagonalization certificates.
//
// Conventions: a Row op adds a LEFT multiple of the source row (row_i +=
// r*row_j), a Col op adds a RIGHT multiple of the source column (col_i +=
// col_j*r). Indices are 0-based in the API and 1-based in serialized form.

#include <optional>
#include <string>
#include <vector>

#include "exring/ring.hpp"
#include "exring/solve.hpp"

namespace exring {

struct Mat {
  const RingData* rd = nullptr;
  int rows = 0, cols = 0;
  std::vector<Element> e;

  static Mat zero(const Ring& ring, int r, int c) {
    Mat m{ring.data(), r, c, {}};
    m.e.assign((std::size_t)r * c, zero_of(ring.data()));
    return m;
  }
  static Mat identity(const Ring& ring, int n) {
    Mat m = zero(ring, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = one_of(ring.data());
    return m;
  }

  Element& at(int i, int j) { return e[(std::size_t)i * cols + j]; }
  const Element& at(int i, int j) const { return e[(std::size_t)i * cols + j]; }

  bool operator==(const Mat& o) const {
    return rd == o.rd && rows == o.rows && cols == o.cols && e == o.e;
  }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  bool is_square() const { return rows == cols; }
  bool is_diagonal() const {
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        if (i != j && !at(i, j).is_zero()) return false;
    return true;
  }

  Mat corner(int k) const {  // trailing (rows-k) x (cols-k) block
    Mat m{rd, rows - k, cols - k, {}};
    m.e.reserve((std::size_t)m.rows * m.cols);
    for (int i = k; i < rows; ++i)
      for (int j = k; j < cols; ++j) m.e.push_back(at(i, j));
    return m;
  }

  Mat row_slice(int i) const {
    Mat m{rd, 1, cols, {}};
    for (int j = 0; j < cols; ++j) m.e.push_back(at(i, j));
    return m;
  }
};

inline Mat mat_mul(const Mat& a, const Mat& b) {
  if (a.rd != b.rd) fail("MixedRings", "matrix product across rings");
  if (a.cols != b.rows) fail("DimensionMismatch", "matrix product shape");
  Mat r = Mat{a.rd, a.rows, b.cols, {}};
  r.e.assign((std::size_t)a.rows * b.cols, zero_of(a.rd));
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      const Element& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < b.cols; ++j) {
        const Element& bkj = b.at(k, j);
        if (bkj.is_zero()) continue;
        r.at(i, j) = r.at(i, j) + aik * bkj;
      }
    }
  return r;
}

enum class Side { Row, Col };

struct ElementaryOp {
  Side side;
  int i, j;   // target, source; i != j
  Element r;  // left coefficient for Row, right coefficient for Col
};

struct Transcript {
  const RingData* rd = nullptr;
  int rows = 0, cols = 0;
  std::vector<ElementaryOp> ops;

  void push(Side side, int i, int j, Element r) {
    if (i == j) fail("BadIndex", "elementary op needs distinct indices");
    if (!r.is_zero()) ops.push_back(ElementaryOp{side, i, j, std::move(r)});
  }
  void append(const Transcript& t) {
    for (const auto& op : t.ops) ops.push_back(op);
  }
};

inline void check_op(const ElementaryOp& op, int rows, int cols) {
  int n = op.side == Side::Row ? rows : cols;
  if (op.i == op.j || op.i < 0 || op.j < 0 || op.i >= n || op.j >= n)
    fail("BadIndex", "elementary op indices out of range");
}

inline void apply_op(Mat& a, const ElementaryOp& op) {
  check_op(op, a.rows, a.cols);
  if (op.r.rd != a.rd) fail("MixedRings", "op coefficient from another ring");
  if (op.side == Side::Row) {
    for (int c = 0; c < a.cols; ++c) a.at(op.i, c) = a.at(op.i, c) + op.r * a.at(op.j, c);
  } else {
    for (int r = 0; r < a.rows; ++r) a.at(r, op.i) = a.at(r, op.i) + a.at(r, op.j) * op.r;
  }
}

inline Mat apply_transcript(const Mat& a, const Transcript& t) {
  if (t.rd != a.rd) fail("MixedRings", "transcript belongs to another ring");
  if (t.rows != a.rows || t.cols != a.cols)
    fail("DimensionMismatch", "transcript recorded for different dimensions");
  Mat m = a;
  for (const auto& op : t.ops) apply_op(m, op);
  return m;
}

// the transvection matrix that realizes an op (left factor for Row ops on an
// r x r space, right factor for Col ops on a c x c space)
inline Mat op_matrix(const Ring& ring, const ElementaryOp& op, int n) {
  Mat m = Mat::identity(ring, n);
  if (op.side == Side::Row)
    m.at(op.i, op.j) = op.r;
  else
    m.at(op.j, op.i) = op.r;
  return m;
}

// rows (R_i, R_j) become (R_j, -R_i); same for columns. Three transvections.
inline void push_signed_swap(Transcript& t, Side side, int i, int j) {
  const RingData* rd = t.rd;
  Element one = one_of(rd);
  t.push(side, i, j, one);
  t.push(side, j, i, -one);
  t.push(side, i, j, one);
}

inline Transcript signed_swap_transcript(const Ring& ring, int n, int i, int j, Side side) {
  if (i == j || i < 0 || j < 0 || i >= n || j >= n) fail("BadIndex", "swap indices out of range");
  Transcript t{ring.data(), n, n, {}};
  push_signed_swap(t, side, i, j);
  return t;
}

// moves the entry at `from` to `to`, value intact; other entries may move and
// pick up signs
inline Transcript move_entry(const Ring& ring, int rows, int cols, std::pair<int, int> from,
                             std::pair<int, int> to) {
  auto [fr, fc] = from;
  auto [tr, tc] = to;
  if (fr < 0 || fr >= rows || fc < 0 || fc >= cols || tr < 0 || tr >= rows || tc < 0 || tc >= cols)
    fail("BadIndex", "move positions out of range");
  Transcript t{ring.data(), rows, cols, {}};
  if (fr != tr) push_signed_swap(t, Side::Row, tr, fr);
  if (fc != tc) push_signed_swap(t, Side::Col, tc, fc);
  return t;
}

// two-sided inverse by linear solve; finite rings make one-sided enough
inline std::optional<Mat> invert(const Mat& a) {
  if (!a.is_square()) fail("DimensionMismatch", "only square matrices invert");
  const RingData* rd = a.rd;
  int n = a.rows, d = rd->dim;
  std::vector<zmod::Vec> rows;
  rows.reserve((std::size_t)n * n * d);
  // unknown X contributes basis vector b_k at cell (u,v); A*X places A(i,u)*b_k
  // into column v
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      for (int k = 0; k < d; ++k) {
        zmod::Vec row;
        row.reserve((std::size_t)n * n * d);
        Element bk = basis_of(rd, k);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            if (j == v)
              append_scaled(row, a.at(i, u) * bk);
            else
              for (int t = 0; t < d; ++t) row.push_back(0);
          }
        rows.push_back(std::move(row));
      }
  zmod::Vec target;
  target.reserve((std::size_t)n * n * d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Element want = i == j ? one_of(rd) : zero_of(rd);
      append_scaled(target, want);
    }
  auto coeff = zmod::express(zmod::howell(rd->lcm, rows, n * n * d), target);
  if (!coeff) return std::nullopt;
  Mat x{rd, n, n, {}};
  x.e.assign((std::size_t)n * n, zero_of(rd));
  std::size_t idx = 0;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      for (int k = 0; k < d; ++k) x.at(u, v) = x.at(u, v) + scale_by((*coeff)[idx++], basis_of(rd, k));
  // right inverse of a square matrix over a finite ring is two-sided
  Mat ax = mat_mul(a, x);
  Mat xa = mat_mul(x, a);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Element want = i == j ? one_of(rd) : zero_of(rd);
      if (ax.at(i, j) != want || xa.at(i, j) != want)
        fail("BadCoordinates", "inverse solve inconsistent");
    }
  return x;
}

inline bool is_invertible(const Mat& a) { return invert(a).has_value(); }

// Certificate that left/right elementary transcripts reduce `input` to the
// invertible diagonal matrix `diag`.
struct GEDecomposition {
  Mat input;
  Transcript left;    // row ops
  Transcript right;   // column ops
  Mat diag;
  std::vector<Element> diag_inverses;  // two-sided inverses of the diagonal
};

struct ReplayReport {
  bool ok = true;
  std::string detail;
};

inline ReplayReport replay_fail(std::string why) { return ReplayReport{false, std::move(why)}; }

// Verifies a certificate from its data alone.
inline ReplayReport replay_check(const GEDecomposition& g) {
  const Mat& a = g.input;
  if (!a.is_square()) return replay_fail("input matrix not square");
  if (g.diag.rd != a.rd || g.left.rd != a.rd || g.right.rd != a.rd)
    return replay_fail("ring mismatch between certificate parts");
  if (g.diag.rows != a.rows || g.diag.cols != a.cols) return replay_fail("diagonal shape mismatch");
  if (g.left.rows != a.rows || g.right.rows != a.rows || g.left.cols != a.cols ||
      g.right.cols != a.cols)
    return replay_fail("transcript dimensions mismatch");
  for (std::size_t t = 0; t < g.left.ops.size(); ++t) {
    const auto& op = g.left.ops[t];
    if (op.side != Side::Row) return replay_fail("left transcript op " + std::to_string(t + 1) + " is not a row op");
    if (op.i == op.j || op.i < 0 || op.j < 0 || op.i >= a.rows || op.j >= a.rows)
      return replay_fail("left transcript op " + std::to_string(t + 1) + " has bad indices");
  }
  for (std::size_t t = 0; t < g.right.ops.size(); ++t) {
    const auto& op = g.right.ops[t];
    if (op.side != Side::Col) return replay_fail("right transcript op " + std::to_string(t + 1) + " is not a column op");
    if (op.i == op.j || op.i < 0 || op.j < 0 || op.i >= a.cols || op.j >= a.cols)
      return replay_fail("right transcript op " + std::to_string(t + 1) + " has bad indices");
  }
  Mat m = apply_transcript(apply_transcript(a, g.left), g.right);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j)
      if (m.at(i, j) != g.diag.at(i, j))
        return replay_fail("replay mismatch at entry (" + std::to_string(i + 1) + "," +
                           std::to_string(j + 1) + ")");
  if (!g.diag.is_diagonal()) return replay_fail("result is not diagonal");
  if (static_cast<int>(g.diag_inverses.size()) != a.rows)
    return replay_fail("diagonal inverse list has wrong length");
  for (int i = 0; i < a.rows; ++i) {
    const Element& d = g.diag.at(i, i);
    const Element& inv = g.diag_inverses[i];
    if (inv.rd != a.rd) return replay_fail("diagonal inverse from another ring");
    if (!(d * inv == one_of(a.rd)) || !(inv * d == one_of(a.rd)))
      return replay_fail("diagonal entry " + std::to_string(i + 1) + " is not a verified unit");
  }
  return ReplayReport{};
}

// All rows x cols matrices in canonical (entry-lexicographic) order. The
// callback returns false to stop early.
template <class F>
inline void enumerate_matrices(const Ring& ring, int rows, int cols, F&& f) {
  i64 n = ring.order();
  std::vector<i64> digits((std::size_t)rows * cols, 0);
  Mat m = Mat::zero(ring, rows, cols);
  while (true) {
    if (!f(m)) return;
    std::size_t k = digits.size();
    while (k > 0) {
      --k;
      if (++digits[k] < n) {
        m.e[k] = ring.at(digits[k]);
        break;
      }
      digits[k] = 0;
      m.e[k] = ring.at(0);
      if (k == 0) return;
    }
  }
}

// transpose into the opposite ring; products transpose contravariantly
inline Mat transpose_to(const Ring& opposite_ring, const Mat& a) {
  Mat m{opposite_ring.data(), a.cols, a.rows, {}};
  m.e.reserve(a.e.size());
  for (int j = 0; j < a.cols; ++j)
    for (int i = 0; i < a.rows; ++i) m.e.push_back(Element{opposite_ring.data(), a.at(i, j).c});
  return m;
}

// A column op over R^op on the transpose acts as the row op with the same
// indices and coefficient on the original matrix, and vice versa.
inline Transcript transcript_from_opposite(const Ring& ring, const Transcript& t) {
  Transcript out{ring.data(), t.cols, t.rows, {}};
  for (const auto& op : t.ops)
    out.ops.push_back(ElementaryOp{op.side == Side::Col ? Side::Row : Side::Col, op.i, op.j,
                                   Element{ring.data(), op.r.c}});
  return out;
}

}  // namespace exring
