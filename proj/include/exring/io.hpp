#pragma once

// Text formats: ring presentations, matrix files, diagonalization certificate
// bundles, exchange certificates, verdict reports. Tokens are whitespace
// separated, '#' starts a comment, indices in serialized transcripts are
// 1-based. Parse errors cite the line they were found on. Writers emit
// reduced coordinates only, so certificates round-trip byte-exactly.

#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "exring/diagonalize.hpp"
#include "exring/matrix.hpp"
#include "exring/presets.hpp"
#include "exring/projective.hpp"

namespace exring::io {

class TokenReader {
 public:
  explicit TokenReader(const std::string& text) : text_(text) {}

  bool eof() {
    skip();
    return pos_ >= text_.size();
  }

  std::string next(const std::string& what) {
    skip();
    if (pos_ >= text_.size())
      fail("ParseError", "line " + std::to_string(line_) + ": expected " + what + ", got end of file");
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  i64 next_int(const std::string& what) {
    std::string tok = next(what);
    bool ok = !tok.empty();
    std::size_t k = tok[0] == '-' ? 1 : 0;
    ok = ok && k < tok.size();
    for (; k < tok.size() && ok; ++k) ok = std::isdigit(static_cast<unsigned char>(tok[k]));
    if (!ok)
      fail("ParseError",
           "line " + std::to_string(line_) + ": expected " + what + ", got '" + tok + "'");
    return std::stoll(tok);
  }

  void expect(const std::string& keyword) {
    std::string tok = next("'" + keyword + "'");
    if (tok != keyword)
      fail("ParseError", "line " + std::to_string(line_) + ": expected '" + keyword + "', got '" +
                             tok + "'");
  }

  int line() const { return line_; }

  [[noreturn]] void error(const std::string& msg) {
    fail("ParseError", "line " + std::to_string(line_) + ": " + msg);
  }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        if (c == '\n') ++line_;
        ++pos_;
      } else {
        break;
      }
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

// ---- ring presentations ----------------------------------------------------

// name <string>
// orders <m1> ... <md>
// table <d*d*d ints, row-major>
// one <d ints>
inline RingSpec parse_ring_spec(const std::string& text) {
  TokenReader r(text);
  RingSpec spec;
  r.expect("name");
  spec.name = r.next("ring name");
  r.expect("orders");
  // orders run until the 'table' keyword
  std::string tok = r.next("additive order or 'table'");
  while (tok != "table") {
    for (char c : tok)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        r.error("field 'orders': bad integer '" + tok + "'");
    spec.additive_orders.push_back(std::stoll(tok));
    tok = r.next("additive order or 'table'");
  }
  if (spec.additive_orders.empty()) r.error("field 'orders': needs at least one entry");
  i64 d = static_cast<i64>(spec.additive_orders.size());
  for (i64 t = 0; t < d * d * d; ++t)
    spec.mul_table.push_back(r.next_int("field 'table': entry " + std::to_string(t + 1)));
  r.expect("one");
  for (i64 t = 0; t < d; ++t)
    spec.one.push_back(r.next_int("field 'one': coordinate " + std::to_string(t + 1)));
  if (!r.eof()) r.error("trailing tokens after the 'one' field");
  return spec;
}

inline std::string write_ring_spec(const RingSpec& spec) {
  std::ostringstream out;
  out << "name " << spec.name << "\norders";
  for (i64 m : spec.additive_orders) out << ' ' << m;
  out << "\ntable";
  for (i64 t : spec.mul_table) out << ' ' << t;
  out << "\none";
  for (i64 c : spec.one) out << ' ' << c;
  out << '\n';
  return out.str();
}

// resolves a preset name to a ring; the CLI wraps this with file loading
using RingResolver = std::function<Ring(const std::string& name)>;

inline Ring resolve_preset_or_fail(const std::string& name) {
  auto r = presets::resolve_preset(name);
  if (!r) fail("ParseError", "unknown ring preset '" + name + "'");
  return *r;
}

// hands out one shared handle per name, so parsed elements compare equal to
// elements built on the same resolver
class CachingResolver {
 public:
  CachingResolver() = default;
  explicit CachingResolver(RingResolver base) : base_(std::move(base)) {}

  Ring operator()(const std::string& name) {
    auto it = cache_.find(name);
    if (it != cache_.end()) return it->second;
    Ring r = base_ ? base_(name) : resolve_preset_or_fail(name);
    cache_.emplace(name, r);
    // preset aliases canonicalize their name; keep both entries on one handle
    if (r.name() != name) cache_.emplace(r.name(), r);
    return r;
  }

  void install(const std::string& name, Ring r) { cache_.emplace(name, std::move(r)); }

 private:
  RingResolver base_;
  std::map<std::string, Ring> cache_;
};

// ---- elements and matrices --------------------------------------------------

inline Element read_element(TokenReader& r, const Ring& ring, const std::string& what) {
  std::vector<i64> coords(ring.dim());
  for (int k = 0; k < ring.dim(); ++k)
    coords[k] = r.next_int(what + " coordinate " + std::to_string(k + 1));
  for (int k = 0; k < ring.dim(); ++k)
    if (coords[k] < 0 || coords[k] >= ring.data()->orders[k])
      r.error(what + ": coordinate " + std::to_string(k + 1) + " not reduced");
  return ring.element(std::move(coords));
}

inline void write_element(std::ostringstream& out, const Element& e) {
  for (int k = 0; k < e.rd->dim; ++k) out << ' ' << e.c[k];
}

// ring <name>
// rows <r>
// cols <c>
// <r lines of c*d ints>
inline Mat parse_matrix(const std::string& text, const RingResolver& resolve) {
  TokenReader r(text);
  r.expect("ring");
  Ring ring = resolve(r.next("ring name"));
  r.expect("rows");
  i64 rows = r.next_int("row count");
  r.expect("cols");
  i64 cols = r.next_int("column count");
  if (rows < 1 || cols < 1 || rows > 64 || cols > 64) r.error("matrix dimensions out of range");
  Mat m = Mat::zero(ring, static_cast<int>(rows), static_cast<int>(cols));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      m.at(i, j) = read_element(r, ring, "entry (" + std::to_string(i + 1) + "," +
                                            std::to_string(j + 1) + ")");
  if (!r.eof()) r.error("trailing tokens after the matrix entries");
  return m;
}

inline std::string write_matrix(const Mat& m, const std::string& ring_name) {
  std::ostringstream out;
  out << "ring " << ring_name << "\nrows " << m.rows << "\ncols " << m.cols << '\n';
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) write_element(out, m.at(i, j));
    out << '\n';
  }
  return out.str();
}

// ---- certificate bundles ----------------------------------------------------

inline void write_transcript_ops(std::ostringstream& out, const Transcript& t) {
  for (const auto& op : t.ops) {
    out << (op.side == Side::Row ? 'R' : 'C') << ' ' << op.i + 1 << ' ' << op.j + 1;
    write_element(out, op.r);
    out << '\n';
  }
}

inline std::string write_ge_certificate(const GEDecomposition& g, const std::string& ring_name) {
  std::ostringstream out;
  out << "certificate ge\nring " << ring_name << "\nn " << g.input.rows << "\nmatrix\n";
  for (int i = 0; i < g.input.rows; ++i) {
    for (int j = 0; j < g.input.cols; ++j) write_element(out, g.input.at(i, j));
    out << '\n';
  }
  out << "left " << g.left.ops.size() << '\n';
  write_transcript_ops(out, g.left);
  out << "right " << g.right.ops.size() << '\n';
  write_transcript_ops(out, g.right);
  out << "diag\n";
  for (int i = 0; i < g.diag.rows; ++i) {
    write_element(out, g.diag.at(i, i));
    out << '\n';
  }
  out << "units\n";
  for (const auto& u : g.diag_inverses) {
    write_element(out, u);
    out << '\n';
  }
  out << "end\n";
  return out.str();
}

inline std::string write_regular_certificate(const Mat& input, const RegularDiagonalization& g,
                                             const std::string& ring_name) {
  std::ostringstream out;
  out << "certificate regular\nring " << ring_name << "\nn " << input.rows << "\nmatrix\n";
  for (int i = 0; i < input.rows; ++i) {
    for (int j = 0; j < input.cols; ++j) write_element(out, input.at(i, j));
    out << '\n';
  }
  out << "left " << g.left.ops.size() << '\n';
  write_transcript_ops(out, g.left);
  out << "right " << g.right.ops.size() << '\n';
  write_transcript_ops(out, g.right);
  out << "diag\n";
  for (int i = 0; i < g.diag.rows; ++i) {
    write_element(out, g.diag.at(i, i));
    out << '\n';
  }
  out << "end\n";
  return out.str();
}

struct ParsedCertificate {
  std::string kind;  // "ge" or "regular"
  std::string ring_name;
  Ring ring;
  Mat input;
  Transcript left, right;
  Mat diag;
  std::vector<Element> diag_inverses;  // ge only
};

inline ParsedCertificate parse_certificate(const std::string& text, const RingResolver& resolve) {
  TokenReader r(text);
  r.expect("certificate");
  std::string kind = r.next("certificate kind");
  if (kind != "ge" && kind != "regular") r.error("unknown certificate kind '" + kind + "'");
  r.expect("ring");
  std::string ring_name = r.next("ring name");
  Ring ring = resolve(ring_name);
  r.expect("n");
  i64 n64 = r.next_int("matrix size");
  if (n64 < 1 || n64 > 64) r.error("matrix size out of range");
  int n = static_cast<int>(n64);

  ParsedCertificate cert;
  cert.kind = kind;
  cert.ring_name = ring_name;
  cert.ring = ring;
  r.expect("matrix");
  cert.input = Mat::zero(ring, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cert.input.at(i, j) = read_element(r, ring, "matrix entry");

  auto read_ops = [&](const char* section, Side want) {
    r.expect(section);
    i64 count = r.next_int("op count");
    if (count < 0 || count > 100000) r.error("op count out of range");
    Transcript t{ring.data(), n, n, {}};
    for (i64 s = 0; s < count; ++s) {
      std::string side = r.next("op side");
      if (side != "R" && side != "C") r.error("op side must be R or C");
      Side got = side == "R" ? Side::Row : Side::Col;
      if (got != want) r.error("op " + std::to_string(s + 1) + " on the wrong side");
      i64 i = r.next_int("target index");
      i64 j = r.next_int("source index");
      if (i < 1 || j < 1 || i > n || j > n || i == j)
        r.error("op " + std::to_string(s + 1) + ": bad indices");
      Element coeff = read_element(r, ring, "op coefficient");
      t.ops.push_back(ElementaryOp{got, static_cast<int>(i - 1), static_cast<int>(j - 1), coeff});
    }
    return t;
  };
  cert.left = read_ops("left", Side::Row);
  cert.right = read_ops("right", Side::Col);

  r.expect("diag");
  cert.diag = Mat::zero(ring, n, n);
  for (int i = 0; i < n; ++i) cert.diag.at(i, i) = read_element(r, ring, "diagonal entry");
  if (kind == "ge") {
    r.expect("units");
    for (int i = 0; i < n; ++i) cert.diag_inverses.push_back(read_element(r, ring, "unit inverse"));
  }
  r.expect("end");
  if (!r.eof()) r.error("trailing tokens after 'end'");
  return cert;
}

// replays a parsed certificate from its data alone
inline ReplayReport check_certificate(const ParsedCertificate& cert) {
  if (cert.kind == "ge") {
    GEDecomposition g{cert.input, cert.left, cert.right, cert.diag, cert.diag_inverses};
    return replay_check(g);
  }
  Mat replayed = apply_transcript(apply_transcript(cert.input, cert.left), cert.right);
  if (replayed != cert.diag) return replay_fail("replay does not reach the recorded diagonal");
  if (!cert.diag.is_diagonal()) return replay_fail("recorded result is not diagonal");
  return ReplayReport{};
}

inline ReplayReport verify_certificate_text(const std::string& text, const RingResolver& resolve) {
  return check_certificate(parse_certificate(text, resolve));
}

// ---- exchange certificates ---------------------------------------------------

inline std::string write_exchange_certificate(const IdempotentCertificate& c,
                                              const std::string& ring_name) {
  std::ostringstream out;
  out << "exchange-certificate\nring " << ring_name << "\na";
  write_element(out, c.a);
  out << "\ne";
  write_element(out, c.e);
  out << "\nx";
  write_element(out, c.x);
  out << "\ny";
  write_element(out, c.y);
  out << "\nend\n";
  return out.str();
}

inline IdempotentCertificate parse_exchange_certificate(const std::string& text,
                                                        const RingResolver& resolve) {
  TokenReader r(text);
  r.expect("exchange-certificate");
  r.expect("ring");
  Ring ring = resolve(r.next("ring name"));
  IdempotentCertificate c{ring.zero(), ring.zero(), ring.zero(), ring.zero()};
  r.expect("a");
  c.a = read_element(r, ring, "a");
  r.expect("e");
  c.e = read_element(r, ring, "e");
  r.expect("x");
  c.x = read_element(r, ring, "x");
  r.expect("y");
  c.y = read_element(r, ring, "y");
  r.expect("end");
  return c;
}

// ---- verdict reports ---------------------------------------------------------

inline std::string write_verdict(const PropertyVerdict& v) {
  std::ostringstream out;
  out << "ring " << v.ring_name << '\n'
      << "property " << v.property << '\n'
      << "bound " << (v.bound > 0 ? std::to_string(v.bound) : "-") << '\n'
      << "verdict " << (v.holds ? "pass" : "fail") << '\n'
      << "exhaustive " << (v.exhaustive ? "yes" : "no") << '\n'
      << "detail " << (v.detail.empty() ? "-" : v.detail) << '\n';
  return out.str();
}

}  // namespace exring::io
