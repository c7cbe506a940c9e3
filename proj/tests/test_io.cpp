#include <catch2/catch_amalgamated.hpp>

#include "exring/io.hpp"

using namespace exring;

namespace {

Ring ring(const std::string& name) { return *presets::resolve_preset(name); }

Mat mat(const Ring& r, std::vector<std::vector<i64>> rows) {
  Mat m = Mat::zero(r, static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) m.at(i, j) = r.element({rows[i][j]});
  return m;
}

std::string kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return "";
}

}  // namespace

TEST_CASE("ring spec files round trip") {
  RingSpec spec = presets::field_spec(4);
  std::string text = io::write_ring_spec(spec);
  RingSpec back = io::parse_ring_spec(text);
  REQUIRE(back.name == spec.name);
  REQUIRE(back.additive_orders == spec.additive_orders);
  REQUIRE(back.mul_table == spec.mul_table);
  REQUIRE(back.one == spec.one);
  REQUIRE(Ring::load(back).order() == 4);
}

TEST_CASE("ring spec parse errors cite the line") {
  try {
    io::parse_ring_spec("name X\norders 2\ntable 1\n");  // missing 'one'
    FAIL("expected ParseError");
  } catch (const Error& e) {
    REQUIRE(e.kind() == "ParseError");
    REQUIRE(std::string(e.what()).find("line") != std::string::npos);
  }
  try {
    io::parse_ring_spec("name X\norders two\ntable 1\none 1\n");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    REQUIRE(std::string(e.what()).find("orders") != std::string::npos);
  }
}

TEST_CASE("matrix files") {
  io::CachingResolver resolve;
  Ring z6 = resolve("Z/6");
  Mat m = mat(z6, {{0, 1}, {5, 0}});
  std::string text = io::write_matrix(m, "Z/6");
  Mat back = io::parse_matrix(text, resolve);
  REQUIRE(back.rows == 2);
  REQUIRE(back.at(1, 0) == z6.element({5}));

  REQUIRE(kind_of([&] { io::parse_matrix("ring Nope\nrows 1\ncols 1\n0\n",
                                         io::resolve_preset_or_fail); }) == "ParseError");
  // unreduced coordinate
  REQUIRE(kind_of([&] { io::parse_matrix("ring Z/6\nrows 1\ncols 1\n7\n",
                                         io::resolve_preset_or_fail); }) == "ParseError");
  // trailing garbage
  REQUIRE(kind_of([&] { io::parse_matrix("ring Z/6\nrows 1\ncols 1\n1\n9\n",
                                         io::resolve_preset_or_fail); }) == "ParseError");
}

TEST_CASE("ge certificates round trip and replay") {
  Ring z6 = ring("Z/6");
  Mat rot = mat(z6, {{0, 1}, {5, 0}});
  GEDecomposition g = ge_diagonalize(z6, rot);
  std::string text = io::write_ge_certificate(g, "Z/6");

  auto parsed = io::parse_certificate(text, io::resolve_preset_or_fail);
  REQUIRE(parsed.kind == "ge");
  REQUIRE(io::check_certificate(parsed).ok);

  // writing the parsed certificate again is byte-identical
  GEDecomposition g2{parsed.input, parsed.left, parsed.right, parsed.diag, parsed.diag_inverses};
  REQUIRE(io::write_ge_certificate(g2, parsed.ring_name) == text);

  // flipping one digit in some coefficient is caught
  std::string broken = text;
  std::size_t pos = broken.find("right");
  pos = broken.find_first_of("0123456789", broken.find('\n', pos) + 1);
  broken[pos] = broken[pos] == '5' ? '1' : '5';
  bool detected = false;
  try {
    detected = !io::verify_certificate_text(broken, io::resolve_preset_or_fail).ok;
  } catch (const Error&) {
    detected = true;
  }
  REQUIRE(detected);
}

TEST_CASE("regular certificates") {
  Ring f2 = ring("F2");
  Mat rank1 = mat(f2, {{1, 1}, {0, 0}});
  auto d = diagonalize_regular(f2, rank1);
  REQUIRE(d.has_value());
  std::string text = io::write_regular_certificate(rank1, *d, "F2");
  auto parsed = io::parse_certificate(text, io::resolve_preset_or_fail);
  REQUIRE(parsed.kind == "regular");
  REQUIRE(io::check_certificate(parsed).ok);

  // a ge bundle for the same data must fail: the diagonal is not a unit
  std::string as_ge = text;
  as_ge.replace(as_ge.find("regular"), 7, "ge");
  as_ge.replace(as_ge.find("end"), 3, "units\n1\n1\nend");
  auto rep = io::verify_certificate_text(as_ge, io::resolve_preset_or_fail);
  REQUIRE_FALSE(rep.ok);
}

TEST_CASE("certificate against the wrong ring fails") {
  Ring z6 = ring("Z/6");
  GEDecomposition g = ge_diagonalize(z6, mat(z6, {{0, 1}, {5, 0}}));
  std::string text = io::write_ge_certificate(g, "Z/6");
  std::string wrong = text;
  wrong.replace(wrong.find("Z/6"), 3, "Z/5");  // coordinates 5 are no longer reduced
  bool detected = false;
  try {
    detected = !io::verify_certificate_text(wrong, io::resolve_preset_or_fail).ok;
  } catch (const Error& e) {
    detected = e.kind() == "ParseError";
  }
  REQUIRE(detected);
}

TEST_CASE("exchange certificates") {
  io::CachingResolver resolve;
  Ring sq = resolve("SqZero4(F2)");
  IdempotentCertificate c = exchange_idempotent(sq, sq.basis(1));
  std::string text = io::write_exchange_certificate(c, "SqZero4(F2)");
  IdempotentCertificate back = io::parse_exchange_certificate(text, resolve);
  REQUIRE(back.replay());
  REQUIRE(back.e == c.e);

  // break the witness: y = 0 cannot reach 1 - e
  std::string broken = text;
  std::size_t ypos = broken.find("\ny");
  broken.replace(ypos, broken.find("\nend") - ypos, "\ny 0 0 0 0 0");
  REQUIRE_FALSE(io::parse_exchange_certificate(broken, resolve).replay());
}

TEST_CASE("verdict blocks") {
  PropertyVerdict v{"Z/6", "separative", 2, true, true, ""};
  std::string text = io::write_verdict(v);
  REQUIRE(text.find("property separative") != std::string::npos);
  REQUIRE(text.find("verdict pass") != std::string::npos);
  REQUIRE(text.find("exhaustive yes") != std::string::npos);
}
