#include <catch2/catch_amalgamated.hpp>

#include "exring/exchange.hpp"
#include "exring/presets.hpp"

using namespace exring;

namespace {

Ring ring(const std::string& name) { return *presets::resolve_preset(name); }

}  // namespace

TEST_CASE("exchange idempotent certificates") {
  Ring z6 = ring("Z/6");

  auto c1 = exchange_idempotent(z6, z6.one());
  REQUIRE(c1.e == z6.one());
  REQUIRE(c1.x == z6.one());
  REQUIRE(c1.y == z6.zero());
  REQUIRE(c1.replay());

  auto c3 = exchange_idempotent(z6, z6.element({3}));
  REQUIRE(c3.e == z6.element({3}));
  REQUIRE(c3.replay());

  Ring sq = ring("SqZero4(F2)");
  Element a1 = sq.basis(1);
  auto cs = exchange_idempotent(sq, a1);
  REQUIRE(cs.e == sq.zero());              // 0 in a1*R, and 1-a1 is a unit
  REQUIRE(cs.y == sq.one() + a1);          // (1-a1)(1+a1) = 1
  REQUIRE(cs.replay());
}

TEST_CASE("whole-ring exchange verdicts") {
  for (const char* name : {"Z/6", "SqZero4(F2)", "M2(F2)", "UT2(F2)", "F4", "Z/6*F2"}) {
    INFO(name);
    Ring r = ring(name);
    auto v = check_exchange(r);
    REQUIRE(v.exchange);
    REQUIRE_FALSE(v.failing.has_value());
  }
  // certificates replay for every element, and repeat runs agree exactly
  Ring m = ring("M2(F2)");
  for (i64 i = 0; i < m.order(); ++i) {
    IdempotentCertificate first = exchange_idempotent(m, m.at(i));
    REQUIRE(first.replay());
    IdempotentCertificate again = exchange_idempotent(m, m.at(i));
    REQUIRE(first.e == again.e);
    REQUIRE(first.x == again.x);
    REQUIRE(first.y == again.y);
  }
}

TEST_CASE("orthogonal idempotent systems") {
  Ring z6 = ring("Z/6");
  Element three = z6.element({3}), four = z6.element({4}), two = z6.element({2});

  auto whole = orthogonal_idempotents(z6, {{z6.one()}});
  REQUIRE(whole.idempotents == std::vector<Element>{z6.one()});
  REQUIRE(whole.replay({{z6.one()}}));

  auto pair34 = orthogonal_idempotents(z6, {{three}, {four}});
  REQUIRE(pair34.idempotents == std::vector<Element>{three, four});
  REQUIRE(pair34.replay({{three}, {four}}));

  auto pair23 = orthogonal_idempotents(z6, {{two}, {three}});
  REQUIRE(pair23.idempotents == std::vector<Element>{four, three});  // 4 in 2R, 4+3 = 1
  REQUIRE(pair23.replay({{two}, {three}}));

  try {
    orthogonal_idempotents(z6, {{two}, {four}});
    FAIL("expected NotCovering");
  } catch (const Error& e) {
    REQUIRE(e.kind() == "NotCovering");
  }

  // three ideals over a noncommutative ring
  Ring m = ring("M2(F2)");
  Element e00 = m.basis(0), e11 = m.basis(3);
  auto sys = orthogonal_idempotents(m, {{e00}, {e11}, {m.one()}});
  REQUIRE(sys.replay({{e00}, {e11}, {m.one()}}));
}

TEST_CASE("subequivalence witnesses replay") {
  Ring z6 = ring("Z/6");
  Element three = z6.element({3});
  auto w = find_subequivalence(z6, three, z6.one());
  REQUIRE(w.has_value());
  REQUIRE(w->replay());

  // rank-1 summand inside the identity over a matrix ring
  Ring m = ring("M2(F2)");
  auto wm = find_subequivalence(m, m.basis(0), m.one());
  REQUIRE(wm.has_value());
  REQUIRE(wm->replay());

  // 1R cannot be a direct summand of the rank-1 corner
  REQUIRE_FALSE(find_subequivalence(m, m.one(), m.basis(0)).has_value());
}

TEST_CASE("covering idempotents") {
  Ring z6 = ring("Z/6");
  Element three = z6.element({3}), four = z6.element({4});

  auto single = covering_idempotent(z6, {three});
  REQUIRE(single.e == three);
  REQUIRE(single.replay());

  auto both = covering_idempotent(z6, {three, four});
  REQUIRE(both.e == z6.one());
  REQUIRE(both.replay());

  auto with_one = covering_idempotent(z6, {z6.one(), three});
  REQUIRE(with_one.e == z6.one());
  REQUIRE(with_one.replay());

  // two-sided ideal equality held by construction; spot-check on UT2(F2)
  Ring ut = ring("UT2(F2)");
  std::vector<Element> idems;
  for (i64 idx : ut.idempotent_indices()) {
    Element e = ut.at(idx);
    if (!e.is_zero() && e != ut.one()) idems.push_back(e);
    if (idems.size() == 2) break;
  }
  auto cov = covering_idempotent(ut, idems);
  REQUIRE(cov.replay());
  REQUIRE(zmod::same_span(two_sided_span(ut.data(), {cov.e}), two_sided_span(ut.data(), idems)));
}

TEST_CASE("full idempotent in the range of a full element") {
  Ring z6 = ring("Z/6");
  auto unit_case = full_idempotent_in_range(z6, z6.element({5}));
  REQUIRE(unit_case.e == z6.one());
  REQUIRE(unit_case.replay());

  try {
    full_idempotent_in_range(z6, z6.element({3}));
    FAIL("expected NotFull");
  } catch (const Error& e) {
    REQUIRE(e.kind() == "NotFull");
  }

  Ring m = ring("M2(F2)");
  Element e00 = m.basis(0);
  auto cert = full_idempotent_in_range(m, e00);
  REQUIRE(cert.replay());
  REQUIRE(in_right_ideal(e00, cert.e).has_value());

  auto left = full_idempotent_in_left_range(m, e00);
  REQUIRE(left.replay());
  REQUIRE(in_left_ideal(e00, left.f).has_value());

  // every full element of every small roster ring yields a replaying pair
  for (const char* name : {"Z/6", "F4", "UT2(F2)", "SqZero4(F2)"}) {
    Ring r = ring(name);
    for (i64 i = 0; i < r.order(); ++i) {
      Element a = r.at(i);
      if (!is_full(a)) continue;
      REQUIRE(full_idempotent_in_range(r, a).replay());
      REQUIRE(full_idempotent_in_left_range(r, a).replay());
    }
  }
}
