#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "exring/zmod.hpp"

using namespace exring;
using zmod::Vec;

namespace {

// oracle: additive closure of the generators, element by element
std::set<Vec> brute_span(std::int64_t L, const std::vector<Vec>& gens) {
  std::set<Vec> seen;
  if (gens.empty()) return seen;
  Vec zero(gens[0].size(), 0);
  seen.insert(zero);
  std::vector<Vec> frontier{zero};
  while (!frontier.empty()) {
    Vec v = frontier.back();
    frontier.pop_back();
    for (const auto& g : gens) {
      Vec w(v.size());
      for (std::size_t k = 0; k < v.size(); ++k) w[k] = zmod::mod(v[k] + g[k], L);
      if (seen.insert(w).second) frontier.push_back(w);
    }
  }
  return seen;
}

}  // namespace

TEST_CASE("xgcd and modular inverse") {
  std::int64_t u, v;
  REQUIRE(zmod::xgcd(12, 18, u, v) == 6);
  REQUIRE(12 * u + 18 * v == 6);
  REQUIRE(zmod::inv_mod(5, 6) == 5);
  REQUIRE(zmod::inv_mod(3, 7) == 5);
  REQUIRE(zmod::inv_mod(1, 1) == 0);
}

TEST_CASE("howell basis decides membership, (2,1) mod 4 case") {
  auto B = zmod::howell(4, {{2, 1}});
  REQUIRE(B.subgroup_size() == 4);
  REQUIRE(zmod::contains(B, {0, 2}));
  REQUIRE(zmod::contains(B, {2, 3}));
  REQUIRE_FALSE(zmod::contains(B, {1, 0}));
  auto c = zmod::express(B, {0, 2});
  REQUIRE(c.has_value());
  // coefficient replays against the original generator
  REQUIRE(zmod::mod((*c)[0] * 2, 4) == 0);
  REQUIRE(zmod::mod((*c)[0] * 1, 4) == 2);
}

TEST_CASE("howell basis matches brute-force closure on random inputs") {
  std::mt19937_64 rng(20240817);
  for (std::int64_t L : {2, 4, 6, 12, 30}) {
    for (int trial = 0; trial < 40; ++trial) {
      int cols = 1 + static_cast<int>(rng() % 3);
      int n = 1 + static_cast<int>(rng() % 3);
      std::vector<Vec> gens(n, Vec(cols));
      for (auto& g : gens)
        for (auto& x : g) x = static_cast<std::int64_t>(rng() % L);

      auto B = zmod::howell(L, gens);
      auto oracle = brute_span(L, gens);
      REQUIRE(B.subgroup_size() == static_cast<std::int64_t>(oracle.size()));

      // every oracle element expressible, with a replaying combination
      for (const auto& v : oracle) {
        auto c = zmod::express(B, v);
        REQUIRE(c.has_value());
        Vec acc(cols, 0);
        for (int t = 0; t < n; ++t)
          for (int k = 0; k < cols; ++k) acc[k] = zmod::mod(acc[k] + (*c)[t] * gens[t][k], L);
        REQUIRE(acc == v);
      }

      // non-members rejected
      for (int probe = 0; probe < 20; ++probe) {
        Vec v(cols);
        for (auto& x : v) x = static_cast<std::int64_t>(rng() % L);
        REQUIRE(zmod::contains(B, v) == (oracle.count(v) > 0));
      }

      // enumeration visits exactly the subgroup, once per element
      std::set<Vec> listed;
      zmod::enumerate(B, [&](const Vec& v) { listed.insert(v); });
      REQUIRE(listed == oracle);
    }
  }
}

TEST_CASE("same_span via mutual membership") {
  auto A = zmod::howell(6, {{2, 0}, {0, 3}});
  auto B = zmod::howell(6, {{2, 3}, {4, 3}});
  auto C = zmod::howell(6, {{2, 0}});
  REQUIRE(zmod::same_span(A, B));
  REQUIRE_FALSE(zmod::same_span(A, C));
}

TEST_CASE("large composite moduli") {
  std::mt19937_64 rng(20240818);
  for (std::int64_t L : {65536, 27720, 46656}) {
    for (int trial = 0; trial < 20; ++trial) {
      int cols = 2 + static_cast<int>(rng() % 3);
      std::vector<Vec> gens(3, Vec(cols));
      for (auto& g : gens)
        for (auto& x : g) x = static_cast<std::int64_t>(rng() % L);
      auto B = zmod::howell(L, gens);
      // random combinations are members and their coefficients replay
      for (int probe = 0; probe < 25; ++probe) {
        Vec v(cols, 0);
        std::vector<std::int64_t> cs(3);
        for (int t = 0; t < 3; ++t) {
          cs[t] = static_cast<std::int64_t>(rng() % L);
          for (int k = 0; k < cols; ++k) v[k] = zmod::mod(v[k] + cs[t] * gens[t][k], L);
        }
        auto c = zmod::express(B, v);
        REQUIRE(c.has_value());
        Vec acc(cols, 0);
        for (int t = 0; t < 3; ++t)
          for (int k = 0; k < cols; ++k) acc[k] = zmod::mod(acc[k] + (*c)[t] * gens[t][k], L);
        REQUIRE(acc == v);
      }
      REQUIRE(B.subgroup_size() >= 1);
    }
  }
}

TEST_CASE("degenerate inputs") {
  auto B = zmod::howell(6, {}, 3);
  REQUIRE(B.subgroup_size() == 1);
  REQUIRE(zmod::contains(B, {0, 0, 0}));
  REQUIRE_FALSE(zmod::contains(B, {1, 0, 0}));

  auto Z1 = zmod::howell(1, {{0, 0}});
  REQUIRE(Z1.subgroup_size() == 1);
  REQUIRE(zmod::contains(Z1, {0, 0}));
}
