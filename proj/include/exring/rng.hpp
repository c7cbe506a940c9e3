#pragma once

// Seeded randomness for sampled suites. mt19937_64 raw output is pinned by
// the standard, so seeded runs are reproducible across platforms; no
// wall-clock entropy anywhere.

#include <cstdint>
#include <random>

#include "exring/matrix.hpp"

namespace exring {

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}

  i64 below(i64 n) { return static_cast<i64>(gen() % static_cast<std::uint64_t>(n)); }

  Element element(const Ring& r) { return r.at(below(r.order())); }

  Element nonzero_element(const Ring& r) {
    if (r.order() < 2) return r.zero();
    return r.at(1 + below(r.order() - 1));
  }

  Mat matrix(const Ring& r, int rows, int cols) {
    Mat m = Mat::zero(r, rows, cols);
    for (auto& x : m.e) x = element(r);
    return m;
  }

  // rejection sampling; rings here have plenty of invertible matrices
  Mat invertible_matrix(const Ring& r, int n) {
    while (true) {
      Mat m = matrix(r, n, n);
      if (is_invertible(m)) return m;
    }
  }
};

}  // namespace exring
