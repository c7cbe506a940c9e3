#pragma once

// Exchange-ring oracles with replayable witnesses: idempotent certificates
// for single elements, orthogonal idempotent systems for covering families of
// right ideals, covering idempotents with direct-summand subequivalence
// witnesses, and full idempotents inside the range of a full element.
//
// Every search scans elements in the canonical order and returns the first
// hit, so certificates are reproducible across runs.

#include <optional>
#include <set>
#include <vector>

#include "exring/ring.hpp"
#include "exring/solve.hpp"

namespace exring {

struct IdempotentCertificate {
  Element a;  // the input
  Element e;  // idempotent, e in aR
  Element x;  // e = a*x
  Element y;  // 1-e = (1-a)*y

  bool replay() const {
    Element one = one_of(a.rd);
    return e * e == e && a * x == e && (one - a) * y == one - e;
  }
};

inline std::optional<IdempotentCertificate> try_exchange_idempotent(const Ring& ring,
                                                                    const Element& a) {
  Element one = ring.one();
  RightCombinationBasis in_a(ring.data(), {a});
  RightCombinationBasis in_comp(ring.data(), {one - a});
  for (i64 idx : ring.idempotent_indices()) {
    Element e = ring.at(idx);
    auto xs = in_a.solve(e);
    if (!xs) continue;
    auto ys = in_comp.solve(one - e);
    if (!ys) continue;
    return IdempotentCertificate{a, e, (*xs)[0], (*ys)[0]};
  }
  return std::nullopt;
}

// The per-element exchange test: fails with NotExchange when no idempotent
// splits a against 1-a.
inline IdempotentCertificate exchange_idempotent(const Ring& ring, const Element& a) {
  auto c = try_exchange_idempotent(ring, a);
  if (!c) fail("NotExchange", "no exchange idempotent for a = " + show(a));
  return *c;
}

struct ExchangeVerdict {
  bool exchange = true;
  std::optional<Element> failing;
};

inline ExchangeVerdict check_exchange(const Ring& ring) {
  for (i64 i = 0; i < ring.order(); ++i) {
    Element a = ring.at(i);
    if (!try_exchange_idempotent(ring, a)) return ExchangeVerdict{false, a};
  }
  return ExchangeVerdict{};
}

struct OrthogonalSystem {
  std::vector<Element> idempotents;
  // idempotents[j] = sum_t generators[j][t] * memberships[j][t]
  std::vector<std::vector<Element>> memberships;

  bool replay(const std::vector<std::vector<Element>>& generators) const {
    if (idempotents.empty()) return false;
    const RingData* rd = idempotents[0].rd;
    Element sum = zero_of(rd);
    for (const auto& e : idempotents) sum = sum + e;
    if (sum != one_of(rd)) return false;
    for (std::size_t i = 0; i < idempotents.size(); ++i) {
      if (!(idempotents[i] * idempotents[i] == idempotents[i])) return false;
      for (std::size_t j = 0; j < idempotents.size(); ++j)
        if (i != j && !(idempotents[i] * idempotents[j]).is_zero()) return false;
      Element acc = zero_of(rd);
      for (std::size_t t = 0; t < generators[i].size(); ++t)
        acc = acc + generators[i][t] * memberships[i][t];
      if (acc != idempotents[i]) return false;
    }
    return true;
  }
};

namespace detail {

// Backtracking over idempotents below g, canonical order. Scanning e with
// e <= g (two-sided) is exactly scanning the idempotents of the corner ring
// gRg, so this is the corner induction with an exhaustive fallback built in.
inline bool orthogonal_search(const Ring& ring, const std::vector<RightCombinationBasis>& ideals,
                              const std::vector<RightCombinationBasis>& suffix, std::size_t j,
                              const Element& g, std::vector<Element>& out) {
  if (j + 1 == ideals.size()) {
    if (!ideals[j].contains(g)) return false;
    out[j] = g;
    return true;
  }
  for (i64 idx : ring.idempotent_indices()) {
    Element e = ring.at(idx);
    if (!(e * g == e) || !(g * e == e)) continue;  // stay inside the corner
    if (!ideals[j].contains(e)) continue;
    Element rest = g - e;
    if (!suffix[j + 1].contains(rest)) continue;
    if (orthogonal_search(ring, ideals, suffix, j + 1, rest, out)) {
      out[j] = e;
      return true;
    }
  }
  return false;
}

}  // namespace detail

// Orthogonal idempotents e_j in I_j with e_1 + ... + e_n = 1, for right
// ideals I_j given by generator lists that cover the ring.
inline OrthogonalSystem orthogonal_idempotents(const Ring& ring,
                                               const std::vector<std::vector<Element>>& generators) {
  if (generators.empty()) fail("NotCovering", "no ideals given");
  const RingData* rd = ring.data();
  std::vector<RightCombinationBasis> ideals;
  ideals.reserve(generators.size());
  for (const auto& gens : generators) ideals.emplace_back(rd, gens);

  // suffix[j] spans I_j + ... + I_n, used both for the covering check and to
  // prune dead branches
  std::vector<RightCombinationBasis> suffix;
  suffix.reserve(generators.size());
  std::vector<Element> acc;
  for (std::size_t j = generators.size(); j-- > 0;) {
    acc.insert(acc.end(), generators[j].begin(), generators[j].end());
    suffix.emplace_back(rd, acc);
  }
  std::reverse(suffix.begin(), suffix.end());
  if (!suffix[0].contains(ring.one()))
    fail("NotCovering", "the given right ideals do not sum to the ring");

  std::vector<Element> out(generators.size(), ring.zero());
  if (!detail::orthogonal_search(ring, ideals, suffix, 0, ring.one(), out))
    fail("NoSystemFound", "no orthogonal idempotent system found");

  OrthogonalSystem sys;
  sys.idempotents = out;
  for (std::size_t j = 0; j < out.size(); ++j) {
    auto coeffs = ideals[j].solve(out[j]);
    if (!coeffs) fail("NoSystemFound", "membership solve failed unexpectedly");
    sys.memberships.push_back(std::move(*coeffs));
  }
  return sys;
}

// fR embeds as a direct summand of eR: t*s = f and s*t is an idempotent
// below e on both sides.
struct SubequivalenceWitness {
  Element source;  // f
  Element target;  // e
  Element s, t;

  bool replay() const {
    Element h = s * t;
    return t * s == source && h * h == h && target * h == h && h * target == h &&
           target * s * source == s && source * t * target == t;
  }
};

inline std::optional<SubequivalenceWitness> find_subequivalence(const Ring& ring, const Element& f,
                                                                const Element& e) {
  // candidates live in the corners eRf and fRe; collect them in canonical order
  std::set<i64> left_set, right_set;
  for (i64 i = 0; i < ring.order(); ++i) {
    Element x = ring.at(i);
    left_set.insert(index_of(e * x * f));
    right_set.insert(index_of(f * x * e));
  }
  for (i64 si : left_set) {
    Element s = ring.at(si);
    for (i64 ti : right_set) {
      Element t = ring.at(ti);
      if (!(t * s == f)) continue;
      Element h = s * t;
      if (!(h * h == h) || !(e * h == h) || !(h * e == h)) continue;
      return SubequivalenceWitness{f, e, s, t};
    }
  }
  return std::nullopt;
}

struct CoveringCertificate {
  std::vector<Element> inputs;             // e_1 .. e_n
  Element e;                               // covering idempotent
  std::vector<Element> sum_coefficients;   // e = sum_i e_i * sum_coefficients[i]
  std::vector<SubequivalenceWitness> subequivalences;  // one per input

  bool replay() const {
    if (!(e * e == e)) return false;
    Element acc = zero_of(e.rd);
    for (std::size_t i = 0; i < inputs.size(); ++i)
      acc = acc + inputs[i] * sum_coefficients[i];
    if (acc != e) return false;
    if (!(e * inputs[0] == inputs[0])) return false;  // e_1 R <= e R
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      const auto& w = subequivalences[i];
      if (w.source != inputs[i] || w.target != e || !w.replay()) return false;
    }
    return true;
  }
};

// Idempotent e in e_1R + ... + e_nR with e_1R <= eR and e_iR a direct summand
// of eR for every i; consequently ReR equals the two-sided ideal the e_i
// generate (checked by span comparison).
inline CoveringCertificate covering_idempotent(const Ring& ring,
                                               const std::vector<Element>& inputs) {
  if (inputs.empty()) fail("NoCover", "no idempotents given");
  for (const auto& ei : inputs)
    if (!(ei * ei == ei)) fail("BadCoordinates", "covering_idempotent needs idempotent inputs");

  RightCombinationBasis sum_basis(ring.data(), inputs);
  auto finish = [&](const Element& e) -> std::optional<CoveringCertificate> {
    auto coeffs = sum_basis.solve(e);
    if (!coeffs) return std::nullopt;
    if (!(e * inputs[0] == inputs[0])) return std::nullopt;
    CoveringCertificate cert;
    cert.inputs = inputs;
    cert.e = e;
    cert.sum_coefficients = std::move(*coeffs);
    for (const auto& ei : inputs) {
      auto w = find_subequivalence(ring, ei, e);
      if (!w) return std::nullopt;
      cert.subequivalences.push_back(std::move(*w));
    }
    if (!zmod::same_span(two_sided_span(ring.data(), {e}), two_sided_span(ring.data(), inputs)))
      return std::nullopt;
    return cert;
  };

  if (inputs.size() == 1) {
    if (auto cert = finish(inputs[0])) return *cert;
    fail("NoCover", "single-input covering failed to certify");
  }
  for (i64 idx : ring.idempotent_indices()) {
    if (auto cert = finish(ring.at(idx))) return *cert;
  }
  fail("NoCover", "no covering idempotent found; exchange hypothesis violated?");
}

// Idempotent e in aR with ReR = R, for a full element a. Follows the witness
// chain: split 1 = sum x_i a y_i, orthogonalize the ideals x_i a R, transport
// g_i = x_i a y_i to e_i = a y_i x_i, then cover.
struct RangeFullIdempotent {
  Element a;
  Element e;                  // idempotent
  Element r;                  // e = a * r
  FullnessWitness fullness;   // ReR = R
  CoveringCertificate cover;

  bool replay() const {
    return e * e == e && a * r == e && fullness.target == e && fullness.replay() &&
           cover.replay() && cover.e == e;
  }
};

inline RangeFullIdempotent full_idempotent_in_range(const Ring& ring, const Element& a) {
  auto fw = is_full(a);
  if (!fw) fail("NotFull", "element generates a proper two-sided ideal: " + show(a));

  std::size_t n = fw->left.size();
  std::vector<std::vector<Element>> ideals(n);
  for (std::size_t i = 0; i < n; ++i) ideals[i] = {fw->left[i] * a};
  OrthogonalSystem sys = orthogonal_idempotents(ring, ideals);

  std::vector<Element> es(n, ring.zero());
  std::vector<Element> ys(n, ring.zero());
  for (std::size_t i = 0; i < n; ++i) {
    // g_i = (x_i a) t_i with y_i' = t_i g_i, then e_i = a y_i' x_i
    Element ti = sys.memberships[i][0];
    ys[i] = ti * sys.idempotents[i];
    es[i] = a * ys[i] * fw->left[i];
    if (!(es[i] * es[i] == es[i])) fail("NoCover", "transported idempotent failed");
  }
  CoveringCertificate cover = covering_idempotent(ring, es);

  Element r = ring.zero();
  for (std::size_t i = 0; i < n; ++i) r = r + ys[i] * fw->left[i] * cover.sum_coefficients[i];
  if (!(a * r == cover.e)) fail("NoCover", "range membership failed to replay");

  auto efull = is_full(cover.e);
  if (!efull) fail("NoCover", "covering idempotent not full");
  return RangeFullIdempotent{a, cover.e, r, std::move(*efull), std::move(cover)};
}

// mirror: idempotent f in Ra with RfR = R
struct LeftRangeFullIdempotent {
  Element a;
  Element f;
  Element l;                 // f = l * a
  FullnessWitness fullness;  // RfR = R

  bool replay() const {
    return f * f == f && l * a == f && fullness.target == f && fullness.replay();
  }
};

inline LeftRangeFullIdempotent full_idempotent_in_left_range(const Ring& ring, const Element& a) {
  Ring op = ring.opposite();
  Element a_op{op.data(), a.c};
  RangeFullIdempotent mirrored = full_idempotent_in_range(op, a_op);
  Element f{ring.data(), mirrored.e.c};
  Element l{ring.data(), mirrored.r.c};
  FullnessWitness fwr{{}, {}, f};
  for (std::size_t i = 0; i < mirrored.fullness.left.size(); ++i) {
    fwr.left.push_back(Element{ring.data(), mirrored.fullness.right[i].c});
    fwr.right.push_back(Element{ring.data(), mirrored.fullness.left[i].c});
  }
  LeftRangeFullIdempotent out{a, f, l, std::move(fwr)};
  if (!out.replay()) fail("NoCover", "mirrored certificate failed to replay");
  return out;
}

}  // namespace exring
