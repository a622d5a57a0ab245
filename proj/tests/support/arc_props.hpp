#pragma once

// Property checks on the arc algebra, shared by the unit suite and the
// acceptance binary. Each returns the number of violations; zero is a pass.

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "arckh/arcalg.hpp"
#include "arckh/tqft.hpp"

namespace props {

using arckh::arcalg::ArcAlgebra;
using arckh::arcalg::ArcCombination;
using arckh::arcalg::ArcElement;
using arckh::arcalg::MatchingId;
using arckh::planar::Matching;
using arckh::tqft::Label;

// Independent product: stack the two diagrams, do the saddles in `order`
// (a permutation of the middle arcs), relabel circles by union-find each
// time. No code shared with the library's surgery programs.
inline ArcCombination naive_multiply(const ArcAlgebra& alg, const ArcElement& later,
                                     const ArcElement& earlier, const std::vector<int>& order) {
  const int n = alg.n();
  const MatchingId a = earlier.source, b = earlier.target, c = later.target;
  ArcCombination out(a, c);
  if (later.source != b) return out;
  const int np = 2 * n;
  auto low = [](int p) { return p - 1; };
  auto up = [np](int p) { return np + p - 1; };
  using Edge = std::pair<int, int>;
  std::vector<Edge> edges;
  for (const auto& arc : alg.matching(a).arcs()) edges.push_back({low(arc.lo), low(arc.hi)});
  for (const auto& arc : alg.matching(b).arcs()) {
    edges.push_back({low(arc.lo), low(arc.hi)});
    edges.push_back({up(arc.lo), up(arc.hi)});
  }
  for (const auto& arc : alg.matching(c).arcs()) edges.push_back({up(arc.lo), up(arc.hi)});

  auto comps = [&](const std::vector<Edge>& es) {
    std::vector<int> parent(2 * np);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (auto [u, v] : es) parent[find(u)] = find(v);
    std::vector<int> comp(2 * np);
    for (int x = 0; x < 2 * np; ++x) comp[x] = find(x);
    return comp;
  };

  // state: component representative -> label
  using State = std::map<int, Label>;
  std::map<State, long> terms;
  {
    const auto comp = comps(edges);
    const auto& cl = alg.circles(a, b);
    const auto& cu = alg.circles(b, c);
    State s;
    for (int p = 1; p <= np; ++p) {
      s[comp[low(p)]] = arckh::tqft::label_of(earlier.labels, cl.circle_of[p]);
      s[comp[up(p)]] = arckh::tqft::label_of(later.labels, cu.circle_of[p]);
    }
    terms[s] = 1;
  }
  const auto& middle = alg.matching(b).arcs();
  for (int k : order) {
    const auto arc = middle[k];
    const auto before = comps(edges);
    // one copy each: a and c may share the arc
    for (Edge e : {Edge{low(arc.lo), low(arc.hi)}, Edge{up(arc.lo), up(arc.hi)}})
      edges.erase(std::find(edges.begin(), edges.end(), e));
    edges.push_back({low(arc.lo), up(arc.lo)});
    edges.push_back({low(arc.hi), up(arc.hi)});
    const auto after = comps(edges);
    std::map<State, long> next;
    for (const auto& [s, coeff] : terms) {
      State base;
      for (const auto& [rep, lab] : s)
        if (rep != before[low(arc.lo)] && rep != before[up(arc.lo)]) base[after[rep]] = lab;
      const Label l1 = s.at(before[low(arc.lo)]), l2 = s.at(before[up(arc.lo)]);
      if (before[low(arc.lo)] != before[up(arc.lo)]) {
        for (auto [l, m] : arckh::tqft::merge(l1, l2)) {
          State t = base;
          t[after[low(arc.lo)]] = l;
          next[t] += coeff * m;
        }
      } else {
        for (auto [ls, m] : arckh::tqft::split(l1)) {
          State t = base;
          t[after[low(arc.lo)]] = ls[0];
          t[after[low(arc.hi)]] = ls[1];
          next[t] += coeff * m;
        }
      }
    }
    std::erase_if(next, [](const auto& e) { return e.second == 0; });
    terms = std::move(next);
  }
  const auto final_comp = comps(edges);
  const auto& cac = alg.circles(a, c);
  for (const auto& [s, coeff] : terms) {
    arckh::tqft::Labeling mask = 0;
    for (int p = 1; p <= np; ++p)
      if (s.at(final_comp[low(p)]) == Label::X) mask |= 1u << cac.circle_of[p];
    out.add(mask, coeff);
  }
  return out;
}

inline ArcCombination alpha(const ArcAlgebra& alg, MatchingId a, MatchingId b) {
  return ArcCombination(alg.min_generator(a, b));
}

inline std::vector<ArcElement> all_basis(const ArcAlgebra& alg) {
  std::vector<ArcElement> out;
  for (MatchingId a = 0; a < alg.size(); ++a)
    for (MatchingId b = 0; b < alg.size(); ++b)
      for (const auto& e : alg.basis(a, b)) out.push_back(e);
  return out;
}

// A random basis element with the given source, or a random one when < 0.
inline ArcElement random_element(const ArcAlgebra& alg, std::mt19937& rng, int source = -1) {
  auto pick = [&](int k) { return static_cast<MatchingId>(rng() % static_cast<unsigned>(k)); };
  const MatchingId a = source < 0 ? pick(alg.size()) : static_cast<MatchingId>(source);
  const MatchingId b = pick(alg.size());
  const auto dim = alg.block_dimension(a, b);
  return {a, b, static_cast<arckh::tqft::Labeling>(rng() % dim)};
}

inline std::size_t check_associativity(const ArcAlgebra& alg) {
  std::size_t bad = 0;
  const int m = alg.size();
  for (MatchingId a = 0; a < m; ++a)
    for (MatchingId b = 0; b < m; ++b)
      for (MatchingId c = 0; c < m; ++c)
        for (MatchingId d = 0; d < m; ++d)
          for (const auto& x : alg.basis(a, b))
            for (const auto& y : alg.basis(b, c)) {
              const auto yx = alg.multiply(y, x);
              for (const auto& z : alg.basis(c, d)) {
                const auto zy = alg.multiply(z, y);
                if (!(alg.multiply(ArcCombination(z), yx) == alg.multiply(zy, ArcCombination(x))))
                  ++bad;
              }
            }
  return bad;
}

inline std::size_t check_associativity_random(const ArcAlgebra& alg, std::size_t triples,
                                              unsigned seed) {
  std::mt19937 rng(seed);
  std::size_t bad = 0;
  for (std::size_t t = 0; t < triples; ++t) {
    const auto x = random_element(alg, rng);
    const auto y = random_element(alg, rng, x.target);
    const auto z = random_element(alg, rng, y.target);
    const auto lhs = alg.multiply(ArcCombination(z), alg.multiply(y, x));
    const auto rhs = alg.multiply(alg.multiply(z, y), ArcCombination(x));
    if (!(lhs == rhs)) ++bad;
  }
  return bad;
}

// Sum of e_w over all w: two-sided identity, so exactly one idempotent acts
// nontrivially on each side and it acts as the identity.
inline std::size_t check_unit(const ArcAlgebra& alg) {
  std::size_t bad = 0;
  for (const auto& x : all_basis(alg)) {
    const ArcCombination cx(x);
    int left = 0, right = 0;
    for (MatchingId w = 0; w < alg.size(); ++w) {
      const auto l = alg.multiply(alg.idempotent(w), cx);
      const auto r = alg.multiply(cx, alg.idempotent(w));
      if (!l.is_zero()) {
        ++left;
        if (!(l == cx) || w != x.target) ++bad;
      }
      if (!r.is_zero()) {
        ++right;
        if (!(r == cx) || w != x.source) ++bad;
      }
    }
    if (left != 1 || right != 1) ++bad;
  }
  return bad;
}

inline std::size_t check_trace_symmetry(const ArcAlgebra& alg) {
  std::size_t bad = 0;
  for (MatchingId a = 0; a < alg.size(); ++a)
    for (MatchingId b = 0; b < alg.size(); ++b)
      for (const auto& x : alg.basis(a, b))
        for (const auto& y : alg.basis(b, a))
          if (alg.trace(alg.multiply(y, x)) != alg.trace(alg.multiply(x, y))) ++bad;
  return bad;
}

inline std::size_t check_trace_symmetry_random(const ArcAlgebra& alg, std::size_t pairs,
                                               unsigned seed) {
  std::mt19937 rng(seed);
  std::size_t bad = 0;
  for (std::size_t t = 0; t < pairs; ++t) {
    const auto x = random_element(alg, rng);
    const ArcElement y{x.target, x.source,
                       static_cast<arckh::tqft::Labeling>(rng() % alg.block_dimension(x.target, x.source))};
    if (alg.trace(alg.multiply(y, x)) != alg.trace(alg.multiply(x, y))) ++bad;
  }
  return bad;
}

inline std::size_t check_positivity_random(const ArcAlgebra& alg, std::size_t pairs,
                                           unsigned seed) {
  std::mt19937 rng(seed);
  std::size_t bad = 0;
  for (std::size_t t = 0; t < pairs; ++t) {
    const auto x = random_element(alg, rng);
    const auto y = random_element(alg, rng, x.target);
    const auto p = alg.multiply(y, x);
    for (auto [l, c] : p.terms())
      if (c < 0) ++bad;
  }
  return bad;
}

// The two arcs of `a` that are not arcs of `b`, for codim(a, b) = 1.
inline std::vector<arckh::planar::Arc> changed_arcs(const Matching& a, const Matching& b) {
  std::vector<arckh::planar::Arc> out;
  for (const auto& arc : a.arcs())
    if (!b.contains(arc)) out.push_back(arc);
  return out;
}

inline std::size_t check_codim_one_law(const ArcAlgebra& alg) {
  std::size_t bad = 0;
  for (MatchingId a = 0; a < alg.size(); ++a)
    for (MatchingId b = 0; b < alg.size(); ++b) {
      if (arckh::planar::codim(alg.matching(a), alg.matching(b)) != 1) continue;
      const auto arcs = changed_arcs(alg.matching(a), alg.matching(b));
      if (arcs.size() != 2) {
        ++bad;
        continue;
      }
      for (MatchingId c = 0; c < alg.size(); ++c) {
        const auto prod = alg.multiply(alpha(alg, b, c), alpha(alg, a, b));
        const int cac = alg.circle_count(a, c), cbc = alg.circle_count(b, c);
        if (cac == cbc - 1) {
          if (!(prod == alpha(alg, a, c))) ++bad;
        } else if (cac == cbc + 1) {
          const auto& circ = alg.circles(a, c);
          if (circ.circle_of[arcs[0].lo] == circ.circle_of[arcs[1].lo]) ++bad;
          auto expected = alg.center_action(arcs[0].lo, alpha(alg, a, c));
          expected += alg.center_action(arcs[1].lo, alpha(alg, a, c));
          if (!(prod == expected)) ++bad;
        } else {
          ++bad;
        }
      }
    }
  return bad;
}

inline std::size_t check_factorization(const ArcAlgebra& alg) {
  std::size_t bad = 0;
  for (MatchingId a = 0; a < alg.size(); ++a)
    for (MatchingId b = 0; b < alg.size(); ++b) {
      const auto seq = arckh::planar::interpolate(alg.matching(a), alg.matching(b));
      ArcCombination prod = alg.idempotent(a);
      for (std::size_t k = 1; k < seq.size(); ++k)
        prod = alg.multiply(alpha(alg, alg.id(seq[k - 1]), alg.id(seq[k])), prod);
      if (!(prod == alpha(alg, a, b))) ++bad;
    }
  return bad;
}

inline std::size_t check_cyclicity(const ArcAlgebra& alg) {
  std::size_t bad = 0;
  for (MatchingId a = 0; a < alg.size(); ++a)
    for (MatchingId b = 0; b < alg.size(); ++b) {
      std::set<arckh::tqft::Labeling> seen{0};
      std::vector<arckh::tqft::Labeling> todo{0};
      while (!todo.empty()) {
        const auto l = todo.back();
        todo.pop_back();
        for (int p = 1; p <= 2 * alg.n(); ++p) {
          const auto r = alg.center_action(p, ArcCombination(ArcElement{a, b, l}));
          if (r.is_zero()) continue;
          if (r.terms().size() != 1 || r.terms()[0].second != 1) ++bad;
          if (seen.insert(r.terms()[0].first).second) todo.push_back(r.terms()[0].first);
        }
      }
      if (seen.size() != alg.block_dimension(a, b)) ++bad;
    }
  return bad;
}

inline std::size_t check_centrality(const ArcAlgebra& alg) {
  std::size_t bad = 0;
  for (MatchingId a = 0; a < alg.size(); ++a)
    for (MatchingId b = 0; b < alg.size(); ++b)
      for (MatchingId c = 0; c < alg.size(); ++c)
        for (const auto& x : alg.basis(a, b))
          for (const auto& y : alg.basis(b, c)) {
            const ArcCombination cx(x), cy(y);
            for (int p = 1; p <= 2 * alg.n(); ++p) {
              const auto whole = alg.center_action(p, alg.multiply(cy, cx));
              if (!(whole == alg.multiply(cy, alg.center_action(p, cx))) ||
                  !(whole == alg.multiply(alg.center_action(p, cy), cx)))
                ++bad;
            }
          }
  return bad;
}

inline std::size_t check_plait_mix(const ArcAlgebra& alg) {
  std::size_t bad = 0;
  const int n = alg.n();
  for (const Matching& mid : {arckh::planar::plait(n), arckh::planar::mixed(n)}) {
    const MatchingId m = alg.id(mid);
    for (MatchingId a = 0; a < alg.size(); ++a)
      for (MatchingId b = 0; b < alg.size(); ++b)
        if (alg.multiply(alpha(alg, m, b), alpha(alg, a, m)).is_zero()) ++bad;
  }
  return bad;
}

inline std::size_t check_surgery_order(const ArcAlgebra& alg, unsigned seed) {
  std::mt19937 rng(seed);
  std::size_t bad = 0;
  std::vector<int> order(alg.n());
  std::iota(order.begin(), order.end(), 0);
  for (MatchingId a = 0; a < alg.size(); ++a)
    for (MatchingId b = 0; b < alg.size(); ++b)
      for (MatchingId c = 0; c < alg.size(); ++c)
        for (const auto& x : alg.basis(a, b))
          for (const auto& y : alg.basis(b, c)) {
            std::shuffle(order.begin(), order.end(), rng);
            if (!(naive_multiply(alg, y, x, order) == alg.multiply(y, x))) ++bad;
          }
  return bad;
}

}  // namespace props
