#include "doctest.h"

#include <map>
#include <numeric>
#include <random>

#include "arckh/linkinv.hpp"
#include "arckh/oracle.hpp"

using namespace arckh;
using homalg::BigradedGroup;
using homalg::Coefficients;
using homalg::Group;

namespace {

BigradedGroup groups(std::initializer_list<std::tuple<int, int, Group>> entries) {
  BigradedGroup g;
  for (const auto& [i, j, grp] : entries) g.set(i, j, grp);
  return g;
}

BigradedGroup kh(const char* word, Coefficients c = Coefficients::integers()) {
  return linkinv::compute(BraidWord::parse(word), {c}).bigraded;
}

// PD of the unoriented resolution at crossing `x` of a braid closure. The
// arc running up from the upper-left end of the resolution back to the
// bottom of the crossing is reversed; everything else keeps its direction.
oracle::Diagram unoriented_resolution(const BraidWord& b, std::size_t x) {
  const oracle::Diagram d = oracle::braid_to_pd(b);
  int nl = 1;
  for (const auto& c : d.crossings)
    for (int e : c.e) nl = std::max(nl, e + 1);
  const bool positive = d.signs[x] > 0;
  // head[label] = (crossing, slot) where the edge enters, original direction
  std::vector<std::vector<std::pair<int, int>>> occ(nl);
  for (std::size_t y = 0; y < d.crossings.size(); ++y)
    for (int s = 0; s < 4; ++s) occ[d.crossings[y].e[s]].push_back({static_cast<int>(y), s});
  auto is_in = [&](int y, int s) { return s == 0 || s == (d.signs[y] > 0 ? 3 : 1); };
  std::vector<std::pair<int, int>> head(nl, {-1, -1});
  for (int l = 1; l < nl; ++l)
    for (auto o : occ[l])
      if (is_in(o.first, o.second)) head[l] = o;

  const auto& cx = d.crossings[x].e;
  const int top_left = cx[positive ? 2 : 3];
  std::vector<bool> reversed(nl, false);
  for (int cur = top_left;;) {
    reversed[cur] = true;
    const auto [y, s] = head[cur];
    if (y == static_cast<int>(x)) break;
    cur = d.crossings[y].e[(s + 2) % 4];
  }
  for (int l = 1; l < nl; ++l)
    if (reversed[l]) head[l] = occ[l][0] == head[l] ? occ[l][1] : occ[l][0];

  std::vector<int> parent(nl);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  auto join = [&](int u, int v) { parent[find(u)] = find(v); };
  if (positive) {
    join(cx[0], cx[3]);
    join(cx[1], cx[2]);
  } else {
    join(cx[0], cx[1]);
    join(cx[2], cx[3]);
  }
  // class head: the occurrence away from x where some member enters
  std::map<int, std::pair<int, int>> class_head;
  std::map<int, int> outside;
  for (int l = 1; l < nl; ++l) {
    for (auto o : occ[l])
      if (o.first != static_cast<int>(x)) ++outside[find(l)];
    if (head[l].first != static_cast<int>(x)) class_head[find(l)] = head[l];
  }
  oracle::Diagram out;
  out.free_loops = d.free_loops;
  for (int l = 1; l < nl; ++l)
    if (!occ[l].empty() && find(l) == l && !outside.count(l)) ++out.free_loops;
  for (std::size_t y = 0; y < d.crossings.size(); ++y) {
    if (y == x) continue;
    const auto& e = d.crossings[y].e;
    auto enters = [&](int s) { return class_head.at(find(e[s])) == std::pair<int, int>{static_cast<int>(y), s}; };
    const int u = enters(0) ? 0 : 2;
    const int o = enters(3) ? 3 : 1;
    oracle::Crossing c;
    for (int k = 0; k < 4; ++k) c.e[k] = find(e[(u + k) % 4]);
    out.crossings.push_back(c);
    out.signs.push_back(o == (u + 3) % 4 ? 1 : -1);
  }
  return out;
}

}  // namespace

TEST_CASE("unknot calibration") {
  const auto unknot = groups({{0, 1, {1, {}}}, {0, -1, {1, {}}}});
  CHECK(kh("n=1") == unknot);
  CHECK(kh("n=2 1") == unknot);
  CHECK(kh("n=2 -1") == unknot);
  CHECK(kh("n=3 1 2") == unknot);
  CHECK(kh("n=3 -1 2") == unknot);
}

TEST_CASE("Hopf link and trefoils") {
  CHECK(kh("n=2 1 1") ==
        groups({{0, 0, {1, {}}}, {0, 2, {1, {}}}, {2, 4, {1, {}}}, {2, 6, {1, {}}}}));
  // right-handed trefoil, with its Z/2 in degree (3, 7)
  const auto right = groups({{0, 1, {1, {}}},
                             {0, 3, {1, {}}},
                             {2, 5, {1, {}}},
                             {3, 7, {0, {2}}},
                             {3, 9, {1, {}}}});
  CHECK(kh("n=2 1 1 1") == right);
  // mirror: torsion moves to (-2, -7) over Z
  const auto left = groups({{0, -1, {1, {}}},
                            {0, -3, {1, {}}},
                            {-2, -5, {1, {}}},
                            {-2, -7, {0, {2}}},
                            {-3, -9, {1, {}}}});
  CHECK(kh("n=2 -1 -1 -1") == left);
}

TEST_CASE("2-component unlink") {
  const auto g = kh("n=2");
  CHECK(g == groups({{0, 2, {1, {}}}, {0, 0, {2, {}}}, {0, -2, {1, {}}}}));
}

TEST_CASE("mirror reflects the invariant over Q") {
  const char* words[] = {"n=2 1 1 1", "n=3 1 -2 1 -2", "n=3 1 1 2", "n=3 1 2 1 2 -1", "n=4 1 2 3 -2"};
  for (const char* w : words) {
    const auto b = BraidWord::parse(w);
    const auto q = Coefficients::rationals();
    CHECK(linkinv::compute(b.mirror(), {q}).bigraded == linkinv::compute(b, {q}).bigraded.reflected());
  }
}

TEST_CASE("collapsed grading is the anti-diagonal sum, shifted by n + w") {
  const char* words[] = {"n=1", "n=2 1", "n=2 1 1", "n=2 1 1 1", "n=3 1 -2 1 -2", "n=3 1 2 -1 2 2"};
  for (const char* w : words) {
    const auto b = BraidWord::parse(w);
    const auto r = linkinv::compute(b, {Coefficients::rationals()});
    CHECK(r.shifts.collapsed == b.strands + b.writhe());
    CHECK(r.collapsed == homalg::collapse_ranks(r.bigraded));
  }
}

TEST_CASE("torsion in the collapsed grading over Z") {
  const auto r = linkinv::compute(BraidWord::parse("n=2 1 1 1"), {Coefficients::integers()});
  CHECK(r.collapsed.at(-4).torsion == std::vector<std::int64_t>{2});
}

TEST_CASE("Jones polynomial from the chain complex") {
  CHECK(linkinv::jones(BraidWord::parse("n=1")) == linkinv::Laurent{{-1, 1}, {1, 1}});
  // q + q^3 + q^5 - q^9 for the right trefoil
  CHECK(linkinv::jones(BraidWord::parse("n=2 1 1 1")) ==
        linkinv::Laurent{{1, 1}, {3, 1}, {5, 1}, {9, -1}});
  const char* words[] = {"n=3 1 -2 1 -2", "n=3 1 1 2 -1", "n=4 1 -2 3 2"};
  for (const char* w : words) {
    const auto b = BraidWord::parse(w);
    CHECK(linkinv::jones(b) == linkinv::euler_of(linkinv::compute(b).bigraded));
  }
}

TEST_CASE("reduced and unreduced paths agree") {
  std::mt19937 rng(17);
  for (int t = 0; t < 12; ++t) {
    BraidWord b;
    b.strands = 2 + static_cast<int>(rng() % 2);
    const int len = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < len; ++k) {
      const int g = 1 + static_cast<int>(rng() % static_cast<unsigned>(b.strands - 1));
      b.letters.push_back(rng() % 2 ? g : -g);
    }
    const auto fast = homalg::homology(linkinv::truncated_complex(b, true), Coefficients::integers());
    const auto slow = homalg::homology(linkinv::truncated_complex(b, false), Coefficients::integers());
    CHECK(fast == slow);
  }
}

TEST_CASE("Markov moves") {
  for (const char* w : {"n=2 1 1 1", "n=3 1 -2 1 -2", "n=2 -1", "n=1"}) {
    const auto rep = linkinv::verify_markov(BraidWord::parse(w), {Coefficients::integers()}, 3);
    for (const auto& line : rep.lines) INFO(line);
    CHECK(rep.passed);
  }
}

TEST_CASE("resolution orientation counts") {
  // sigma_1^3: the reversed arc meets both other crossings once, so both flip
  const auto [v, np, nm] = linkinv::resolution_orientation(BraidWord::parse("n=2 1 1 1"), 0);
  CHECK(v == 2);
  CHECK(np == 0);
  CHECK(nm == 2);
  auto single = linkinv::resolution_orientation(BraidWord::parse("n=2 1"), 0);
  CHECK(std::get<0>(single) == 0);
  CHECK_THROWS(linkinv::resolution_orientation(BraidWord::parse("n=2 1"), 1));
}

TEST_CASE("skein third term matches the cube of the unoriented resolution") {
  const char* words[] = {"n=2 1",         "n=2 1 1",      "n=2 1 1 1",   "n=2 -1 -1",
                         "n=3 1 -2 1 -2", "n=3 1 2 -1 2", "n=3 1 1 2 2", "n=3 -1 2 2 -1 -2"};
  for (const char* w : words) {
    const auto b = BraidWord::parse(w);
    for (std::size_t x = 0; x < b.letters.size(); ++x) {
      const auto s = linkinv::skein_data(b, x);
      const auto l1 = unoriented_resolution(b, x);
      INFO(w << " at " << x);
      CHECK(s.c == oracle::cube_homology(l1, Coefficients::rationals()));
      int plus = 0;
      for (int sg : oracle::crossing_signs(l1)) plus += sg > 0;
      CHECK(plus == s.l1_positive);
    }
  }
}

TEST_CASE("skein triangles") {
  const char* words[] = {"n=2 1", "n=2 1 1 1", "n=2 -1 -1 -1", "n=3 1 -2 1 -2", "n=3 1 2 2 -1"};
  for (const char* w : words) {
    const auto b = BraidWord::parse(w);
    for (std::size_t x = 0; x < b.letters.size(); ++x) {
      const auto rep = linkinv::verify_skein(b, x);
      for (const auto& line : rep.lines) INFO(line);
      CHECK(rep.passed);
    }
  }
  // sigma_1: unknot, 2-unlink, unknot
  const auto s = linkinv::skein_data(BraidWord::parse("n=2 1"), 0);
  CHECK(s.a.total_rank() == 2);
  CHECK(s.b.total_rank() == 4);
  CHECK(s.c.total_rank() == 2);
}

TEST_CASE("determinism and JSON round trip") {
  const auto b = BraidWord::parse("n=3 1 -2 1 -2");
  const auto r1 = linkinv::compute(b);
  const auto r2 = linkinv::compute(b);
  CHECK(r1.to_json().dump() == r2.to_json().dump());
  CHECK(linkinv::InvariantResult::from_json(r1.to_json()) == r1);
  const auto j = r1.to_json();
  for (const char* key : {"link", "n", "w", "shifts", "groups", "collapsed", "jones", "coefficients"})
    CHECK(j.contains(key));
}

TEST_CASE("coefficient fields") {
  const auto b = BraidWord::parse("n=2 1 1 1");
  const auto q = linkinv::compute(b, {Coefficients::rationals()}).bigraded;
  const auto f2 = linkinv::compute(b, {Coefficients::mod(2)}).bigraded;
  const auto f3 = linkinv::compute(b, {Coefficients::mod(3)}).bigraded;
  CHECK(q.total_rank() == 4);
  CHECK(f2.total_rank() == 6);
  CHECK(f3 == q);
}
