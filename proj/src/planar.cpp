#include "arckh/planar.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace arckh::planar {

namespace {

bool crosses(Arc x, Arc y) {
  return (x.lo < y.lo && y.lo < x.hi && x.hi < y.hi) ||
         (y.lo < x.lo && x.lo < y.hi && y.hi < x.hi);
}

}  // namespace

Matching Matching::from_pairs(const std::vector<std::pair<int, int>>& pairs) {
  const int points = 2 * static_cast<int>(pairs.size());
  Matching m;
  m.partner_.assign(points + 1, 0);
  for (auto [x, y] : pairs) {
    if (x == y || x < 1 || y < 1 || x > points || y > points)
      throw std::invalid_argument("matching: bad pair (" + std::to_string(x) +
                                  "," + std::to_string(y) + ")");
    if (m.partner_[x] != 0 || m.partner_[y] != 0)
      throw std::invalid_argument("matching: point used twice");
    m.partner_[x] = y;
    m.partner_[y] = x;
    m.arcs_.push_back({std::min(x, y), std::max(x, y)});
  }
  std::sort(m.arcs_.begin(), m.arcs_.end());
  for (std::size_t i = 0; i < m.arcs_.size(); ++i)
    for (std::size_t j = i + 1; j < m.arcs_.size(); ++j)
      if (crosses(m.arcs_[i], m.arcs_[j]))
        throw std::invalid_argument("matching: arcs cross");
  return m;
}

Matching Matching::parse(std::string_view text) {
  std::vector<std::pair<int, int>> pairs;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() &&
           (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ','))
      ++pos;
  };
  auto number = [&]() -> int {
    skip();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) throw std::invalid_argument("matching: expected a point number");
    return std::stoi(std::string(text.substr(start, pos - start)));
  };
  skip();
  while (pos < text.size()) {
    if (text[pos] != '(') throw std::invalid_argument("matching: expected '('");
    ++pos;
    int x = number();
    int y = number();
    skip();
    if (pos >= text.size() || text[pos] != ')')
      throw std::invalid_argument("matching: expected ')'");
    ++pos;
    pairs.emplace_back(x, y);
    skip();
  }
  if (pairs.empty()) throw std::invalid_argument("matching: empty");
  return from_pairs(pairs);
}

bool Matching::contains(Arc arc) const {
  if (arc.lo < 1 || arc.hi > points()) return false;
  return partner_[arc.lo] == arc.hi;
}

std::string Matching::to_string() const {
  std::ostringstream out;
  for (const Arc& a : arcs_) out << '(' << a.lo << ' ' << a.hi << ')';
  return out.str();
}

std::vector<Matching> enumerate_matchings(int n) {
  if (n < 1) throw std::invalid_argument("enumerate_matchings: n must be >= 1");
  // Pair the lowest free point with a partner leaving an even gap inside.
  std::vector<std::vector<std::pair<int, int>>> out;
  std::vector<std::pair<int, int>> current;
  std::function<void(int, int, std::function<void()>)> fill;
  fill = [&](int lo, int hi, std::function<void()> done) {
    if (lo > hi) {
      done();
      return;
    }
    for (int p = lo + 1; p <= hi; p += 2) {
      current.emplace_back(lo, p);
      fill(lo + 1, p - 1, [&, p, hi, done] { fill(p + 1, hi, done); });
      current.pop_back();
    }
  };
  fill(1, 2 * n, [&] { out.push_back(current); });
  std::vector<Matching> result;
  result.reserve(out.size());
  for (const auto& pairs : out) result.push_back(Matching::from_pairs(pairs));
  std::sort(result.begin(), result.end());
  return result;
}

Matching plait(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i <= n; ++i) pairs.emplace_back(2 * i - 1, 2 * i);
  return Matching::from_pairs(pairs);
}

Matching mixed(int n) {
  std::vector<std::pair<int, int>> pairs{{1, 2 * n}};
  for (int i = 1; i < n; ++i) pairs.emplace_back(2 * i, 2 * i + 1);
  return Matching::from_pairs(pairs);
}

Matching horseshoe(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i <= n; ++i) pairs.emplace_back(i, 2 * n + 1 - i);
  return Matching::from_pairs(pairs);
}

CircleDiagram circles(const Matching& lower, const Matching& upper) {
  if (lower.pairs() != upper.pairs())
    throw std::invalid_argument("circles: matchings of different size");
  const int points = lower.points();
  CircleDiagram d;
  d.circle_of.assign(points + 1, -1);
  for (int start = 1; start <= points; ++start) {
    if (d.circle_of[start] >= 0) continue;
    const int id = d.count();
    std::vector<int> circle{start};
    d.circle_of[start] = id;
    int p = start;
    while (true) {
      const int q = lower.partner(p);
      circle.push_back(q);
      d.circle_of[q] = id;
      const int r = upper.partner(q);
      if (r == start) break;
      circle.push_back(r);
      d.circle_of[r] = id;
      p = r;
    }
    d.circles.push_back(std::move(circle));
  }
  return d;
}

int codim(const Matching& a, const Matching& b) {
  return a.pairs() - circles(a, b).count();
}

namespace {

// Replaces the arcs at p and q by (p q) and (p' q'); nullopt if that crosses.
std::optional<Matching> resurgery(const Matching& w, int p, int q) {
  const int pp = w.partner(p);
  const int qq = w.partner(q);
  std::vector<std::pair<int, int>> pairs;
  for (const Arc& a : w.arcs())
    if (a.lo != p && a.hi != p && a.lo != q && a.hi != q) pairs.emplace_back(a.lo, a.hi);
  pairs.emplace_back(p, q);
  pairs.emplace_back(pp, qq);
  try {
    return Matching::from_pairs(pairs);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

}  // namespace

std::vector<Matching> interpolate(const Matching& from, const Matching& to) {
  if (from.pairs() != to.pairs())
    throw std::invalid_argument("interpolate: matchings of different size");
  std::vector<Matching> seq{from};
  while (!(seq.back() == to)) {
    const Matching& cur = seq.back();
    const int before = codim(cur, to);
    std::optional<Matching> next;
    for (const Arc& a : to.arcs()) {
      if (cur.contains(a)) continue;
      auto cand = resurgery(cur, a.lo, a.hi);
      if (cand && codim(*cand, to) == before - 1) {
        next = std::move(cand);
        break;
      }
    }
    if (!next) throw std::logic_error("interpolate: no codimension-one step from " +
                                      cur.to_string() + " toward " + to.to_string());
    seq.push_back(std::move(*next));
  }
  return seq;
}

Matching cup_insert(int i, const Matching& w) {
  const int n = w.pairs() + 1;
  if (i < 1 || i > 2 * n - 1)
    throw std::invalid_argument("cup_insert: position out of range");
  auto shift = [i](int p) { return p >= i ? p + 2 : p; };
  std::vector<std::pair<int, int>> pairs{{i, i + 1}};
  for (const Arc& a : w.arcs()) pairs.emplace_back(shift(a.lo), shift(a.hi));
  return Matching::from_pairs(pairs);
}

CapResult cap_apply(int i, const Matching& w) {
  if (i < 1 || i > w.points() - 1)
    throw std::invalid_argument("cap_apply: position out of range");
  auto shift = [i](int p) { return p > i + 1 ? p - 2 : p; };
  std::vector<std::pair<int, int>> pairs;
  CapResult r;
  if (w.partner(i) == i + 1) {
    r.closed_circles = 1;
  } else {
    pairs.emplace_back(shift(w.partner(i)), shift(w.partner(i + 1)));
  }
  for (const Arc& a : w.arcs()) {
    if (a.lo == i || a.lo == i + 1 || a.hi == i || a.hi == i + 1) continue;
    pairs.emplace_back(shift(a.lo), shift(a.hi));
  }
  r.matching = Matching::from_pairs(pairs);
  return r;
}

std::vector<OrientedArc> depth_orientation(const Matching& w) {
  std::vector<OrientedArc> out;
  for (const Arc& a : w.arcs()) {
    int depth = 0;
    for (const Arc& b : w.arcs())
      if (b.lo < a.lo && a.hi < b.hi) ++depth;
    out.push_back({a, depth, depth % 2 == 0, a.lo % 2 == 0 ? a.lo : a.hi});
  }
  return out;
}

}  // namespace arckh::planar
