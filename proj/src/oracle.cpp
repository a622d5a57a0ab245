#include "arckh/oracle.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <regex>
#include <sstream>
#include <stdexcept>

#include "arckh/tqft.hpp"

namespace arckh::oracle {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Dense relabeling: slot (crossing, k) -> index into the sorted label set.
struct Dense {
  std::vector<int> labels;                  // sorted distinct labels
  std::vector<std::array<int, 4>> slots;    // dense index per crossing slot
};

Dense densify(const Diagram& d) {
  Dense out;
  for (const auto& x : d.crossings)
    for (int l : x.e) out.labels.push_back(l);
  std::sort(out.labels.begin(), out.labels.end());
  out.labels.erase(std::unique(out.labels.begin(), out.labels.end()), out.labels.end());
  for (const auto& x : d.crossings) {
    std::array<int, 4> s{};
    for (int k = 0; k < 4; ++k)
      s[k] = static_cast<int>(std::lower_bound(out.labels.begin(), out.labels.end(), x.e[k]) -
                              out.labels.begin());
    out.slots.push_back(s);
  }
  return out;
}

// Occurrence = crossing * 4 + slot.
std::vector<std::array<int, 2>> occurrences(const Dense& dn) {
  std::vector<std::array<int, 2>> occ(dn.labels.size(), {-1, -1});
  for (std::size_t x = 0; x < dn.slots.size(); ++x)
    for (int k = 0; k < 4; ++k) {
      auto& o = occ[dn.slots[x][k]];
      (o[0] < 0 ? o[0] : o[1]) = static_cast<int>(x * 4 + k);
    }
  return occ;
}

int other(const std::array<int, 2>& o, int occ) { return o[0] == occ ? o[1] : o[0]; }

}  // namespace

void check(const Diagram& d) {
  std::map<int, int> uses;
  for (const auto& x : d.crossings)
    for (int l : x.e) ++uses[l];
  for (auto [l, n] : uses)
    if (n != 2)
      throw std::invalid_argument("pd: label " + std::to_string(l) + " used " + std::to_string(n) +
                                  " times");
  if (d.free_loops < 0) throw std::invalid_argument("pd: negative loop count");
  if (d.crossings.empty() && d.free_loops == 0) throw std::invalid_argument("pd: empty diagram");
  if (!d.signs.empty()) {
    if (d.signs.size() != d.crossings.size())
      throw std::invalid_argument("pd: sign count does not match crossings");
    for (int s : d.signs)
      if (s != 1 && s != -1) throw std::invalid_argument("pd: bad sign");
  }
}

Diagram parse_pd(std::string_view text) {
  static const std::regex cross(
      R"(X\s*[\(\[]\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*[\)\]])");
  Diagram d;
  std::string s(text);
  std::string rest;
  auto last = s.cbegin();
  for (std::sregex_iterator it(s.begin(), s.end(), cross), end; it != end; ++it) {
    const auto& m = *it;
    rest.append(last, m[0].first);
    rest += ' ';
    last = m[0].second;
    Crossing x;
    for (int k = 0; k < 4; ++k) x.e[k] = std::stoi(m[k + 1].str());
    d.crossings.push_back(x);
  }
  rest.append(last, s.cend());
  for (char& c : rest)
    if (c == ',' || c == '[' || c == ']' || c == '(' || c == ')' || c == ';') c = ' ';
  std::istringstream in(rest);
  std::string tok;
  while (in >> tok) {
    if (tok == "O")
      ++d.free_loops;
    else if (tok != "PD")
      throw std::invalid_argument("pd: unexpected '" + tok + "'");
  }
  check(d);
  return d;
}

std::string to_pd_text(const Diagram& d) {
  std::string out;
  for (const auto& x : d.crossings)
    out += "X(" + std::to_string(x.e[0]) + "," + std::to_string(x.e[1]) + "," +
           std::to_string(x.e[2]) + "," + std::to_string(x.e[3]) + ")\n";
  for (int i = 0; i < d.free_loops; ++i) out += "O\n";
  return out;
}

std::vector<int> inferred_signs(const Diagram& d) {
  check(d);
  const Dense dn = densify(d);
  const auto occ = occurrences(dn);
  const std::size_t nl = dn.labels.size();
  // head[label] = the occurrence where the edge enters its crossing
  std::vector<int> head(nl, -1);
  auto set_head = [&](int label, int o) {
    if (head[label] >= 0 && head[label] != o)
      throw std::invalid_argument("pd: inconsistent orientation");
    const bool changed = head[label] < 0;
    head[label] = o;
    return changed;
  };
  for (std::size_t x = 0; x < dn.slots.size(); ++x) {
    const int base = static_cast<int>(x * 4);
    set_head(dn.slots[x][0], base);
    set_head(dn.slots[x][2], other(occ[dn.slots[x][2]], base + 2));
  }
  // over-strand components, for the label rule
  UnionFind strands(nl);
  for (const auto& s : dn.slots) {
    strands.unite(s[0], s[2]);
    strands.unite(s[1], s[3]);
  }

  auto propagate = [&] {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t x = 0; x < dn.slots.size(); ++x) {
        const int base = static_cast<int>(x * 4);
        const int b = dn.slots[x][1], dd = dn.slots[x][3];
        const bool d_in = head[dd] == base + 3, d_out = head[dd] >= 0 && !d_in;
        const bool b_in = head[b] == base + 1, b_out = head[b] >= 0 && !b_in;
        if (d_in || b_out) {
          changed |= set_head(b, other(occ[b], base + 1));
          changed |= set_head(dd, base + 3);
        } else if (b_in || d_out) {
          changed |= set_head(dd, other(occ[dd], base + 3));
          changed |= set_head(b, base + 1);
        }
      }
    }
  };
  propagate();
  for (std::size_t x = 0; x < dn.slots.size(); ++x) {
    const int b = dn.slots[x][1], dd = dn.slots[x][3];
    if (head[dd] >= 0) continue;
    // labels run consecutively along the component, wrapping once
    int lo = b, hi = b;
    for (std::size_t l = 0; l < nl; ++l)
      if (strands.find(static_cast<int>(l)) == strands.find(b)) {
        lo = std::min(lo, static_cast<int>(l));
        hi = std::max(hi, static_cast<int>(l));
      }
    const bool d_to_b = b == dd + 1 || (dd == hi && b == lo);
    const int base = static_cast<int>(x * 4);
    if (d_to_b)
      set_head(dd, base + 3);
    else
      set_head(b, base + 1);
    propagate();
  }
  std::vector<int> signs;
  for (std::size_t x = 0; x < dn.slots.size(); ++x)
    signs.push_back(head[dn.slots[x][3]] == static_cast<int>(x * 4 + 3) ? 1 : -1);
  return signs;
}

std::vector<int> crossing_signs(const Diagram& d) {
  if (!d.signs.empty()) {
    check(d);
    return d.signs;
  }
  return inferred_signs(d);
}

int components(const Diagram& d) {
  check(d);
  const Dense dn = densify(d);
  UnionFind uf(dn.labels.size());
  for (const auto& s : dn.slots) {
    uf.unite(s[0], s[2]);
    uf.unite(s[1], s[3]);
  }
  int n = d.free_loops;
  for (std::size_t l = 0; l < dn.labels.size(); ++l)
    if (uf.find(static_cast<int>(l)) == static_cast<int>(l)) ++n;
  return n;
}

Diagram braid_to_pd(const BraidWord& b) {
  b.check();
  const int n = b.strands;
  std::vector<int> cur(n + 1);
  std::iota(cur.begin(), cur.end(), 0);  // bottom edges 1..n
  int next = n + 1;
  Diagram raw;
  for (int l : b.letters) {
    const int k = std::abs(l);
    const int ok = next++, ok1 = next++;
    if (l > 0)
      raw.crossings.push_back({{cur[k + 1], ok1, ok, cur[k]}});
    else
      raw.crossings.push_back({{cur[k], cur[k + 1], ok1, ok}});
    raw.signs.push_back(l > 0 ? 1 : -1);
    cur[k] = ok;
    cur[k + 1] = ok1;
  }
  // closure: top edge at position p is the bottom edge at p
  UnionFind uf(next);
  int loops = 0;
  for (int p = 1; p <= n; ++p) {
    if (cur[p] == p)
      ++loops;
    else
      uf.unite(cur[p], p);
  }
  for (auto& x : raw.crossings)
    for (int& l : x.e) l = uf.find(l);

  // renumber along the orientation, component by component
  std::map<int, std::pair<std::size_t, int>> head;  // class -> (crossing, in-slot)
  for (std::size_t x = 0; x < raw.crossings.size(); ++x) {
    head[raw.crossings[x].e[0]] = {x, 0};
    const int over_in = raw.signs[x] > 0 ? 3 : 1;
    head[raw.crossings[x].e[over_in]] = {x, over_in};
  }
  std::map<int, int> label;
  int fresh = 1;
  for (const auto& x : raw.crossings)
    for (int start : x.e) {
      if (label.count(start)) continue;
      int c = start;
      do {
        label[c] = fresh++;
        auto [xi, slot] = head.at(c);
        const int out = slot == 0 ? 2 : (slot == 3 ? 1 : 3);
        c = raw.crossings[xi].e[out];
      } while (c != start);
    }
  Diagram d;
  d.signs = raw.signs;
  d.free_loops = loops;
  for (const auto& x : raw.crossings) {
    Crossing y;
    for (int k = 0; k < 4; ++k) y.e[k] = label.at(x.e[k]);
    d.crossings.push_back(y);
  }
  return d;
}

homalg::FreeComplex cube_complex(const Diagram& d, SignRule rule) {
  const std::vector<int> signs = crossing_signs(d);
  const Dense dn = densify(d);
  const int nx = static_cast<int>(d.crossings.size());
  if (nx > 24) throw std::invalid_argument("cube: too many crossings");
  const int nl = static_cast<int>(dn.labels.size());
  const int n_plus = static_cast<int>(std::count(signs.begin(), signs.end(), 1));
  const int n_minus = nx - n_plus;
  const std::uint32_t states = 1u << nx;

  // circles per state: circle of each dense label, and one label per circle
  std::vector<std::vector<int>> circle_of(states), rep(states);
  std::vector<int> count(states);
  for (std::uint32_t v = 0; v < states; ++v) {
    UnionFind uf(nl);
    for (int i = 0; i < nx; ++i) {
      const auto& s = dn.slots[i];
      if ((v >> i) & 1u) {
        uf.unite(s[0], s[3]);
        uf.unite(s[1], s[2]);
      } else {
        uf.unite(s[0], s[1]);
        uf.unite(s[2], s[3]);
      }
    }
    std::vector<int> idx(nl, -1);
    auto& co = circle_of[v];
    co.resize(nl);
    for (int l = 0; l < nl; ++l) {
      const int r = uf.find(l);
      if (idx[r] < 0) {
        idx[r] = static_cast<int>(rep[v].size());
        rep[v].push_back(l);
      }
      co[l] = idx[r];
    }
    count[v] = static_cast<int>(rep[v].size()) + d.free_loops;
    if (count[v] > 30) throw std::invalid_argument("cube: too many circles");
  }

  homalg::FreeComplex fc;
  std::vector<std::size_t> offset(states);
  for (std::uint32_t v = 0; v < states; ++v) {
    const int h = std::popcount(v) - n_minus;
    auto& g = fc.gens[h];
    offset[v] = g.size();
    const int c = count[v];
    for (tqft::Labeling m = 0; m < (tqft::Labeling{1} << c); ++m)
      g.push_back({tqft::qdeg(m, c) + std::popcount(v) + n_plus - 2 * n_minus, h});
  }
  for (int h = -n_minus; h < n_plus; ++h)
    fc.d[h] = homalg::SparseMatrix(fc.gens[h + 1].size(), fc.gens[h].size());

  for (std::uint32_t v = 0; v < states; ++v) {
    const int h = std::popcount(v) - n_minus;
    const int c = count[v];
    const int loops_from = static_cast<int>(rep[v].size());
    for (int i = 0; i < nx; ++i) {
      if ((v >> i) & 1u) continue;
      const std::uint32_t w = v | (1u << i);
      const std::uint32_t mask_below = (1u << i) - 1;
      const int ones = std::popcount(rule == SignRule::Below ? (v & mask_below) : (v & ~mask_below));
      const std::int64_t sign = ones % 2 ? -1 : 1;
      const int a = dn.slots[i][0], cc = dn.slots[i][2];
      const int ca = circle_of[v][a], ccc = circle_of[v][cc];
      const int wa = circle_of[w][a], wc = circle_of[w][cc];
      const int w_loops = static_cast<int>(rep[w].size());
      // untouched circles of v -> circles of w
      std::vector<int> carry(c, -1);
      for (int j = 0; j < loops_from; ++j)
        if (j != ca && j != ccc) carry[j] = circle_of[w][rep[v][j]];
      for (int j = 0; j < d.free_loops; ++j) carry[loops_from + j] = w_loops + j;
      auto& mat = fc.d[h];
      for (tqft::Labeling m = 0; m < (tqft::Labeling{1} << c); ++m) {
        tqft::Labeling base = 0;
        for (int j = 0; j < c; ++j)
          if (carry[j] >= 0 && ((m >> j) & 1u)) base |= tqft::Labeling{1} << carry[j];
        const std::size_t col = offset[v] + m;
        if (ca != ccc) {
          for (auto [lab, coef] : tqft::merge(tqft::label_of(m, ca), tqft::label_of(m, ccc))) {
            tqft::Labeling t = base;
            if (lab == tqft::Label::X) t |= tqft::Labeling{1} << wa;
            mat.add(offset[w] + t, col, sign * coef);
          }
        } else {
          for (auto [labs, coef] : tqft::split(tqft::label_of(m, ca))) {
            tqft::Labeling t = base;
            if (labs[0] == tqft::Label::X) t |= tqft::Labeling{1} << wa;
            if (labs[1] == tqft::Label::X) t |= tqft::Labeling{1} << wc;
            mat.add(offset[w] + t, col, sign * coef);
          }
        }
      }
    }
  }
  return fc;
}

homalg::BigradedGroup cube_homology(const Diagram& d, const homalg::Coefficients& coeffs,
                                    SignRule rule) {
  return homalg::homology(cube_complex(d, rule), coeffs);
}

}  // namespace arckh::oracle
