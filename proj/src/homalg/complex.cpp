#include "arckh/homalg/complex.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>

namespace arckh::homalg {

const ArcCombination* ModuleMap::entry(std::size_t source, std::size_t target) const {
  const auto& col = cols_.at(source);
  auto it = col.find(target);
  return it == col.end() ? nullptr : &it->second;
}

void ModuleMap::add(std::size_t source, std::size_t target, const ArcCombination& value) {
  if (value.is_zero()) return;
  if (target >= targets_) throw std::out_of_range("ModuleMap::add: target index");
  auto& col = cols_.at(source);
  auto [it, fresh] = col.try_emplace(target, value);
  if (fresh) return;
  it->second += value;
  if (it->second.is_zero()) col.erase(it);
}

void ModuleMap::set(std::size_t source, std::size_t target, ArcCombination value) {
  if (target >= targets_) throw std::out_of_range("ModuleMap::set: target index");
  auto& col = cols_.at(source);
  if (value.is_zero())
    col.erase(target);
  else
    col[target] = std::move(value);
}

void ModuleMap::erase(std::size_t source, std::size_t target) { cols_.at(source).erase(target); }

std::size_t ModuleMap::nonzeros() const {
  std::size_t t = 0;
  for (const auto& c : cols_) t += c.size();
  return t;
}

ModuleMap ModuleMap::scaled(Coeff c) const {
  ModuleMap out(sources(), targets());
  if (c == 0) return out;
  for (std::size_t s = 0; s < sources(); ++s)
    for (const auto& [t, e] : cols_[s]) out.cols_[s].emplace(t, e * c);
  return out;
}

ModuleMap compose(const ArcAlgebra& alg, const ModuleMap& later, const ModuleMap& earlier) {
  if (earlier.targets() != later.sources()) throw std::invalid_argument("compose: shape mismatch");
  ModuleMap out(earlier.sources(), later.targets());
  for (std::size_t s = 0; s < earlier.sources(); ++s)
    for (const auto& [m, e] : earlier.column(s))
      for (const auto& [t, l] : later.column(m)) out.add(s, t, alg.multiply(l, e));
  return out;
}

ModuleMap sum(const ModuleMap& a, const ModuleMap& b) {
  if (a.sources() != b.sources() || a.targets() != b.targets())
    throw std::invalid_argument("sum: shape mismatch");
  ModuleMap out = a;
  for (std::size_t s = 0; s < b.sources(); ++s)
    for (const auto& [t, e] : b.column(s)) out.add(s, t, e);
  return out;
}

const std::vector<ProjSummand>& Complex::at(int h) const {
  static const std::vector<ProjSummand> empty;
  auto it = terms.find(h);
  return it == terms.end() ? empty : it->second;
}

ModuleMap Complex::differential(int h) const {
  auto it = d.find(h);
  if (it != d.end()) return it->second;
  return ModuleMap(at(h).size(), at(h + 1).size());
}

std::size_t Complex::size() const {
  std::size_t t = 0;
  for (const auto& [h, v] : terms) t += v.size();
  return t;
}

int Complex::min_degree() const {
  for (const auto& [h, v] : terms)
    if (!v.empty()) return h;
  return 0;
}

int Complex::max_degree() const {
  for (auto it = terms.rbegin(); it != terms.rend(); ++it)
    if (!it->second.empty()) return it->first;
  return 0;
}

Complex Complex::single(int n, ProjSummand s, int degree) {
  Complex c;
  c.n = n;
  c.terms[degree] = {s};
  return c;
}

ModuleMap ChainMap::at(int h, const Complex& source, const Complex& target) const {
  auto it = components.find(h);
  if (it != components.end()) return it->second;
  return ModuleMap(source.at(h).size(), target.at(h).size());
}

void check_homogeneous(const ArcAlgebra& alg, const ModuleMap& m,
                       const std::vector<ProjSummand>& src, const std::vector<ProjSummand>& tgt,
                       const std::string& what, const int* floer_offset) {
  if (m.sources() != src.size() || m.targets() != tgt.size())
    throw std::logic_error(what + ": map shape does not match its terms");
  for (std::size_t s = 0; s < src.size(); ++s)
    for (const auto& [t, e] : m.column(s)) {
      if (e.source() != src[s].matching || e.target() != tgt[t].matching)
        throw std::logic_error(what + ": entry " + std::to_string(s) + "->" + std::to_string(t) +
                               " lies in the wrong block");
      for (auto [labels, c] : e.terms()) {
        (void)c;
        const int sd = alg.sdeg({e.source(), e.target(), labels});
        if (sd != tgt[t].qshift - src[s].qshift)
          throw std::logic_error(what + ": entry " + std::to_string(s) + "->" + std::to_string(t) +
                                 " is not q-homogeneous");
        if (floer_offset && sd != src[s].fshift - tgt[t].fshift + *floer_offset)
          throw std::logic_error(what + ": entry " + std::to_string(s) + "->" + std::to_string(t) +
                                 " breaks the Floer grading");
      }
    }
}

void validate(const Complex& c) {
  const auto& alg = c.algebra();
  for (const auto& [h, v] : c.terms)
    for (const auto& s : v)
      if (s.matching < 0 || s.matching >= alg.size())
        throw std::logic_error("complex: summand matching out of range");
  for (const auto& [h, m] : c.d) {
    const int zero = 0;
    check_homogeneous(alg, m, c.at(h), c.at(h + 1), "differential d" + std::to_string(h), &zero);
  }
  for (const auto& [h, m] : c.d) {
    auto next = c.d.find(h + 1);
    if (next == c.d.end()) continue;
    if (!compose(alg, next->second, m).is_zero())
      throw std::logic_error("complex: d" + std::to_string(h + 1) + " o d" + std::to_string(h) +
                             " != 0");
  }
}

void check_chain_map(const Complex& source, const Complex& target, const ChainMap& f) {
  if (source.n != target.n) throw std::logic_error("chain map: algebras differ");
  const auto& alg = source.algebra();
  std::set<int> degrees;
  for (const auto& [h, v] : source.terms) degrees.insert(h), degrees.insert(h - 1);
  for (const auto& [h, v] : target.terms) degrees.insert(h), degrees.insert(h - 1);
  for (const auto& [h, m] : f.components)
    check_homogeneous(alg, m, source.at(h), target.at(h), "chain map f" + std::to_string(h));
  for (int h : degrees) {
    const ModuleMap lhs = compose(alg, target.differential(h), f.at(h, source, target));
    const ModuleMap rhs = compose(alg, f.at(h + 1, source, target), source.differential(h));
    if (!(lhs == rhs))
      throw std::logic_error("chain map: fails to commute with d in degree " + std::to_string(h));
  }
}

Complex cone(const Complex& source, const Complex& target, const ChainMap& f) {
  check_chain_map(source, target, f);
  Complex out;
  out.n = source.n;
  std::set<int> degrees;
  for (const auto& [h, v] : source.terms)
    if (!v.empty()) degrees.insert(h - 1);
  for (const auto& [h, v] : target.terms)
    if (!v.empty()) degrees.insert(h);
  for (int k : degrees) {
    auto& t = out.terms[k];
    const auto& a = source.at(k + 1);
    const auto& b = target.at(k);
    t.insert(t.end(), a.begin(), a.end());
    t.insert(t.end(), b.begin(), b.end());
  }
  for (int k : degrees) {
    if (!degrees.count(k + 1)) continue;
    const std::size_t ca = source.at(k + 1).size();
    const std::size_t na = source.at(k + 2).size();
    ModuleMap m(out.at(k).size(), out.at(k + 1).size());
    const ModuleMap dc = source.differential(k + 1);
    const ModuleMap fk = f.at(k + 1, source, target);
    const ModuleMap dd = target.differential(k);
    for (std::size_t s = 0; s < ca; ++s) {
      for (const auto& [t, e] : dc.column(s)) m.add(s, t, -e);
      for (const auto& [t, e] : fk.column(s)) m.add(s, na + t, e);
    }
    for (std::size_t s = 0; s < dd.sources(); ++s)
      for (const auto& [t, e] : dd.column(s)) m.add(ca + s, na + t, e);
    if (!m.is_zero()) out.d[k] = std::move(m);
  }
  validate(out);
  return out;
}

Complex shift(const Complex& c, int dh, int dq, int df) {
  Complex out;
  out.n = c.n;
  for (const auto& [h, v] : c.terms) {
    auto& t = out.terms[h + dh];
    for (auto s : v) {
      s.qshift += dq;
      s.fshift += df;
      t.push_back(s);
    }
  }
  const Coeff sign = (dh % 2 == 0) ? 1 : -1;
  for (const auto& [h, m] : c.d) out.d[h + dh] = sign == 1 ? m : m.scaled(-1);
  return out;
}

Complex direct_sum(const Complex& a, const Complex& b) {
  if (a.n != b.n) throw std::invalid_argument("direct_sum: algebras differ");
  Complex out;
  out.n = a.n;
  std::set<int> degrees;
  for (const auto& [h, v] : a.terms) degrees.insert(h);
  for (const auto& [h, v] : b.terms) degrees.insert(h);
  for (int h : degrees) {
    auto& t = out.terms[h];
    t = a.at(h);
    t.insert(t.end(), b.at(h).begin(), b.at(h).end());
  }
  for (int h : degrees) {
    ModuleMap m(out.at(h).size(), out.at(h + 1).size());
    const ModuleMap da = a.differential(h), db = b.differential(h);
    const std::size_t sa = a.at(h).size(), ta = a.at(h + 1).size();
    for (std::size_t s = 0; s < da.sources(); ++s)
      for (const auto& [t, e] : da.column(s)) m.add(s, t, e);
    for (std::size_t s = 0; s < db.sources(); ++s)
      for (const auto& [t, e] : db.column(s)) m.add(sa + s, ta + t, e);
    if (!m.is_zero()) out.d[h] = std::move(m);
  }
  return out;
}

namespace {

// Mutable form used by the elimination: every degree keeps its summands,
// alive flags, differential columns and a row index of that differential.
struct Level {
  std::vector<ProjSummand> terms;
  std::vector<char> alive;
  std::vector<std::map<std::size_t, ArcCombination>> cols;  // d from this level
  std::vector<std::set<std::size_t>> rows;                   // d into this level: row -> sources
};

class Reducer {
 public:
  explicit Reducer(const Complex& c) : c_(c), alg_(c.algebra()) {
    if (c.terms.empty()) return;
    lo_ = c.terms.begin()->first;
    const int hi = c.terms.rbegin()->first;
    levels_.resize(hi - lo_ + 1);
    for (int h = lo_; h <= hi; ++h) {
      auto& L = level(h);
      L.terms = c.at(h);
      L.alive.assign(L.terms.size(), 1);
      L.cols.resize(L.terms.size());
      L.rows.resize(L.terms.size());
    }
    for (const auto& [h, m] : c.d) {
      if (!has(h) || !has(h + 1)) continue;
      auto& L = level(h);
      auto& N = level(h + 1);
      for (std::size_t s = 0; s < m.sources(); ++s)
        for (const auto& [t, e] : m.column(s)) {
          L.cols[s].emplace(t, e);
          N.rows[t].insert(s);
        }
    }
  }

  Complex run() {
    for (;;) {
      auto candidates = find_pivots();
      if (candidates.empty()) break;
      std::size_t done = 0;
      for (const auto& [cost, h, x, y] : candidates) {
        (void)cost;
        if (valid_pivot(h, x, y)) {
          eliminate(h, x, y);
          ++done;
        }
      }
      if (done == 0) break;
    }
    return assemble();
  }

 private:
  bool has(int h) const { return h >= lo_ && h < lo_ + static_cast<int>(levels_.size()); }
  Level& level(int h) { return levels_[h - lo_]; }

  // Returns the sign of the identity when the entry x -> y is +-e and the
  // summands agree; zero otherwise.
  Coeff unit_sign(int h, std::size_t x, std::size_t y) {
    auto& L = level(h);
    auto& N = level(h + 1);
    if (!L.alive[x] || !N.alive[y]) return 0;
    auto it = L.cols[x].find(y);
    if (it == L.cols[x].end()) return 0;
    const ProjSummand& a = L.terms[x];
    const ProjSummand& b = N.terms[y];
    if (a.matching != b.matching || a.qshift != b.qshift || a.fshift != b.fshift) return 0;
    const auto& terms = it->second.terms();
    if (terms.size() != 1 || terms[0].first != 0) return 0;
    const Coeff c = terms[0].second;
    return (c == 1 || c == -1) ? c : 0;
  }

  bool valid_pivot(int h, std::size_t x, std::size_t y) { return unit_sign(h, x, y) != 0; }

  std::vector<std::tuple<std::size_t, int, std::size_t, std::size_t>> find_pivots() {
    std::vector<std::tuple<std::size_t, int, std::size_t, std::size_t>> out;
    for (int h = lo_; has(h + 1); ++h) {
      auto& L = level(h);
      auto& N = level(h + 1);
      for (std::size_t x = 0; x < L.terms.size(); ++x) {
        if (!L.alive[x]) continue;
        for (const auto& [y, e] : L.cols[x]) {
          (void)e;
          if (!unit_sign(h, x, y)) continue;
          const std::size_t cost = (N.rows[y].size() - 1) * (L.cols[x].size() - 1);
          out.emplace_back(cost, h, x, y);
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  void eliminate(int h, std::size_t x, std::size_t y) {
    auto& L = level(h);
    auto& N = level(h + 1);
    const Coeff sign = unit_sign(h, x, y);
    // d' = d - gamma phi^{-1} beta for beta : s -> y and gamma : x -> t.
    const std::vector<std::size_t> sources(N.rows[y].begin(), N.rows[y].end());
    const std::vector<std::pair<std::size_t, ArcCombination>> gammas(L.cols[x].begin(),
                                                                      L.cols[x].end());
    for (std::size_t s : sources) {
      if (s == x) continue;
      const ArcCombination beta = L.cols[s].at(y);
      for (const auto& [t, gamma] : gammas) {
        if (t == y) continue;
        ArcCombination delta = alg_.multiply(gamma, beta) * (-sign);
        if (delta.is_zero()) continue;
        auto [it, fresh] = L.cols[s].try_emplace(t, delta);
        if (fresh) {
          N.rows[t].insert(s);
        } else {
          it->second += delta;
          if (it->second.is_zero()) {
            L.cols[s].erase(it);
            N.rows[t].erase(s);
          }
        }
      }
    }
    // Drop column x and row y of d_h.
    for (const auto& [t, e] : L.cols[x]) {
      (void)e;
      N.rows[t].erase(x);
    }
    L.cols[x].clear();
    for (std::size_t s : std::vector<std::size_t>(N.rows[y].begin(), N.rows[y].end()))
      L.cols[s].erase(y);
    N.rows[y].clear();
    // Drop entries into x from d_{h-1} and out of y along d_{h+1}.
    if (has(h - 1)) {
      auto& P = level(h - 1);
      for (std::size_t s : L.rows[x]) P.cols[s].erase(x);
      L.rows[x].clear();
    }
    if (has(h + 2)) {
      auto& M = level(h + 2);
      for (const auto& [t, e] : N.cols[y]) {
        (void)e;
        M.rows[t].erase(y);
      }
      N.cols[y].clear();
    }
    L.alive[x] = 0;
    N.alive[y] = 0;
  }

  Complex assemble() {
    Complex out;
    out.n = c_.n;
    std::vector<std::vector<std::size_t>> index(levels_.size());
    for (std::size_t k = 0; k < levels_.size(); ++k) {
      const auto& L = levels_[k];
      index[k].assign(L.terms.size(), SIZE_MAX);
      std::vector<ProjSummand> kept;
      for (std::size_t x = 0; x < L.terms.size(); ++x)
        if (L.alive[x]) {
          index[k][x] = kept.size();
          kept.push_back(L.terms[x]);
        }
      if (!kept.empty()) out.terms[lo_ + static_cast<int>(k)] = std::move(kept);
    }
    for (std::size_t k = 0; k + 1 < levels_.size(); ++k) {
      const int h = lo_ + static_cast<int>(k);
      ModuleMap m(out.at(h).size(), out.at(h + 1).size());
      const auto& L = levels_[k];
      for (std::size_t x = 0; x < L.terms.size(); ++x) {
        if (!L.alive[x]) continue;
        for (const auto& [t, e] : L.cols[x]) m.set(index[k][x], index[k + 1][t], e);
      }
      if (!m.is_zero()) out.d[h] = std::move(m);
    }
    return out;
  }

  const Complex& c_;
  const ArcAlgebra& alg_;
  int lo_ = 0;
  std::vector<Level> levels_;
};

}  // namespace

Complex reduce(const Complex& c) { return Reducer(c).run(); }

}  // namespace arckh::homalg
