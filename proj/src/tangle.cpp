#include "arckh/tangle.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "arckh/surgery.hpp"

namespace arckh::tangle {

namespace {

struct CapOf {
  MatchingId matching;
  bool closed;
};

struct CapProgram {
  surgery::Program program;
  std::vector<int> slot_to_circle;  // -1 for the closed circles
  int lower_closed = -1;            // slot of the circle closed off in the source
  int upper_closed = -1;            // slot of the circle closed off in the target
};

// Caches keyed by (n, i, ...). Entries are never erased, so references
// handed out stay valid.
std::mutex cache_mutex;
std::map<std::pair<int, int>, std::vector<MatchingId>> cup_cache;
std::map<std::pair<int, int>, std::vector<CapOf>> cap_cache;
std::map<std::tuple<int, int, MatchingId, MatchingId>, std::unique_ptr<CapProgram>> program_cache;

void check_position(int n_points, int i) {
  if (i < 1 || i > n_points - 1)
    throw std::invalid_argument("tangle: position " + std::to_string(i) + " out of range 1.." +
                                std::to_string(n_points - 1));
}

const std::vector<MatchingId>& cup_table(int n, int i) {
  std::lock_guard lock(cache_mutex);
  auto& table = cup_cache[{n, i}];
  if (table.empty()) {
    const auto& small = ArcAlgebra::get(n);
    const auto& big = ArcAlgebra::get(n + 1);
    for (const auto& m : small.matchings()) table.push_back(big.id(planar::cup_insert(i, m)));
  }
  return table;
}

const std::vector<CapOf>& cap_table(int n, int i) {
  std::lock_guard lock(cache_mutex);
  auto& table = cap_cache[{n, i}];
  if (table.empty()) {
    const auto& big = ArcAlgebra::get(n);
    const auto& small = ArcAlgebra::get(n - 1);
    for (const auto& m : big.matchings()) {
      auto r = planar::cap_apply(i, m);
      table.push_back({small.id(r.matching), r.closed_circles == 1});
    }
  }
  return table;
}

CapProgram build_cap_program(int n, int i, MatchingId a, MatchingId b) {
  const auto& big = ArcAlgebra::get(n);
  const auto& small = ArcAlgebra::get(n - 1);
  const int pts = 2 * n;
  auto low = [](int p) { return p - 1; };
  auto up = [pts](int p) { return pts + p - 1; };
  surgery::Builder builder(2 * pts);
  for (int p = 1; p <= pts; ++p) builder.connect(low(p), up(p));
  for (const auto& arc : big.matching(a).arcs()) builder.connect(low(arc.lo), low(arc.hi));
  for (const auto& arc : big.matching(b).arcs()) builder.connect(up(arc.lo), up(arc.hi));
  std::vector<int> reps;
  for (const auto& circle : big.circles(a, b).circles) reps.push_back(low(circle.front()));
  builder.seed(reps);
  builder.saddle(low(i), up(i), low(i + 1), up(i + 1));

  CapProgram cp;
  cp.program = builder.program();
  cp.slot_to_circle.assign(cp.program.slots, -1);
  const auto& caps = cap_table(n, i);
  const MatchingId a2 = caps[a].matching, b2 = caps[b].matching;
  if (caps[a].closed) cp.lower_closed = builder.slot_of(low(i));
  if (caps[b].closed) cp.upper_closed = builder.slot_of(up(i));
  const auto& out = small.circles(a2, b2);
  for (int k = 0; k < out.count(); ++k) {
    const int p = out.circles[k].front();
    const int slot = builder.slot_of(low(p < i ? p : p + 2));
    if (cp.slot_to_circle[slot] != -1 || slot == cp.lower_closed || slot == cp.upper_closed)
      throw std::logic_error("cap: circle identification failed");
    cp.slot_to_circle[slot] = k;
  }
  return cp;
}

const CapProgram& cap_program(int n, int i, MatchingId a, MatchingId b) {
  {
    std::lock_guard lock(cache_mutex);
    auto it = program_cache.find({n, i, a, b});
    if (it != program_cache.end()) return *it->second;
  }
  auto built = std::make_unique<CapProgram>(build_cap_program(n, i, a, b));
  std::lock_guard lock(cache_mutex);
  auto& slot = program_cache[{n, i, a, b}];
  if (!slot) slot = std::move(built);
  return *slot;
}

// First index of each summand's image under cap_i, per degree.
struct Layout {
  std::map<int, std::vector<std::size_t>> first;
  std::map<int, std::vector<char>> split;
};

Layout cap_layout(int i, const Complex& c) {
  const auto& caps = cap_table(c.n, i);
  Layout L;
  for (const auto& [h, terms] : c.terms) {
    auto& f = L.first[h];
    auto& s = L.split[h];
    std::size_t next = 0;
    for (const auto& t : terms) {
      f.push_back(next);
      s.push_back(caps[t.matching].closed);
      next += caps[t.matching].closed ? 2 : 1;
    }
  }
  return L;
}

}  // namespace

MatchingId cup_matching(int n, int i, MatchingId a) {
  check_position(2 * n + 2, i);
  return cup_table(n, i).at(a);
}

ArcCombination cup_element(int n, int i, const ArcCombination& b) {
  check_position(2 * n + 2, i);
  const auto& small = ArcAlgebra::get(n);
  const auto& big = ArcAlgebra::get(n + 1);
  const auto& table = cup_table(n, i);
  const MatchingId A = table.at(b.source()), B = table.at(b.target());
  const auto& old = small.circles(b.source(), b.target());
  const auto& now = big.circles(A, B);
  std::vector<int> moved(old.count());
  for (int k = 0; k < old.count(); ++k) {
    const int p = old.circles[k].front();
    moved[k] = now.circle_of[p >= i ? p + 2 : p];
  }
  std::vector<ArcCombination::Term> terms;
  for (auto [labels, c] : b.terms()) {
    arcalg::Labeling out = 0;
    for (int k = 0; k < old.count(); ++k)
      if ((labels >> k) & 1u) out |= arcalg::Labeling{1} << moved[k];
    terms.emplace_back(out, c);
  }
  return ArcCombination::from_terms(A, B, std::move(terms));
}

std::vector<CapComponent> cap_element(int n, int i, const ArcCombination& phi) {
  check_position(2 * n, i);
  if (n < 2) throw std::invalid_argument("cap: needs at least two arcs");
  std::vector<CapComponent> out;
  if (phi.is_zero()) return out;
  const auto& caps = cap_table(n, i);
  const MatchingId a2 = caps[phi.source()].matching, b2 = caps[phi.target()].matching;
  const CapProgram& cp = cap_program(n, i, phi.source(), phi.target());
  surgery::SlotTerms acc;
  for (auto [labels, c] : phi.terms()) surgery::run(cp.program, labels, c, acc);
  std::map<std::pair<int, int>, std::vector<ArcCombination::Term>> parts;
  for (auto [mask, c] : acc) {
    int from = 0, to = 0;
    // Pairing with a closed source circle reads off the dual label.
    if (cp.lower_closed >= 0) from = ((mask >> cp.lower_closed) & 1u) ? 0 : 1;
    if (cp.upper_closed >= 0) to = ((mask >> cp.upper_closed) & 1u) ? 1 : 0;
    arcalg::Labeling labels = 0;
    for (int s = 0; s < cp.program.slots; ++s)
      if (((mask >> s) & 1u) && cp.slot_to_circle[s] >= 0)
        labels |= arcalg::Labeling{1} << cp.slot_to_circle[s];
    parts[{from, to}].emplace_back(labels, c);
  }
  for (auto& [ft, terms] : parts) {
    auto value = ArcCombination::from_terms(a2, b2, std::move(terms));
    if (!value.is_zero()) out.push_back({ft.first, ft.second, std::move(value)});
  }
  return out;
}

Complex cup_functor(int i, const Complex& c) {
  check_position(2 * c.n + 2, i);
  const auto& table = cup_table(c.n, i);
  Complex out;
  out.n = c.n + 1;
  for (const auto& [h, terms] : c.terms) {
    auto& t = out.terms[h];
    for (auto s : terms) {
      s.matching = table.at(s.matching);
      t.push_back(s);
    }
  }
  for (const auto& [h, m] : c.d) {
    ModuleMap mm(m.sources(), m.targets());
    for (std::size_t s = 0; s < m.sources(); ++s)
      for (const auto& [t, e] : m.column(s)) mm.set(s, t, cup_element(c.n, i, e));
    out.d[h] = std::move(mm);
  }
  return out;
}

Complex cap_functor(int i, const Complex& c) {
  check_position(2 * c.n, i);
  if (c.n < 2) throw std::invalid_argument("cap: needs at least two arcs");
  const auto& caps = cap_table(c.n, i);
  const Layout L = cap_layout(i, c);
  Complex out;
  out.n = c.n - 1;
  for (const auto& [h, terms] : c.terms) {
    auto& t = out.terms[h];
    for (const auto& s : terms) {
      const auto& cap = caps[s.matching];
      if (cap.closed) {
        t.push_back({cap.matching, s.qshift + 1, s.fshift - 1});
        t.push_back({cap.matching, s.qshift - 1, s.fshift + 1});
      } else {
        t.push_back({cap.matching, s.qshift, s.fshift});
      }
    }
  }
  for (const auto& [h, m] : c.d) {
    ModuleMap mm(out.at(h).size(), out.at(h + 1).size());
    const auto& fs = L.first.at(h);
    const auto& ft = L.first.at(h + 1);
    for (std::size_t s = 0; s < m.sources(); ++s)
      for (const auto& [t, e] : m.column(s))
        for (const auto& comp : cap_element(c.n, i, e))
          mm.add(fs[s] + comp.from, ft[t] + comp.to, comp.value);
    if (!mm.is_zero()) out.d[h] = std::move(mm);
  }
  return out;
}

Complex cup_cap(int i, const Complex& c) { return cup_functor(i, cap_functor(i, c)); }

namespace {

enum class Direction { Unit, Counit };

ChainMap adjunction_map(int i, const Complex& c, Direction dir) {
  check_position(2 * c.n, i);
  const auto& alg = c.algebra();
  const auto& caps = cap_table(c.n, i);
  const auto& cups = cup_table(c.n - 1, i);
  const Layout L = cap_layout(i, c);
  ChainMap f;
  for (const auto& [h, terms] : c.terms) {
    std::size_t phi_size = 0;
    for (const auto& t : terms) phi_size += caps[t.matching].closed ? 2 : 1;
    ModuleMap m = dir == Direction::Unit ? ModuleMap(terms.size(), phi_size)
                                         : ModuleMap(phi_size, terms.size());
    const auto& first = L.first.at(h);
    for (std::size_t k = 0; k < terms.size(); ++k) {
      const MatchingId a = terms[k].matching;
      const std::size_t j = first[k];
      if (!caps[a].closed) {
        // The saddle at (i, i+1) between a and cup_i cap_i a.
        const MatchingId b = cups[caps[a].matching];
        if (dir == Direction::Unit)
          m.set(k, j, ArcCombination(alg.min_generator(a, b)));
        else
          m.set(j, k, ArcCombination(alg.min_generator(b, a)));
        continue;
      }
      const ArcCombination e = alg.idempotent(a);
      const ArcCombination v = alg.center_action(i, e);
      if (dir == Direction::Unit) {
        m.set(k, j, v);
        m.set(k, j + 1, e);
      } else {
        m.set(j, k, e);
        m.set(j + 1, k, v);
      }
    }
    f.components[h] = std::move(m);
  }
  return f;
}

}  // namespace

ChainMap unit_map(int i, const Complex& c) { return adjunction_map(i, c, Direction::Unit); }

ChainMap counit_map(int i, const Complex& c) { return adjunction_map(i, c, Direction::Counit); }

Complex twist(int i, int sign, const Complex& c) {
  check_position(2 * c.n, i);
  const Complex phi = cup_cap(i, c);
  if (sign == -1) {
    const Complex source = homalg::shift(c, 0, 1, 0);
    const Complex target = homalg::shift(phi, 0, 2, -1);
    return homalg::shift(homalg::cone(source, target, unit_map(i, c)), 1);
  }
  if (sign == 1) {
    const Complex source = homalg::shift(phi, 0, -2, 1);
    const Complex target = homalg::shift(c, 0, -1, 0);
    return homalg::cone(source, target, counit_map(i, c));
  }
  throw std::invalid_argument("twist: sign must be +1 or -1");
}

}  // namespace arckh::tangle
