#include "arckh/arcalg.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace arckh::arcalg {

ArcCombination::ArcCombination(const ArcElement& e, Coeff c)
    : source_(e.source), target_(e.target) {
  if (c != 0) terms_.emplace_back(e.labels, c);
}

Coeff ArcCombination::coefficient(Labeling labels) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), labels,
                             [](const Term& t, Labeling l) { return t.first < l; });
  return (it != terms_.end() && it->first == labels) ? it->second : 0;
}

void ArcCombination::add(Labeling labels, Coeff c) {
  if (c == 0) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), labels,
                             [](const Term& t, Labeling l) { return t.first < l; });
  if (it != terms_.end() && it->first == labels) {
    if (__builtin_add_overflow(it->second, c, &it->second))
      throw std::overflow_error("arc algebra coefficient overflow");
    if (it->second == 0) terms_.erase(it);
  } else {
    terms_.insert(it, {labels, c});
  }
}

ArcCombination& ArcCombination::operator+=(const ArcCombination& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) {
    source_ = other.source_;
    target_ = other.target_;
  } else if (source_ != other.source_ || target_ != other.target_) {
    throw std::invalid_argument("ArcCombination: adding elements of different blocks");
  }
  for (auto [l, c] : other.terms_) add(l, c);
  return *this;
}

ArcCombination& ArcCombination::operator-=(const ArcCombination& other) {
  return *this += -other;
}

ArcCombination ArcCombination::operator*(Coeff c) const {
  ArcCombination r(source_, target_);
  if (c == 0) return r;
  r.terms_ = terms_;
  for (auto& t : r.terms_)
    if (__builtin_mul_overflow(t.second, c, &t.second))
      throw std::overflow_error("arc algebra coefficient overflow");
  return r;
}

ArcCombination ArcCombination::from_terms(MatchingId source, MatchingId target,
                                          std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end());
  ArcCombination r(source, target);
  for (std::size_t i = 0; i < terms.size();) {
    Labeling l = terms[i].first;
    Coeff c = 0;
    for (; i < terms.size() && terms[i].first == l; ++i) c += terms[i].second;
    if (c != 0) r.terms_.emplace_back(l, c);
  }
  return r;
}

const ArcAlgebra& ArcAlgebra::get(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<ArcAlgebra>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<ArcAlgebra>(n);
  return *slot;
}

ArcAlgebra::ArcAlgebra(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("ArcAlgebra: n must be >= 1");
  if (n > 10) throw std::invalid_argument("ArcAlgebra: n too large");
  matchings_ = planar::enumerate_matchings(n);
  const std::size_t N = matchings_.size();
  circles_.reserve(N * N);
  for (const auto& a : matchings_)
    for (const auto& b : matchings_) circles_.push_back(planar::circles(a, b));
  products_ = std::make_unique<std::atomic<const Product*>[]>(N * N * N);
  for (std::size_t k = 0; k < N * N * N; ++k) products_[k].store(nullptr);
}

ArcAlgebra::~ArcAlgebra() {
  const std::size_t N = matchings_.size();
  for (std::size_t k = 0; k < N * N * N; ++k) delete products_[k].load();
}

MatchingId ArcAlgebra::id(const Matching& m) const {
  auto it = std::lower_bound(matchings_.begin(), matchings_.end(), m);
  if (it == matchings_.end() || !(*it == m))
    throw std::invalid_argument("ArcAlgebra: matching " + m.to_string() + " not in H_" +
                                std::to_string(n_));
  return static_cast<MatchingId>(it - matchings_.begin());
}

int ArcAlgebra::qdeg(const ArcElement& e) const {
  return tqft::qdeg(e.labels, circle_count(e.source, e.target));
}

std::size_t ArcAlgebra::dimension() const {
  std::size_t total = 0;
  for (int a = 0; a < size(); ++a)
    for (int b = 0; b < size(); ++b) total += block_dimension(a, b);
  return total;
}

std::vector<ArcElement> ArcAlgebra::basis(MatchingId a, MatchingId b) const {
  std::vector<ArcElement> out;
  const Labeling count = static_cast<Labeling>(block_dimension(a, b));
  for (Labeling l = 0; l < count; ++l) out.push_back({a, b, l});
  return out;
}

ArcCombination ArcAlgebra::idempotent(MatchingId a) const {
  return ArcCombination(min_generator(a, a));
}

ArcAlgebra::Product ArcAlgebra::build_product(MatchingId a, MatchingId b, MatchingId c) const {
  const Matching& ma = matching(a);
  const Matching& mb = matching(b);
  const Matching& mc = matching(c);
  const int pts = 2 * n_;
  // Level 0 carries circles(a,b), level 1 carries circles(b,c).
  auto low = [](int p) { return p - 1; };
  auto high = [pts](int p) { return pts + p - 1; };
  surgery::Builder builder(2 * pts);
  for (const auto& arc : ma.arcs()) builder.connect(low(arc.lo), low(arc.hi));
  for (const auto& arc : mb.arcs()) {
    builder.connect(low(arc.lo), low(arc.hi));
    builder.connect(high(arc.lo), high(arc.hi));
  }
  for (const auto& arc : mc.arcs()) builder.connect(high(arc.lo), high(arc.hi));
  std::vector<int> reps;
  for (const auto& circle : circles(a, b).circles) reps.push_back(low(circle.front()));
  for (const auto& circle : circles(b, c).circles) reps.push_back(high(circle.front()));
  builder.seed(reps);
  for (const auto& arc : mb.arcs())
    builder.saddle(low(arc.lo), low(arc.hi), high(arc.lo), high(arc.hi));

  Product p;
  p.program = builder.program();
  p.earlier_circles = circle_count(a, b);
  p.slot_to_circle.assign(p.program.slots, -1);
  const auto& out = circles(a, c);
  for (int k = 0; k < out.count(); ++k) {
    const int slot = builder.slot_of(low(out.circles[k].front()));
    if (p.slot_to_circle[slot] != -1) throw std::logic_error("arc product: slot reused");
    p.slot_to_circle[slot] = k;
  }
  return p;
}

const ArcAlgebra::Product& ArcAlgebra::product(MatchingId a, MatchingId b, MatchingId c) const {
  const std::size_t N = matchings_.size();
  auto& cell = products_[(static_cast<std::size_t>(a) * N + b) * N + c];
  if (const Product* p = cell.load(std::memory_order_acquire)) return *p;
  std::lock_guard lock(build_mutex_);
  if (const Product* p = cell.load(std::memory_order_acquire)) return *p;
  auto* built = new Product(build_product(a, b, c));
  cell.store(built, std::memory_order_release);
  return *built;
}

ArcCombination ArcAlgebra::multiply(const ArcCombination& later,
                                    const ArcCombination& earlier) const {
  ArcCombination result(earlier.source(), later.target());
  if (later.is_zero() || earlier.is_zero() || earlier.target() != later.source()) return result;
  const Product& p = product(earlier.source(), earlier.target(), later.target());
  surgery::SlotTerms acc;
  for (auto [le, ce] : earlier.terms())
    for (auto [ll, cl] : later.terms()) {
      Coeff c;
      if (__builtin_mul_overflow(ce, cl, &c))
        throw std::overflow_error("arc algebra coefficient overflow");
      const std::uint64_t mask =
          std::uint64_t{le} | (std::uint64_t{ll} << p.earlier_circles);
      surgery::run(p.program, mask, c, acc);
    }
  std::vector<ArcCombination::Term> terms;
  terms.reserve(acc.size());
  for (auto [m, c] : acc) {
    Labeling out = 0;
    for (int s = 0; s < p.program.slots; ++s)
      if ((m >> s) & 1u) {
        if (p.slot_to_circle[s] < 0) throw std::logic_error("arc product: stray slot");
        out |= Labeling{1} << p.slot_to_circle[s];
      }
    terms.emplace_back(out, c);
  }
  return ArcCombination::from_terms(result.source(), result.target(), std::move(terms));
}

ArcCombination ArcAlgebra::multiply(const ArcElement& later, const ArcElement& earlier) const {
  return multiply(ArcCombination(later), ArcCombination(earlier));
}

ArcCombination ArcAlgebra::center_action(int point, const ArcCombination& a) const {
  ArcCombination r(a.source(), a.target());
  if (a.is_zero()) return r;
  const int circle = circles(a.source(), a.target()).circle_of.at(point);
  const Labeling bit = Labeling{1} << circle;
  for (auto [l, c] : a.terms())
    if (!(l & bit)) r.add(l | bit, c);
  return r;
}

Coeff ArcAlgebra::trace(const ArcCombination& a) const {
  if (a.source() != a.target())
    throw std::invalid_argument("trace: element is not in a diagonal block");
  const Labeling top = static_cast<Labeling>(block_dimension(a.source(), a.source()) - 1);
  return a.coefficient(top);
}

}  // namespace arckh::arcalg
