#include "arckh/homalg/smith.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

namespace arckh::homalg {

void SparseMatrix::add(std::size_t row, std::size_t col, std::int64_t value) {
  if (value == 0) return;
  if (row >= rows || col >= cols) throw std::out_of_range("SparseMatrix::add");
  auto& column = columns[col];
  auto it = std::lower_bound(column.begin(), column.end(), row,
                             [](const auto& e, std::size_t r) { return e.first < r; });
  if (it != column.end() && it->first == row) {
    if (__builtin_add_overflow(it->second, value, &it->second))
      throw std::overflow_error("SparseMatrix: entry overflow");
    if (it->second == 0) column.erase(it);
  } else {
    column.insert(it, {row, value});
  }
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t total = 0;
  for (const auto& c : columns) total += c.size();
  return total;
}

SparseMatrix multiply(const SparseMatrix& left, const SparseMatrix& right) {
  if (left.cols != right.rows) throw std::invalid_argument("multiply: shape mismatch");
  SparseMatrix out(left.rows, right.cols);
  for (std::size_t j = 0; j < right.cols; ++j) {
    std::map<std::size_t, std::int64_t> acc;
    for (auto [k, b] : right.columns[j])
      for (auto [i, a] : left.columns[k]) {
        std::int64_t p;
        if (__builtin_mul_overflow(a, b, &p) || __builtin_add_overflow(acc[i], p, &acc[i]))
          throw std::overflow_error("multiply: entry overflow");
      }
    for (auto [i, v] : acc)
      if (v != 0) out.columns[j].emplace_back(i, v);
  }
  return out;
}

namespace {

struct Overflow {};

// Sparse Gaussian elimination with Markowitz-style pivot choice. The policy
// decides which entries may serve as pivots and how to form multipliers.
template <class T, class Policy>
class Eliminator {
 public:
  Eliminator(const SparseMatrix& m, Policy policy)
      : policy_(policy), rows_(m.rows), cols_(m.cols) {
    for (std::size_t c = 0; c < m.cols; ++c)
      for (auto [r, v] : m.columns[c]) {
        T value = policy_.from(v);
        if (policy_.is_zero(value)) continue;
        rows_[r].emplace(c, value);
        cols_[c].insert(r);
      }
    for (std::size_t c = 0; c < m.cols; ++c)
      if (!cols_[c].empty()) queue_.insert({cols_[c].size(), c});
  }

  /// Eliminates until no admissible pivot remains; returns pivots used.
  std::size_t run() {
    std::size_t pivots = 0;
    while (!queue_.empty()) {
      auto [count, c] = *queue_.begin();
      queue_.erase(queue_.begin());
      std::size_t best = SIZE_MAX, best_len = SIZE_MAX;
      for (std::size_t r : cols_[c]) {
        if (!policy_.admissible(rows_[r].at(c))) continue;
        if (rows_[r].size() < best_len) {
          best = r;
          best_len = rows_[r].size();
        }
      }
      // Not pivotable now; requeued if a later pivot changes it.
      if (best == SIZE_MAX) continue;
      pivot(best, c);
      ++pivots;
    }
    return pivots;
  }

  /// Remaining nonzero entries as (row, col, value).
  template <class F>
  void for_each_remaining(F&& f) const {
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (const auto& [c, v] : rows_[r]) f(r, c, v);
  }

 private:
  void requeue(std::size_t c, std::size_t old_count) {
    queue_.erase({old_count, c});
    if (!cols_[c].empty()) queue_.insert({cols_[c].size(), c});
  }

  void pivot(std::size_t r, std::size_t c) {
    const T p = rows_[r].at(c);
    const auto prow = rows_[r];
    std::vector<std::size_t> targets(cols_[c].begin(), cols_[c].end());
    for (std::size_t r2 : targets) {
      if (r2 == r) continue;
      const T factor = policy_.factor(rows_[r2].at(c), p);
      auto& row = rows_[r2];
      for (const auto& [c2, v] : prow) {
        auto it = row.find(c2);
        const std::size_t old = cols_[c2].size();
        if (it == row.end()) {
          T nv = policy_.neg_mul(factor, v);
          if (policy_.is_zero(nv)) continue;
          row.emplace(c2, nv);
          cols_[c2].insert(r2);
        } else {
          policy_.sub_mul(it->second, factor, v);
          if (!policy_.is_zero(it->second)) continue;
          row.erase(it);
          cols_[c2].erase(r2);
        }
        if (c2 != c) requeue(c2, old);
      }
    }
    for (const auto& [c2, v] : prow) {
      (void)v;
      const std::size_t old = cols_[c2].size();
      cols_[c2].erase(r);
      if (c2 != c) requeue(c2, old);
    }
    rows_[r].clear();
    queue_.erase({cols_[c].size(), c});
  }

  Policy policy_;
  std::vector<std::map<std::size_t, T>> rows_;
  std::vector<std::set<std::size_t>> cols_;
  std::set<std::pair<std::size_t, std::size_t>> queue_;
};

struct UnitPolicy {
  std::int64_t from(std::int64_t v) const { return v; }
  bool is_zero(std::int64_t v) const { return v == 0; }
  bool admissible(std::int64_t v) const { return v == 1 || v == -1; }
  std::int64_t factor(std::int64_t a, std::int64_t p) const { return a * p; }
  std::int64_t neg_mul(std::int64_t f, std::int64_t v) const {
    std::int64_t r;
    if (__builtin_mul_overflow(f, v, &r) || r == INT64_MIN) throw Overflow{};
    return -r;
  }
  void sub_mul(std::int64_t& x, std::int64_t f, std::int64_t v) const {
    std::int64_t r;
    if (__builtin_mul_overflow(f, v, &r) || __builtin_sub_overflow(x, r, &x)) throw Overflow{};
  }
};

struct RationalPolicy {
  mpq_class from(std::int64_t v) const { return mpq_class(mpz_class(static_cast<long>(v))); }
  bool is_zero(const mpq_class& v) const { return sgn(v) == 0; }
  bool admissible(const mpq_class&) const { return true; }
  mpq_class factor(const mpq_class& a, const mpq_class& p) const { return a / p; }
  mpq_class neg_mul(const mpq_class& f, const mpq_class& v) const { return -(f * v); }
  void sub_mul(mpq_class& x, const mpq_class& f, const mpq_class& v) const { x -= f * v; }
};

struct ModPolicy {
  std::uint64_t p;
  std::uint64_t inverse(std::uint64_t a) const {
    std::uint64_t result = 1, base = a % p, e = p - 2;
    while (e) {
      if (e & 1) result = result * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return result;
  }
  std::uint64_t from(std::int64_t v) const {
    const std::int64_t m = v % static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(m < 0 ? m + static_cast<std::int64_t>(p) : m);
  }
  bool is_zero(std::uint64_t v) const { return v == 0; }
  bool admissible(std::uint64_t) const { return true; }
  std::uint64_t factor(std::uint64_t a, std::uint64_t piv) const { return a * inverse(piv) % p; }
  std::uint64_t neg_mul(std::uint64_t f, std::uint64_t v) const { return (p - f * v % p) % p; }
  void sub_mul(std::uint64_t& x, std::uint64_t f, std::uint64_t v) const {
    x = (x + p - f * v % p) % p;
  }
};

using DenseZ = std::vector<std::vector<mpz_class>>;

int cmpabs_z(const mpz_class& a, const mpz_class& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

// Diagonalizes in place by row and column operations and returns the
// nonzero diagonal entries (absolute values).
std::vector<mpz_class> diagonalize(DenseZ& a) {
  const std::size_t R = a.size();
  const std::size_t C = R ? a[0].size() : 0;
  std::vector<mpz_class> diag;
  auto swap_cols = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (auto& row : a) std::swap(row[x], row[y]);
  };
  for (std::size_t t = 0; t < std::min(R, C); ++t) {
    // Smallest nonzero entry of the remaining block goes to (t,t).
    std::size_t bi = R, bj = C;
    for (std::size_t i = t; i < R; ++i)
      for (std::size_t j = t; j < C; ++j)
        if (sgn(a[i][j]) != 0 && (bi == R || cmpabs_z(a[i][j], a[bi][bj]) < 0)) {
          bi = i;
          bj = j;
        }
    if (bi == R) break;
    std::swap(a[t], a[bi]);
    swap_cols(t, bj);
    for (;;) {
      bool clean = true;
      mpz_class q;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (sgn(a[i][t]) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t j = t; j < C; ++j)
          if (sgn(a[t][j]) != 0) a[i][j] -= q * a[t][j];
        if (sgn(a[i][t]) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (sgn(a[t][j]) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t i = t; i < R; ++i)
          if (sgn(a[i][t]) != 0) a[i][j] -= q * a[i][t];
        if (sgn(a[t][j]) != 0) clean = false;
      }
      if (clean) break;
      // Move the smallest remainder in row t / column t to the pivot.
      std::size_t bi2 = t, bj2 = t;
      for (std::size_t i = t + 1; i < R; ++i)
        if (sgn(a[i][t]) != 0 && cmpabs_z(a[i][t], a[bi2][bj2]) < 0) {
          bi2 = i;
          bj2 = t;
        }
      for (std::size_t j = t + 1; j < C; ++j)
        if (sgn(a[t][j]) != 0 && cmpabs_z(a[t][j], a[bi2][bj2]) < 0) {
          bi2 = t;
          bj2 = j;
        }
      std::swap(a[t], a[bi2]);
      swap_cols(t, bj2);
    }
    diag.push_back(abs(a[t][t]));
  }
  return diag;
}

SmithResult finish(std::size_t unit_rank, DenseZ dense) {
  SmithResult result;
  result.rank = unit_rank;
  for (const auto& d : diagonalize(dense)) {
    ++result.rank;
    if (d == 1) continue;
    if (!d.fits_slong_p()) throw std::overflow_error("smith: torsion coefficient too large");
    for (auto f : prime_power_factors(d.get_si())) result.elementary_divisors.push_back(f);
  }
  std::sort(result.elementary_divisors.begin(), result.elementary_divisors.end());
  return result;
}

// Packs the given entries into a dense matrix over their occupied rows and columns.
template <class Entries>
DenseZ compress(const Entries& entries) {
  std::map<std::size_t, std::size_t> ri, ci;
  for (const auto& [r, c, v] : entries) {
    ri.emplace(r, 0);
    ci.emplace(c, 0);
  }
  std::size_t k = 0;
  for (auto& [r, idx] : ri) idx = k++;
  k = 0;
  for (auto& [c, idx] : ci) idx = k++;
  DenseZ dense(ri.size(), std::vector<mpz_class>(ci.size()));
  for (const auto& [r, c, v] : entries) dense[ri[r]][ci[c]] = v;
  return dense;
}

}  // namespace

std::vector<std::int64_t> prime_power_factors(std::int64_t value) {
  if (value < 1) throw std::invalid_argument("prime_power_factors: nonpositive input");
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p <= value / p; ++p) {
    if (value % p) continue;
    std::int64_t q = 1;
    while (value % p == 0) {
      value /= p;
      q *= p;
    }
    out.push_back(q);
  }
  if (value > 1) out.push_back(value);
  std::sort(out.begin(), out.end());
  return out;
}

SmithResult smith(const SparseMatrix& m) {
  try {
    Eliminator<std::int64_t, UnitPolicy> elim(m, UnitPolicy{});
    const std::size_t pivots = elim.run();
    std::vector<std::tuple<std::size_t, std::size_t, mpz_class>> rest;
    elim.for_each_remaining([&](std::size_t r, std::size_t c, std::int64_t v) {
      rest.emplace_back(r, c, mpz_class(static_cast<long>(v)));
    });
    return finish(pivots, compress(rest));
  } catch (const Overflow&) {
    std::vector<std::tuple<std::size_t, std::size_t, mpz_class>> all;
    for (std::size_t c = 0; c < m.cols; ++c)
      for (auto [r, v] : m.columns[c]) all.emplace_back(r, c, mpz_class(static_cast<long>(v)));
    return finish(0, compress(all));
  }
}

std::size_t rank_rational(const SparseMatrix& m) {
  Eliminator<mpq_class, RationalPolicy> elim(m, RationalPolicy{});
  return elim.run();
}

std::size_t rank_mod_p(const SparseMatrix& m, std::uint32_t p) {
  if (p < 2) throw std::invalid_argument("rank_mod_p: modulus must be prime");
  Eliminator<std::uint64_t, ModPolicy> elim(m, ModPolicy{p});
  return elim.run();
}

}  // namespace arckh::homalg
