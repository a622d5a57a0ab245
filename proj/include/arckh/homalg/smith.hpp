#pragma once

// Exact linear algebra over Z, Q and F_p on sparse integer matrices.

#include <cstdint>
#include <utility>
#include <vector>

namespace arckh::homalg {

/// Column-major sparse integer matrix. Each column lists (row, value) pairs
/// with distinct rows and nonzero values.
struct SparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> columns;

  SparseMatrix() = default;
  SparseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), columns(c) {}

  /// Accumulates into (row, col); drops entries that cancel to zero.
  void add(std::size_t row, std::size_t col, std::int64_t value);
  std::size_t nonzeros() const;
  bool is_zero() const { return nonzeros() == 0; }
};

/// this * other, exact; throws std::overflow_error past 64 bits.
SparseMatrix multiply(const SparseMatrix& left, const SparseMatrix& right);

struct SmithResult {
  std::size_t rank = 0;
  /// Elementary divisors: the prime-power factors of the diagonal entries
  /// greater than one, sorted ascending.
  std::vector<std::int64_t> elementary_divisors;
};

/// Rank and elementary divisors over Z. Eliminates unit pivots sparsely,
/// then diagonalizes what remains densely with GMP integers.
SmithResult smith(const SparseMatrix& m);

/// Rank over Q by sparse fraction elimination.
std::size_t rank_rational(const SparseMatrix& m);

/// Rank over F_p, p prime.
std::size_t rank_mod_p(const SparseMatrix& m, std::uint32_t p);

/// Prime-power factors of a positive integer, ascending.
std::vector<std::int64_t> prime_power_factors(std::int64_t value);

}  // namespace arckh::homalg
