#pragma once

// Khovanov's arc algebra H_n over Z.
//
// The block for a pair of matchings (a, b) is V^{c(a,b)} on the circles of
// circles(a, b); it stands for Hom(P_a, P_b). Basis elements are {1,x}
// labelings of those circles. The product of block (b,c) with block (a,b)
// lands in block (a,c) and is computed by contracting the arcs of b one
// saddle at a time, in order of increasing left endpoint.

#include <atomic>
#include <compare>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "arckh/planar.hpp"
#include "arckh/surgery.hpp"
#include "arckh/tqft.hpp"

namespace arckh::arcalg {

using planar::Matching;
using tqft::Labeling;
using Coeff = std::int64_t;
using MatchingId = int;

struct ArcElement {
  MatchingId source = 0;
  MatchingId target = 0;
  Labeling labels = 0;
  auto operator<=>(const ArcElement&) const = default;
};

/// Finite Z-combination of basis elements of a single block. Terms are kept
/// sorted by labeling, with no zero coefficients.
class ArcCombination {
 public:
  using Term = std::pair<Labeling, Coeff>;

  ArcCombination() = default;
  ArcCombination(MatchingId source, MatchingId target) : source_(source), target_(target) {}
  explicit ArcCombination(const ArcElement& e, Coeff c = 1);

  MatchingId source() const { return source_; }
  MatchingId target() const { return target_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Coeff coefficient(Labeling labels) const;

  void add(Labeling labels, Coeff c);
  ArcCombination& operator+=(const ArcCombination& other);
  ArcCombination& operator-=(const ArcCombination& other);
  ArcCombination operator*(Coeff c) const;
  ArcCombination operator-() const { return *this * -1; }

  bool operator==(const ArcCombination& other) const = default;

  /// Builds from unsorted terms, summing duplicates.
  static ArcCombination from_terms(MatchingId source, MatchingId target, std::vector<Term> terms);

 private:
  MatchingId source_ = 0;
  MatchingId target_ = 0;
  std::vector<Term> terms_;
};

class ArcAlgebra {
 public:
  /// Shared instance for n pairs (2n points). Built once, immutable after.
  static const ArcAlgebra& get(int n);

  explicit ArcAlgebra(int n);
  ArcAlgebra(const ArcAlgebra&) = delete;
  ArcAlgebra& operator=(const ArcAlgebra&) = delete;
  ~ArcAlgebra();

  int n() const { return n_; }
  int size() const { return static_cast<int>(matchings_.size()); }
  const std::vector<Matching>& matchings() const { return matchings_; }
  const Matching& matching(MatchingId id) const { return matchings_.at(id); }
  MatchingId id(const Matching& m) const;

  const planar::CircleDiagram& circles(MatchingId a, MatchingId b) const {
    return circles_[static_cast<std::size_t>(a) * size() + b];
  }
  int circle_count(MatchingId a, MatchingId b) const { return circles(a, b).count(); }

  /// Quantum degree c - 2p of a basis element.
  int qdeg(const ArcElement& e) const;
  /// Cohomological degree (n - c) + 2p of a basis element.
  int sdeg(const ArcElement& e) const { return n_ - qdeg(e); }

  std::size_t block_dimension(MatchingId a, MatchingId b) const {
    return std::size_t{1} << circle_count(a, b);
  }
  std::size_t dimension() const;
  std::vector<ArcElement> basis(MatchingId a, MatchingId b) const;

  ArcCombination idempotent(MatchingId a) const;
  /// The all-1 labeling: the minimal-degree generator of the block.
  ArcElement min_generator(MatchingId a, MatchingId b) const { return {a, b, 0}; }

  /// later * earlier, with earlier in block (a,b) and later in (b,c).
  /// Blocks whose middle matchings differ multiply to zero.
  ArcCombination multiply(const ArcCombination& later, const ArcCombination& earlier) const;
  ArcCombination multiply(const ArcElement& later, const ArcElement& earlier) const;

  /// Multiplies the label of the circle through `point` by x.
  ArcCombination center_action(int point, const ArcCombination& a) const;

  /// Coefficient of the all-x labeling; rejects off-diagonal blocks.
  Coeff trace(const ArcCombination& a) const;

 private:
  struct Product {
    surgery::Program program;
    int earlier_circles = 0;
    std::vector<int> slot_to_circle;  // -1 for slots gone by the end
  };

  const Product& product(MatchingId a, MatchingId b, MatchingId c) const;
  Product build_product(MatchingId a, MatchingId b, MatchingId c) const;

  int n_;
  std::vector<Matching> matchings_;
  std::vector<planar::CircleDiagram> circles_;

  std::unique_ptr<std::atomic<const Product*>[]> products_;
  mutable std::mutex build_mutex_;
};

}  // namespace arckh::arcalg
