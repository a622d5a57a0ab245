#pragma once

// Crossingless matchings of 2n points on a line and the planar operations
// on them: circle diagrams, codimension, interpolation, cup/cap surgery.
// Points are numbered 1..2n throughout.

#include <compare>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace arckh::planar {

struct Arc {
  int lo = 0;
  int hi = 0;
  auto operator<=>(const Arc&) const = default;
};

class Matching {
 public:
  Matching() = default;

  /// Builds a matching from unordered point pairs. Throws std::invalid_argument
  /// unless the pairs form a non-crossing perfect matching of 1..2n.
  static Matching from_pairs(const std::vector<std::pair<int, int>>& pairs);

  /// Parses "(1 2)(3 4)"; commas are accepted as separators too.
  static Matching parse(std::string_view text);

  int pairs() const { return static_cast<int>(arcs_.size()); }
  int points() const { return 2 * pairs(); }
  int partner(int point) const { return partner_.at(point); }
  const std::vector<Arc>& arcs() const { return arcs_; }
  bool contains(Arc arc) const;

  std::string to_string() const;

  bool operator==(const Matching& other) const { return arcs_ == other.arcs_; }
  auto operator<=>(const Matching& other) const { return arcs_ <=> other.arcs_; }

 private:
  std::vector<Arc> arcs_;     // sorted by left endpoint
  std::vector<int> partner_;  // partner_[p] for p in 1..2n; index 0 unused
};

/// All non-crossing matchings with n pairs in lexicographic order of their
/// sorted arc lists. There are Catalan(n) of them.
std::vector<Matching> enumerate_matchings(int n);

Matching plait(int n);      // (1 2)(3 4)...(2n-1 2n)
Matching mixed(int n);      // (1 2n)(2 3)(4 5)...(2n-2 2n-1)
Matching horseshoe(int n);  // (i 2n+1-i)

/// Components of the planar unlink formed by `lower` and the reflection of
/// `upper`. Each circle lists its points in traversal order, starting at its
/// smallest point and leaving along the lower arc. Circles are ordered by
/// their smallest point.
struct CircleDiagram {
  std::vector<std::vector<int>> circles;
  std::vector<int> circle_of;  // circle_of[p], index 0 unused

  int count() const { return static_cast<int>(circles.size()); }
};

CircleDiagram circles(const Matching& lower, const Matching& upper);

/// n - c(a, b).
int codim(const Matching& a, const Matching& b);

/// Shortest sequence from `from` to `to` in which consecutive matchings meet
/// in codimension one. Each step adds the arc of `to` with the smallest left
/// endpoint whose two-arc resurgery stays non-crossing.
std::vector<Matching> interpolate(const Matching& from, const Matching& to);

/// Inserts two new points at positions i, i+1 joined by an arc.
/// Requires 1 <= i <= 2n+1 where n = w.pairs().
Matching cup_insert(int i, const Matching& w);

struct CapResult {
  Matching matching;
  int closed_circles = 0;
};

/// Joins points i and i+1 from above and removes them.
CapResult cap_apply(int i, const Matching& w);

struct OrientedArc {
  Arc arc;
  int depth = 0;
  bool clockwise = true;
  int head = 0;  // the even endpoint
};

std::vector<OrientedArc> depth_orientation(const Matching& w);

}  // namespace arckh::planar
