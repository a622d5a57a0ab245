#pragma once

// Finitely generated abelian groups indexed by one or two integer gradings.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace arckh::homalg {

struct Coefficients {
  enum class Kind { Integer, Rational, Prime };
  Kind kind = Kind::Integer;
  std::uint32_t prime = 0;

  static Coefficients integers() { return {}; }
  static Coefficients rationals() { return {Kind::Rational, 0}; }
  static Coefficients mod(std::uint32_t p);

  /// Accepts "Z", "Q" or "F<p>" (for example "F2"); throws std::invalid_argument.
  static Coefficients parse(std::string_view text);
  std::string name() const;
  bool is_field() const { return kind != Kind::Integer; }

  bool operator==(const Coefficients&) const = default;
};

/// Z^rank plus cyclic torsion given by elementary divisors (prime powers).
struct Group {
  std::size_t rank = 0;
  std::vector<std::int64_t> torsion;

  bool is_zero() const { return rank == 0 && torsion.empty(); }
  bool operator==(const Group&) const = default;
  std::string to_string() const;
};

class BigradedGroup {
 public:
  using Key = std::pair<int, int>;  // (i, j)

  void set(int i, int j, Group g);
  const Group& at(int i, int j) const;
  const std::map<Key, Group>& entries() const { return entries_; }
  std::size_t total_rank() const;
  bool empty() const { return entries_.empty(); }

  /// Ranks only, torsion dropped: the comparison shape over a field.
  BigradedGroup ranks_only() const;
  /// (i, j) -> (-i, -j).
  BigradedGroup reflected() const;
  BigradedGroup shifted(int di, int dj) const;

  bool operator==(const BigradedGroup&) const = default;

  nlohmann::json to_json() const;
  static BigradedGroup from_json(const nlohmann::json& j);

 private:
  std::map<Key, Group> entries_;
};

class GradedGroup {
 public:
  void set(int k, Group g);
  const Group& at(int k) const;
  const std::map<int, Group>& entries() const { return entries_; }
  std::size_t total_rank() const;
  GradedGroup shifted(int dk) const;

  bool operator==(const GradedGroup&) const = default;

  nlohmann::json to_json() const;
  static GradedGroup from_json(const nlohmann::json& j);

 private:
  std::map<int, Group> entries_;
};

/// Ranks summed along anti-diagonals: k = i - j.
GradedGroup collapse_ranks(const BigradedGroup& g);

}  // namespace arckh::homalg
