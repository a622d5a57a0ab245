#pragma once

// Saddle bookkeeping on planar 1-manifolds. A Builder tracks the circles of
// a graph in which every node has degree two while saddles are performed,
// and records the resulting sequence of merges and splits as a Program over
// numbered circle slots. Running a program on a labeling applies the TQFT
// merge and split maps to it.

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace arckh::surgery {

struct Op {
  enum class Kind : std::uint8_t { Merge, Split };
  Kind kind;
  int keep;   // merge: surviving slot; split: slot that splits
  int other;  // merge: absorbed slot; split: slot of the new circle
};

struct Program {
  std::vector<Op> ops;
  int slots = 0;
};

using SlotTerms = std::vector<std::pair<std::uint64_t, std::int64_t>>;

class Builder {
 public:
  explicit Builder(int nodes);

  void connect(int u, int v);

  /// Slot k is the circle through reps[k]; every circle needs exactly one.
  void seed(const std::vector<int>& reps);

  /// Replaces edges u1-v1 and u2-v2 by u1-u2 and v1-v2.
  void saddle(int u1, int v1, int u2, int v2);

  int slot_of(int node) const { return node_slot_.at(node); }
  const Program& program() const { return program_; }

 private:
  void disconnect(int u, int v);
  std::vector<int> component(int start) const;

  std::vector<std::array<int, 2>> adj_;
  std::vector<int> node_slot_;
  Program program_;
};

/// Applies the program to one labeled state (bit k set = slot k carries x),
/// accumulating the resulting states into `out`.
void run(const Program& program, std::uint64_t mask, std::int64_t coeff, SlotTerms& out);

/// Sorts by mask, sums duplicates and drops zeros.
void normalize(SlotTerms& terms);

}  // namespace arckh::surgery
