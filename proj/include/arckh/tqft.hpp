#pragma once

// The rank-two Frobenius algebra V = Z[x]/(x^2) with basis {1, x}.
// Quantum degrees: qdeg(1) = +1, qdeg(x) = -1.

#include <array>
#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

namespace arckh::tqft {

enum class Label : std::uint8_t { One, X };

template <class T>
using Combination = std::vector<std::pair<T, std::int64_t>>;

Combination<Label> merge(Label a, Label b);
Combination<std::array<Label, 2>> split(Label a);

constexpr int qdeg(Label a) { return a == Label::One ? 1 : -1; }

/// Frobenius counit: eps(1) = 0, eps(x) = 1.
constexpr int counit(Label a) { return a == Label::X ? 1 : 0; }

/// A labeling of c circles stored as a bitmask, bit k set when circle k
/// carries x.
using Labeling = std::uint32_t;

constexpr Label label_of(Labeling mask, int circle) {
  return ((mask >> circle) & 1u) ? Label::X : Label::One;
}

constexpr int x_count(Labeling mask) { return std::popcount(mask); }

/// Total quantum degree of a labeling of `circles` circles: c - 2p.
constexpr int qdeg(Labeling mask, int circles) { return circles - 2 * x_count(mask); }

}  // namespace arckh::tqft
