#pragma once

// Khovanov homology from the cube of resolutions, independent of the arc
// algebra pipeline. Shares only V (tqft) and the homology routines.
//
// PD format: one crossing per "X(a,b,c,d)", labels listed counterclockwise
// starting from the incoming under-strand, so the under-strand runs a -> c.
// Edge labels increase along the orientation of each component; that fixes
// the direction of over-strands that never pass under anything (a component
// with only two edges that never passes under is read as running d -> b at
// its first crossing). A bare "O" adds a crossingless unknotted component.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "arckh/braid.hpp"
#include "arckh/homalg/bigraded.hpp"
#include "arckh/homalg/free_complex.hpp"

namespace arckh::oracle {

struct Crossing {
  std::array<int, 4> e{};
  bool operator==(const Crossing&) const = default;
};

struct Diagram {
  std::vector<Crossing> crossings;
  int free_loops = 0;
  /// Known crossing signs, or empty to infer them from the labels.
  std::vector<int> signs;

  bool operator==(const Diagram&) const = default;
};

/// Throws std::invalid_argument on malformed text or labels not used twice.
Diagram parse_pd(std::string_view text);
std::string to_pd_text(const Diagram& d);

/// Checks that every label appears exactly twice.
void check(const Diagram& d);

/// +1 / -1 per crossing: positive when the over-strand runs d -> b. Uses
/// d.signs when present.
std::vector<int> crossing_signs(const Diagram& d);
/// Signs as read from the labels alone, ignoring d.signs.
std::vector<int> inferred_signs(const Diagram& d);

/// Number of link components, free loops included.
int components(const Diagram& d);

/// Closure of the braid, labels renumbered consecutively along components.
Diagram braid_to_pd(const BraidWord& b);

/// Alternate edge signs are (-1)^(ones above the changed coordinate).
enum class SignRule { Below, Above };

/// Total complex of the cube with Khovanov's shifts [-n_-]{n_+ - 2 n_-}.
homalg::FreeComplex cube_complex(const Diagram& d, SignRule rule = SignRule::Below);

homalg::BigradedGroup cube_homology(const Diagram& d, const homalg::Coefficients& coeffs,
                                    SignRule rule = SignRule::Below);

}  // namespace arckh::oracle
