#pragma once

// Khovanov homology of braid closures through the arc algebra: start from
// the horseshoe projective P_o over H_n, apply one twist per braid letter,
// then take Hom(P_o, -) and its homology.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arckh/braid.hpp"
#include "arckh/homalg/bigraded.hpp"
#include "arckh/homalg/complex.hpp"
#include "arckh/homalg/free_complex.hpp"

namespace arckh::linkinv {

using homalg::BigradedGroup;
using homalg::Coefficients;
using homalg::GradedGroup;

/// Global bigrading offset between the twist pipeline and Khovanov's
/// normalization. The twist cones are normalized so that both are zero; the
/// unknot then sits at (0, 1) and (0, -1).
inline constexpr int kHomologicalOffset = 0;
inline constexpr int kQuantumOffset = 0;

/// The shifts applied to raw pipeline output.
struct Shifts {
  int homological = kHomologicalOffset;
  int quantum = kQuantumOffset;
  int collapsed = 0;  // n + w: Floer degree F lands in k = F - (n + w)
  bool operator==(const Shifts&) const = default;
};

/// Laurent polynomial as exponent -> coefficient, zero terms omitted.
using Laurent = std::map<int, long>;

struct InvariantResult {
  std::string link;
  int strands = 1;
  int writhe = 0;
  Coefficients coeffs;
  Shifts shifts;
  BigradedGroup bigraded;
  GradedGroup collapsed;
  Laurent jones;

  bool operator==(const InvariantResult&) const = default;
  nlohmann::json to_json() const;
  static InvariantResult from_json(const nlohmann::json& j);
};

struct Options {
  Coefficients coeffs;
  bool reduce = true;
};

/// P_o for 2n points.
planar::Matching horseshoe(int n);

/// The complex (beta x id)(P_o) over H_n. With `resolved` set, that letter is
/// replaced by cup_i o cap_i instead of its twist.
homalg::Complex braid_complex(const BraidWord& b, bool reduce = true,
                              std::optional<std::size_t> resolved = std::nullopt);

/// Hom(P_o, braid_complex(b)).
homalg::FreeComplex truncated_complex(const BraidWord& b, bool reduce = true,
                                      std::optional<std::size_t> resolved = std::nullopt);

InvariantResult compute(const BraidWord& b, const Options& opts = {});

/// Graded Euler characteristic sum (-1)^i q^j rank Kh^{i,j}, read off the
/// chain complex.
Laurent jones(const BraidWord& b);
Laurent euler_of(const BigradedGroup& g);

struct Report {
  bool passed = true;
  std::vector<std::string> lines;
  void check(bool ok, const std::string& what);
  void merge(const Report& other);
};

/// Conjugation by a random generator (seeded), and positive and negative
/// stabilization; all must leave the invariant unchanged.
Report verify_markov(const BraidWord& b, const Options& opts = {}, unsigned seed = 1);

/// Data of the skein triangle at one crossing.
struct SkeinData {
  int sign = 1;  // sign of the resolved crossing
  int v = 0;     // signed count of crossings flipped by reorienting L1
  int l1_positive = 0;
  int l1_negative = 0;
  BigradedGroup a;  // Kh(L)
  BigradedGroup b;  // Kh(L0), L0 = the letter deleted
  BigradedGroup c;  // Kh(L1), L1 = the unoriented resolution, own orientation
};

/// Reorients the L1 component through the resolution and counts crossings
/// changing sign. Returns (v, n+ of L1, n- of L1).
std::tuple<int, int, int> resolution_orientation(const BraidWord& b, std::size_t index);

SkeinData skein_data(const BraidWord& b, std::size_t index);

/// Long exact sequence rank bounds and the graded Euler identity.
Report verify_skein(const BraidWord& b, std::size_t index);

/// For complexes P_w over H_n (n <= max_n), twist relations on
/// e_a-homology: braid relations, distant commutation, twist o inverse twist.
Report verify_braid_relations(int max_n);

/// Every product of two basis elements of H_n has nonnegative coefficients.
Report verify_positivity(int n);

/// All e_a-homologies of a complex, over Q, keyed by matching id.
std::vector<BigradedGroup> idempotent_homologies(const homalg::Complex& c,
                                                 const Coefficients& coeffs);

}  // namespace arckh::linkinv
