#pragma once

// Cup and cap functors between complexes over H_{n-1} and H_n, the
// adjunction unit and counit of cup_i o cap_i, and the twist cones.
//
// Conventions: cup_i inserts an arc at (i, i+1). cap_i contracts points i and
// i+1; a summand whose matching contains (i, i+1) splits into two copies,
// one for each label of the closed circle:
//   P_a{s} -> P_{a'}{s+1} (label 1, Floer shift -1) + P_{a'}{s-1} (label x, +1).
// The label-1 copy is listed first.

#include <vector>

#include "arckh/homalg/complex.hpp"

namespace arckh::tangle {

using arcalg::ArcAlgebra;
using arcalg::ArcCombination;
using arcalg::MatchingId;
using homalg::ChainMap;
using homalg::Complex;
using homalg::ModuleMap;
using homalg::ProjSummand;

/// Matching id of cup_insert(i, a) in H_{n+1}, for a in H_n.
MatchingId cup_matching(int n, int i, MatchingId a);

/// b -> b (x) 1: an element of H_n mapped into H_{n+1}.
ArcCombination cup_element(int n, int i, const ArcCombination& b);

/// One component of cap_i applied to a morphism: the entry between source
/// copy `from` and target copy `to` (0 = label 1, 1 = label x; always 0 when
/// the summand does not split).
struct CapComponent {
  int from = 0;
  int to = 0;
  ArcCombination value;
};

/// cap_i of an element of block (a, b) of H_n, as components in H_{n-1}.
std::vector<CapComponent> cap_element(int n, int i, const ArcCombination& phi);

Complex cup_functor(int i, const Complex& c);  // H_n -> H_{n+1}
Complex cap_functor(int i, const Complex& c);  // H_n -> H_{n-1}

/// cup_i o cap_i on complexes over H_n, with the summand layout of cap_i.
Complex cup_cap(int i, const Complex& c);

/// Unit C -> cup_cap(C){1}; components indexed like C and cup_cap(C).
ChainMap unit_map(int i, const Complex& c);
/// Counit cup_cap(C) -> C{1}.
ChainMap counit_map(int i, const Complex& c);

/// sign = -1: cone of the unit, placed as C{1} + cup_cap(C){2}[-1].
///   This is the positive crossing.
/// sign = +1: cone of the counit, placed as cup_cap(C){-2}[1] + C{-1}.
///   This is the negative crossing.
/// Both are validated (d^2 = 0, homogeneity, chain-map checks).
Complex twist(int i, int sign, const Complex& c);

}  // namespace arckh::tangle
