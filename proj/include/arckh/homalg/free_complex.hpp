#pragma once

// Cochain complexes of finitely generated free abelian groups with a
// quantum grading and a Floer grading on generators, and their homology.

#include <map>
#include <vector>

#include "arckh/homalg/bigraded.hpp"
#include "arckh/homalg/complex.hpp"
#include "arckh/homalg/smith.hpp"

namespace arckh::homalg {

struct Generator {
  int q = 0;
  int floer = 0;
};

struct FreeComplex {
  std::map<int, std::vector<Generator>> gens;
  std::map<int, SparseMatrix> d;  // d[h] : gens[h] -> gens[h+1]; rows are targets

  const std::vector<Generator>& at(int h) const;
  std::size_t rank() const;
};

/// d^2 = 0 and both gradings preserved (q fixed, Floer up by one).
void validate(const FreeComplex& c);

/// Hom(P_a, C): summand P_b{s} at degree h contributes the basis of block
/// (a, b); an element psi gets q = qdeg(psi) + s and Floer degree
/// h + sdeg(psi) + f.
FreeComplex idempotent_truncate(MatchingId a, const Complex& c);

/// Homology indexed by (h, q).
BigradedGroup homology(const FreeComplex& c, const Coefficients& coeffs);

/// Homology of the complex regraded by Floer degree alone (homological
/// degree forgotten), indexed by Floer degree.
GradedGroup floer_homology(const FreeComplex& c, const Coefficients& coeffs);

/// Euler characteristic per quantum degree: sum over h of (-1)^h rank.
std::map<int, long> euler_by_q(const FreeComplex& c);

}  // namespace arckh::homalg
