#pragma once

// Bounded cochain complexes of graded projective H_n-modules.
//
// A summand P_a{s} carries a quantum shift s and a Floer shift f. A map entry
// phi : P_a{s} -> P_b{t} is an element of block (a, b); it is homogeneous
// when every basis term has sdeg(phi) = t - s. Differentials raise the
// homological degree by one and must also satisfy sdeg(phi) = f_s - f_t, so
// that the Floer degree h + sdeg + f of the truncated complex rises by one.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "arckh/arcalg.hpp"

namespace arckh::homalg {

using arcalg::ArcAlgebra;
using arcalg::ArcCombination;
using arcalg::Coeff;
using arcalg::MatchingId;

struct ProjSummand {
  MatchingId matching = 0;
  int qshift = 0;
  int fshift = 0;
  bool operator==(const ProjSummand&) const = default;
};

/// Sparse matrix of arc-algebra elements between two lists of summands.
class ModuleMap {
 public:
  using Column = std::map<std::size_t, ArcCombination>;  // target -> entry

  ModuleMap() = default;
  ModuleMap(std::size_t sources, std::size_t targets) : targets_(targets), cols_(sources) {}

  std::size_t sources() const { return cols_.size(); }
  std::size_t targets() const { return targets_; }

  /// Entry from `source` to `target`, or nullptr when zero.
  const ArcCombination* entry(std::size_t source, std::size_t target) const;
  const Column& column(std::size_t source) const { return cols_.at(source); }

  void add(std::size_t source, std::size_t target, const ArcCombination& value);
  void set(std::size_t source, std::size_t target, ArcCombination value);
  void erase(std::size_t source, std::size_t target);

  std::size_t nonzeros() const;
  bool is_zero() const { return nonzeros() == 0; }
  ModuleMap scaled(Coeff c) const;

  bool operator==(const ModuleMap&) const = default;

 private:
  std::size_t targets_ = 0;
  std::vector<Column> cols_;
};

/// later o earlier.
ModuleMap compose(const ArcAlgebra& alg, const ModuleMap& later, const ModuleMap& earlier);
ModuleMap sum(const ModuleMap& a, const ModuleMap& b);

struct Complex {
  int n = 1;
  std::map<int, std::vector<ProjSummand>> terms;
  std::map<int, ModuleMap> d;  // d[h] : terms[h] -> terms[h+1]

  const ArcAlgebra& algebra() const { return ArcAlgebra::get(n); }
  const std::vector<ProjSummand>& at(int h) const;
  /// d[h], or the zero map of the right shape.
  ModuleMap differential(int h) const;
  std::size_t size() const;
  int min_degree() const;
  int max_degree() const;

  static Complex single(int n, ProjSummand s, int degree = 0);
};

struct ChainMap {
  std::map<int, ModuleMap> components;  // components[h] : C^h -> D^h
  ModuleMap at(int h, const Complex& source, const Complex& target) const;
};

/// Throws std::logic_error on shape mismatch, inhomogeneous entries or d^2 != 0.
void validate(const Complex& c);
/// Entries must be q-homogeneous; with `floer_offset` set, also checks
/// sdeg = f_s - f_t + floer_offset per entry.
void check_homogeneous(const ArcAlgebra& alg, const ModuleMap& m,
                       const std::vector<ProjSummand>& src, const std::vector<ProjSummand>& tgt,
                       const std::string& what, const int* floer_offset = nullptr);
/// Throws unless f commutes with the differentials.
void check_chain_map(const Complex& source, const Complex& target, const ChainMap& f);

/// Terms C^{h+1} + D^h with differential [[-d_C, 0], [f, d_D]]. Summand
/// shifts are kept as given. Validates the result.
Complex cone(const Complex& source, const Complex& target, const ChainMap& f);

/// Moves C^h to degree h + dh and adds dq, df to every summand. Differentials
/// pick up the sign (-1)^dh.
Complex shift(const Complex& c, int dh, int dq = 0, int df = 0);

Complex direct_sum(const Complex& a, const Complex& b);

/// Gaussian elimination: repeatedly cancels differential entries that are
/// +-identity between equal summands. The result is homotopy equivalent.
Complex reduce(const Complex& c);

}  // namespace arckh::homalg
