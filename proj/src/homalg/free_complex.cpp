#include "arckh/homalg/free_complex.hpp"

#include <stdexcept>

namespace arckh::homalg {

const std::vector<Generator>& FreeComplex::at(int h) const {
  static const std::vector<Generator> empty;
  auto it = gens.find(h);
  return it == gens.end() ? empty : it->second;
}

std::size_t FreeComplex::rank() const {
  std::size_t t = 0;
  for (const auto& [h, g] : gens) t += g.size();
  return t;
}

void validate(const FreeComplex& c) {
  for (const auto& [h, m] : c.d) {
    const auto& src = c.at(h);
    const auto& tgt = c.at(h + 1);
    if (m.cols != src.size() || m.rows != tgt.size())
      throw std::logic_error("free complex: d" + std::to_string(h) + " has the wrong shape");
    for (std::size_t j = 0; j < m.cols; ++j)
      for (auto [i, v] : m.columns[j]) {
        (void)v;
        if (src[j].q != tgt[i].q)
          throw std::logic_error("free complex: d" + std::to_string(h) + " changes q");
        if (src[j].floer + 1 != tgt[i].floer)
          throw std::logic_error("free complex: d" + std::to_string(h) + " breaks Floer grading");
      }
    auto next = c.d.find(h + 1);
    if (next != c.d.end() && !multiply(next->second, m).is_zero())
      throw std::logic_error("free complex: d^2 != 0 in degree " + std::to_string(h));
  }
}

FreeComplex idempotent_truncate(MatchingId a, const Complex& c) {
  const auto& alg = c.algebra();
  FreeComplex out;
  std::map<int, std::vector<std::size_t>> offsets;
  for (const auto& [h, terms] : c.terms) {
    auto& gens = out.gens[h];
    auto& off = offsets[h];
    for (const auto& s : terms) {
      off.push_back(gens.size());
      for (const auto& e : alg.basis(a, s.matching))
        gens.push_back({alg.qdeg(e) + s.qshift, h + alg.sdeg(e) + s.fshift});
    }
  }
  for (const auto& [h, m] : c.d) {
    SparseMatrix mat(out.at(h + 1).size(), out.at(h).size());
    const auto& src = c.at(h);
    for (std::size_t s = 0; s < m.sources(); ++s) {
      if (m.column(s).empty()) continue;
      for (const auto& psi : alg.basis(a, src[s].matching)) {
        const ArcCombination start(psi);
        const std::size_t col = offsets[h][s] + psi.labels;
        for (const auto& [t, phi] : m.column(s)) {
          const auto image = alg.multiply(phi, start);
          for (auto [labels, coeff] : image.terms())
            mat.add(offsets[h + 1][t] + labels, col, coeff);
        }
      }
    }
    if (!mat.is_zero()) out.d[h] = std::move(mat);
  }
  return out;
}

namespace {

struct Rank {
  std::size_t rank = 0;
  std::vector<std::int64_t> torsion;
};

Rank rank_of(const SparseMatrix& m, const Coefficients& coeffs) {
  if (m.is_zero()) return {};
  switch (coeffs.kind) {
    case Coefficients::Kind::Integer: {
      auto r = smith(m);
      return {r.rank, r.elementary_divisors};
    }
    case Coefficients::Kind::Rational: return {rank_rational(m), {}};
    case Coefficients::Kind::Prime: return {rank_mod_p(m, coeffs.prime), {}};
  }
  return {};
}

// Splits every differential into blocks by the key of its generators and
// computes homology per (h, key).
template <class Key>
std::map<std::pair<int, int>, Group> blockwise(const FreeComplex& c, Key key,
                                               const Coefficients& coeffs) {
  // local[h][j] = (block value, position within block)
  std::map<int, std::vector<std::pair<int, std::size_t>>> local;
  std::map<std::pair<int, int>, std::size_t> dims;
  for (const auto& [h, gens] : c.gens) {
    auto& loc = local[h];
    for (const auto& g : gens) {
      const int k = key(g);
      loc.emplace_back(k, dims[{h, k}]++);
    }
  }
  // rank and torsion of d[h] restricted to each block
  std::map<std::pair<int, int>, Rank> ranks;
  for (const auto& [h, m] : c.d) {
    std::map<int, SparseMatrix> blocks;
    const auto& src = local[h];
    const auto& tgt = local[h + 1];
    for (std::size_t j = 0; j < m.cols; ++j)
      for (auto [i, v] : m.columns[j]) {
        const int k = src[j].first;
        if (tgt[i].first != k) throw std::logic_error("homology: differential mixes gradings");
        auto it = blocks.find(k);
        if (it == blocks.end())
          it = blocks.emplace(k, SparseMatrix(dims[{h + 1, k}], dims[{h, k}])).first;
        it->second.add(tgt[i].second, src[j].second, v);
      }
    for (const auto& [k, b] : blocks) ranks[{h, k}] = rank_of(b, coeffs);
  }
  std::map<std::pair<int, int>, Group> out;
  for (const auto& [hk, dim] : dims) {
    const auto [h, k] = hk;
    std::size_t r = dim;
    Group g;
    if (auto it = ranks.find({h, k}); it != ranks.end()) r -= it->second.rank;
    if (auto it = ranks.find({h - 1, k}); it != ranks.end()) {
      r -= it->second.rank;
      g.torsion = it->second.torsion;
    }
    g.rank = r;
    if (!g.is_zero()) out[hk] = g;
  }
  return out;
}

}  // namespace

BigradedGroup homology(const FreeComplex& c, const Coefficients& coeffs) {
  BigradedGroup out;
  for (auto& [hk, g] : blockwise(c, [](const Generator& g) { return g.q; }, coeffs))
    out.set(hk.first, hk.second, g);
  return out;
}

GradedGroup floer_homology(const FreeComplex& c, const Coefficients& coeffs) {
  // Re-index by Floer degree alone.
  FreeComplex f;
  std::map<std::pair<int, std::size_t>, std::size_t> where;  // (h, j) -> index in its F group
  for (const auto& [h, gens] : c.gens)
    for (std::size_t j = 0; j < gens.size(); ++j) {
      auto& bucket = f.gens[gens[j].floer];
      where[{h, j}] = bucket.size();
      bucket.push_back({0, gens[j].floer});
    }
  for (const auto& [F, gens] : f.gens) {
    (void)gens;
    if (f.gens.count(F + 1)) f.d[F] = SparseMatrix(f.gens[F + 1].size(), f.gens[F].size());
  }
  for (const auto& [h, m] : c.d) {
    const auto& src = c.at(h);
    for (std::size_t j = 0; j < m.cols; ++j)
      for (auto [i, v] : m.columns[j]) {
        const int F = src[j].floer;
        f.d.at(F).add(where.at({h + 1, i}), where.at({h, j}), v);
      }
  }
  GradedGroup out;
  for (auto& [hk, g] : blockwise(f, [](const Generator&) { return 0; }, coeffs))
    out.set(hk.first, g);
  return out;
}

std::map<int, long> euler_by_q(const FreeComplex& c) {
  std::map<int, long> out;
  for (const auto& [h, gens] : c.gens)
    for (const auto& g : gens) out[g.q] += (h % 2 == 0) ? 1 : -1;
  for (auto it = out.begin(); it != out.end();)
    it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace arckh::homalg
