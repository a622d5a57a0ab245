#include "arckh/surgery.hpp"

#include <algorithm>
#include <stdexcept>

namespace arckh::surgery {

Builder::Builder(int nodes) : adj_(nodes, {-1, -1}), node_slot_(nodes, -1) {}

void Builder::connect(int u, int v) {
  auto attach = [](std::array<int, 2>& a, int w) {
    if (a[0] < 0) a[0] = w;
    else if (a[1] < 0) a[1] = w;
    else throw std::logic_error("surgery: node degree exceeds two");
  };
  attach(adj_.at(u), v);
  attach(adj_.at(v), u);
}

void Builder::disconnect(int u, int v) {
  auto detach = [](std::array<int, 2>& a, int w) {
    if (a[0] == w) a[0] = -1;
    else if (a[1] == w) a[1] = -1;
    else throw std::logic_error("surgery: missing edge");
  };
  detach(adj_.at(u), v);
  detach(adj_.at(v), u);
}

std::vector<int> Builder::component(int start) const {
  std::vector<int> nodes{start};
  std::vector<char> seen(adj_.size(), 0);
  seen[start] = 1;
  for (std::size_t k = 0; k < nodes.size(); ++k)
    for (int w : adj_[nodes[k]])
      if (w >= 0 && !seen[w]) {
        seen[w] = 1;
        nodes.push_back(w);
      }
  return nodes;
}

void Builder::seed(const std::vector<int>& reps) {
  for (const auto& a : adj_)
    if (a[0] < 0 || a[1] < 0) throw std::logic_error("surgery: node of degree < 2");
  for (std::size_t k = 0; k < reps.size(); ++k)
    for (int w : component(reps[k])) {
      if (node_slot_[w] >= 0) throw std::logic_error("surgery: circle seeded twice");
      node_slot_[w] = static_cast<int>(k);
    }
  for (int s : node_slot_)
    if (s < 0) throw std::logic_error("surgery: unseeded circle");
  program_.slots = static_cast<int>(reps.size());
}

void Builder::saddle(int u1, int v1, int u2, int v2) {
  const int x = node_slot_.at(u1);
  const int y = node_slot_.at(u2);
  disconnect(u1, v1);
  disconnect(u2, v2);
  connect(u1, u2);
  connect(v1, v2);
  if (x != y) {
    for (int w : component(u1)) node_slot_[w] = x;
    program_.ops.push_back({Op::Kind::Merge, x, y});
    return;
  }
  const auto moved = component(v1);
  if (std::find(moved.begin(), moved.end(), u1) != moved.end())
    throw std::logic_error("surgery: saddle on one circle did not split it");
  const int fresh = program_.slots++;
  for (int w : moved) node_slot_[w] = fresh;
  program_.ops.push_back({Op::Kind::Split, x, fresh});
}

void run(const Program& program, std::uint64_t mask, std::int64_t coeff, SlotTerms& out) {
  SlotTerms cur{{mask, coeff}};
  SlotTerms next;
  for (const Op& op : program.ops) {
    next.clear();
    const std::uint64_t kb = std::uint64_t{1} << op.keep;
    const std::uint64_t ob = std::uint64_t{1} << op.other;
    for (auto [m, c] : cur) {
      if (op.kind == Op::Kind::Merge) {
        const bool xk = m & kb, xo = m & ob;
        if (xk && xo) continue;
        std::uint64_t r = m & ~ob;
        if (xo) r |= kb;
        next.emplace_back(r, c);
      } else if (m & kb) {
        next.emplace_back(m | ob, c);
      } else {
        next.emplace_back(m | ob, c);
        next.emplace_back(m | kb, c);
      }
    }
    std::swap(cur, next);
  }
  out.insert(out.end(), cur.begin(), cur.end());
}

void normalize(SlotTerms& terms) {
  std::sort(terms.begin(), terms.end());
  std::size_t w = 0;
  for (std::size_t r = 0; r < terms.size();) {
    auto m = terms[r].first;
    std::int64_t c = 0;
    for (; r < terms.size() && terms[r].first == m; ++r) c += terms[r].second;
    if (c != 0) terms[w++] = {m, c};
  }
  terms.resize(w);
}

}  // namespace arckh::surgery
