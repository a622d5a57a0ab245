#include "arckh/homalg/bigraded.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace arckh::homalg {

namespace {

const Group kZero{};

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

nlohmann::json torsion_json(const Group& g) {
  auto t = nlohmann::json::array();
  for (auto v : g.torsion) t.push_back(v);
  return t;
}

Group group_from(const nlohmann::json& j) {
  Group g;
  g.rank = j.at("rank").get<std::size_t>();
  g.torsion = j.at("torsion").get<std::vector<std::int64_t>>();
  std::sort(g.torsion.begin(), g.torsion.end());
  return g;
}

}  // namespace

Coefficients Coefficients::mod(std::uint32_t p) {
  if (!is_prime(p)) throw std::invalid_argument("coefficients: F" + std::to_string(p) + " is not a prime field");
  return {Kind::Prime, p};
}

Coefficients Coefficients::parse(std::string_view text) {
  if (text == "Z") return integers();
  if (text == "Q") return rationals();
  if (text.size() > 1 && (text[0] == 'F' || text[0] == 'f')) {
    std::uint32_t p = 0;
    auto [ptr, ec] = std::from_chars(text.data() + 1, text.data() + text.size(), p);
    if (ec == std::errc{} && ptr == text.data() + text.size()) return mod(p);
  }
  throw std::invalid_argument("coefficients: expected Z, Q or F<p>, got '" + std::string(text) + "'");
}

std::string Coefficients::name() const {
  switch (kind) {
    case Kind::Integer: return "Z";
    case Kind::Rational: return "Q";
    case Kind::Prime: return "F" + std::to_string(prime);
  }
  return "?";
}

std::string Group::to_string() const {
  std::string s;
  if (rank) s = rank == 1 ? "Z" : "Z^" + std::to_string(rank);
  for (auto t : torsion) {
    if (!s.empty()) s += "+";
    s += "Z/" + std::to_string(t);
  }
  return s.empty() ? "0" : s;
}

void BigradedGroup::set(int i, int j, Group g) {
  std::sort(g.torsion.begin(), g.torsion.end());
  if (g.is_zero())
    entries_.erase({i, j});
  else
    entries_[{i, j}] = std::move(g);
}

const Group& BigradedGroup::at(int i, int j) const {
  auto it = entries_.find({i, j});
  return it == entries_.end() ? kZero : it->second;
}

std::size_t BigradedGroup::total_rank() const {
  std::size_t t = 0;
  for (const auto& [k, g] : entries_) t += g.rank;
  return t;
}

BigradedGroup BigradedGroup::ranks_only() const {
  BigradedGroup out;
  for (const auto& [k, g] : entries_) out.set(k.first, k.second, Group{g.rank, {}});
  return out;
}

BigradedGroup BigradedGroup::reflected() const {
  BigradedGroup out;
  for (const auto& [k, g] : entries_) out.set(-k.first, -k.second, g);
  return out;
}

BigradedGroup BigradedGroup::shifted(int di, int dj) const {
  BigradedGroup out;
  for (const auto& [k, g] : entries_) out.set(k.first + di, k.second + dj, g);
  return out;
}

nlohmann::json BigradedGroup::to_json() const {
  auto arr = nlohmann::json::array();
  for (const auto& [k, g] : entries_) {
    nlohmann::json e;
    e["i"] = k.first;
    e["j"] = k.second;
    e["rank"] = g.rank;
    e["torsion"] = torsion_json(g);
    arr.push_back(std::move(e));
  }
  return arr;
}

BigradedGroup BigradedGroup::from_json(const nlohmann::json& j) {
  BigradedGroup out;
  for (const auto& e : j) out.set(e.at("i").get<int>(), e.at("j").get<int>(), group_from(e));
  return out;
}

void GradedGroup::set(int k, Group g) {
  std::sort(g.torsion.begin(), g.torsion.end());
  if (g.is_zero())
    entries_.erase(k);
  else
    entries_[k] = std::move(g);
}

const Group& GradedGroup::at(int k) const {
  auto it = entries_.find(k);
  return it == entries_.end() ? kZero : it->second;
}

std::size_t GradedGroup::total_rank() const {
  std::size_t t = 0;
  for (const auto& [k, g] : entries_) t += g.rank;
  return t;
}

GradedGroup GradedGroup::shifted(int dk) const {
  GradedGroup out;
  for (const auto& [k, g] : entries_) out.set(k + dk, g);
  return out;
}

nlohmann::json GradedGroup::to_json() const {
  auto arr = nlohmann::json::array();
  for (const auto& [k, g] : entries_) {
    nlohmann::json e;
    e["k"] = k;
    e["rank"] = g.rank;
    e["torsion"] = torsion_json(g);
    arr.push_back(std::move(e));
  }
  return arr;
}

GradedGroup GradedGroup::from_json(const nlohmann::json& j) {
  GradedGroup out;
  for (const auto& e : j) out.set(e.at("k").get<int>(), group_from(e));
  return out;
}

GradedGroup collapse_ranks(const BigradedGroup& g) {
  std::map<int, std::size_t> acc;
  for (const auto& [k, grp] : g.entries()) acc[k.first - k.second] += grp.rank;
  GradedGroup out;
  for (auto [k, r] : acc) out.set(k, Group{r, {}});
  return out;
}

}  // namespace arckh::homalg
