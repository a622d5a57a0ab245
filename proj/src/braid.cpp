#include "arckh/braid.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace arckh {

namespace {

int parse_int(std::string_view tok) {
  int value = 0;
  const char* b = tok.data();
  const char* e = tok.data() + tok.size();
  if (b != e && *b == '+') ++b;
  auto [ptr, ec] = std::from_chars(b, e, value);
  if (ec != std::errc{} || ptr != e)
    throw std::invalid_argument("braid: bad token '" + std::string(tok) + "'");
  return value;
}

}  // namespace

BraidWord BraidWord::parse(std::string_view text, int default_strands) {
  BraidWord w;
  int header = 0;
  std::istringstream in{std::string(text)};
  std::string tok;
  bool first = true;
  while (in >> tok) {
    if (tok.rfind("n=", 0) == 0) {
      if (!first) throw std::invalid_argument("braid: strand header must come first");
      header = parse_int(std::string_view(tok).substr(2));
      if (header < 1) throw std::invalid_argument("braid: strand count must be positive");
    } else {
      const int letter = parse_int(tok);
      if (letter == 0) throw std::invalid_argument("braid: generator index 0");
      w.letters.push_back(letter);
    }
    first = false;
  }
  int needed = 1;
  for (int l : w.letters) needed = std::max(needed, std::abs(l) + 1);
  if (header)
    w.strands = header;
  else if (default_strands > 0)
    w.strands = default_strands;
  else
    w.strands = needed;
  w.check();
  return w;
}

void BraidWord::check() const {
  if (strands < 1) throw std::invalid_argument("braid: strand count must be positive");
  for (int l : letters)
    if (l == 0 || std::abs(l) >= strands)
      throw std::invalid_argument("braid: generator " + std::to_string(l) + " out of range for " +
                                  std::to_string(strands) + " strands");
}

int BraidWord::writhe() const { return positive_crossings() - negative_crossings(); }

int BraidWord::positive_crossings() const {
  return static_cast<int>(std::count_if(letters.begin(), letters.end(), [](int l) { return l > 0; }));
}

int BraidWord::negative_crossings() const {
  return static_cast<int>(std::count_if(letters.begin(), letters.end(), [](int l) { return l < 0; }));
}

BraidWord BraidWord::mirror() const {
  BraidWord m = *this;
  for (int& l : m.letters) l = -l;
  return m;
}

BraidWord BraidWord::without(std::size_t index) const {
  BraidWord m = *this;
  m.letters.erase(m.letters.begin() + static_cast<std::ptrdiff_t>(index));
  return m;
}

std::string BraidWord::to_string() const {
  std::string s = "n=" + std::to_string(strands);
  for (int l : letters) s += " " + std::to_string(l);
  return s;
}

}  // namespace arckh
