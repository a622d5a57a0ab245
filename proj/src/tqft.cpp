#include "arckh/tqft.hpp"

namespace arckh::tqft {

Combination<Label> merge(Label a, Label b) {
  if (a == Label::X && b == Label::X) return {};
  if (a == Label::X || b == Label::X) return {{Label::X, 1}};
  return {{Label::One, 1}};
}

Combination<std::array<Label, 2>> split(Label a) {
  if (a == Label::X) return {{{Label::X, Label::X}, 1}};
  return {{{Label::One, Label::X}, 1}, {{Label::X, Label::One}, 1}};
}

}  // namespace arckh::tqft
