#pragma once

// Braid words. Letter +k is the positive crossing sigma_k between strands k
// and k+1, -k its inverse.

#include <string>
#include <string_view>
#include <vector>

namespace arckh {

struct BraidWord {
  int strands = 1;
  std::vector<int> letters;

  /// Grammar: optional header "n=<strands>" followed by whitespace-separated
  /// signed nonzero integers. Without a header the strand count is
  /// `default_strands` if positive, else one more than the largest index.
  /// Throws std::invalid_argument.
  static BraidWord parse(std::string_view text, int default_strands = 0);

  int writhe() const;
  int length() const { return static_cast<int>(letters.size()); }
  int positive_crossings() const;
  int negative_crossings() const;

  /// Throws std::invalid_argument unless every |letter| is in 1..strands-1.
  void check() const;

  BraidWord mirror() const;
  BraidWord without(std::size_t index) const;
  std::string to_string() const;  // "n=3 1 -2 1"

  bool operator==(const BraidWord&) const = default;
};

}  // namespace arckh
