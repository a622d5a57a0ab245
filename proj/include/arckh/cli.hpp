#pragma once

// Command-line driver: argument parsing, JSON and table emitters.
//
//   arckh compute   --braid "1 1 1" [-n 2]
//   arckh oracle    --braid "1 1 1" | --pd FILE   [--sign-rule below|above]
//   arckh compare   --braid "1 -2 1 -2" [-n 3]
//   arckh arc-dump  -n 2
//   arckh verify    markov|skein|braid-relations|positivity ...
//
// Common flags: --coeffs Z|Q|F<p> (default from KH_COEFFS, else Z),
// --table for the (i columns, j rows) grid, -o FILE to write output there.
// Exit codes: 0 ok, 1 verification failed or mismatch, 2 bad input.

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "arckh/homalg/bigraded.hpp"

namespace arckh::cli {

inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;
inline constexpr int kBadInput = 2;

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

/// Grid with i increasing left to right and j decreasing top to bottom.
/// Over a field cells show the ring name, e.g. "Q^2".
std::string table(const homalg::BigradedGroup& g, const std::string& ring = "Z");

/// Rows (i, j, left, right) for every bidegree where the two differ.
std::string diff_table(const homalg::BigradedGroup& left, const homalg::BigradedGroup& right,
                       const std::string& left_name, const std::string& right_name);

/// Matchings, block sizes and, for n <= 3, every product of basis elements.
nlohmann::json arc_dump(int n);

}  // namespace arckh::cli
