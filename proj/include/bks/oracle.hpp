#pragma once

#include <array>
#include <utility>
#include <vector>

namespace bks {

// Combinatorial coloring instance: assign each point 0 or 1 so that every
// triple carries exactly one 1, subject to pinned values. This module is
// pure index combinatorics with no knowledge of vectors or derivations, so
// its verdicts are independent of the rule engine that produced the triples.
struct ColoringProblem {
  int num_points = 0;
  std::vector<std::array<int, 3>> triples;
  std::vector<std::pair<int, int>> pins;  // point index -> forced value
};

enum class ColorMode {
  Exhaustive,    // enumerate every assignment of the unpinned points
  Backtracking,  // unit propagation with conflict-driven backtracking
};

struct ColoringResult {
  bool colorable = false;
  std::vector<int> witness;    // per-point values when colorable
  long long nodes = 0;         // assignments or branch points visited
  long long propagations = 0;  // forced values (backtracking only)
  double wall_seconds = 0.0;
};

// Decides colorability. Both modes are complete; a returned witness is
// audited against every triple and pin before the verdict is reported.
ColoringResult color_problem(const ColoringProblem& p, ColorMode mode);

}  // namespace bks
