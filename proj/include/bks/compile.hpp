#pragma once

#include <array>
#include <vector>

#include "bks/rules.hpp"

namespace bks {

// The combinatorial residue of a derivation: every vector appearing in a
// rule triple, collapsed projectively (parallel vectors become one point),
// together with the orthogonal triples the rules contribute, as index
// triples into the point list. Provenance records, per triple, the nodes
// that contributed it.
struct ContextSet {
  std::vector<int> points;                   // representative vector ids
  std::vector<std::array<int, 3>> triples;   // ascending point indices
  std::vector<std::vector<int>> provenance;  // per triple: contributing node ids
  std::vector<int> point_of;                 // vector id -> point index, -1 if unused
};

// Expands a derivation into its context set. The derivation is re-verified
// first (goal not required), so every emitted triple inherits exact pairwise
// orthogonality and nonzero members from rule validity. The projective
// collapse is exact: a quantized direction key only narrows the candidates,
// and a vanishing cross product decides each merge.
ContextSet expand_to_triples(const Derivation& d);

}  // namespace bks
