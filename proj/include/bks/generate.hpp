#pragma once

#include <array>
#include <optional>
#include <vector>

#include "bks/chain.hpp"

namespace bks {

// Configuration for building contradiction derivations. A single seed axis
// produces a conditional derivation (assumption v(e_k) = 1 refuted); the
// all-axes mode splits on the basis triple instead, so the contradiction is
// unconditional and the derivation carries no assumptions at all.
struct GenerateOptions {
  int seed_axis = -1;  // 0..2 for one seed, -1 for all three
  // Optional flank target; the pipeline forces its valuation to zero. The
  // default per seed k is e_k + e_{k+1}. A target orthogonal to the seed is
  // first shifted by the seed axis; a target parallel to it is unusable.
  std::optional<std::array<FieldElem, 3>> target;
  PrecisionConfig precision;
  int max_links = 64;
};

struct SeedReport {
  int axis = -1;
  int seed_point = -1;  // vector id of the seed axis
  int h1 = -1;          // vector ids of the unit frame completing the seed
  int h2 = -1;
  int links = 0;
  int scale_downs = 0;
};

struct GenerateResult {
  Derivation derivation;
  std::vector<SeedReport> seeds;
};

GenerateResult generate_derivation(const GenerateOptions& opt);

}  // namespace bks
