#pragma once

#include "bks/rules.hpp"

namespace bks {

// Minimal-length search for a rotation-with-stretch descent between plane
// norms bx < by across the angle theta with cos(theta) = C: the base
// stretch alpha(k) = sqrt(by/bx) * cos(theta/k)^k must reach at least 1,
// and feasibility is monotone in k, so the first feasible k is minimal.
struct ChainSearch {
  ExactScalar cos_theta;  // C, field level, |C| < 1
  ExactScalar sin_theta;  // sqrt(1 - C^2), field level, positive
  mpq_class ratio;        // by/bx > 1
  int n = 0;              // minimal feasible link count
  bool alpha_is_one = false;  // ring-exact boundary alpha(n) = 1
  // cos(theta/k)^k enclosures for k = 1..n (reporting aid).
  std::vector<std::pair<int, Interval>> cos_powers;
};

ChainSearch chain_search(const ExactScalar& cos_theta, const mpq_class& ratio,
                         const PrecisionConfig& cfg, int max_links);

struct DescentResult {
  int final_fact = -1;  // node concluding v(y) = 0
  int links = 0;        // rotation steps emitted
  int scale_downs = 0;  // stretch corrections emitted (two monotones each)
};

// Emits monotone steps proving v(y) <= v(x) for exact plane points x, y
// around the frame pole, then propagates the known fact v(x) = 0 down to
// v(y) = 0. Requirements: 0 < <x,x>_plane < <y,y>_plane, both plane norms
// rational, and the square of the plane inner product rational (so the step
// angle is representable in the scalar tower). Collinear pairs take a pure
// stretch; opposite pairs route through a perpendicular waypoint.
DescentResult emit_descent(DerivationBuilder& b, const SFrame& frame, int context,
                           int pole_fact, int x_fact, const Vec3& x, const Vec3& y,
                           int max_links = 64);

}  // namespace bks
