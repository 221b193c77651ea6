#include "bks/compile.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "bks/error.hpp"

namespace bks {

namespace {

// Projective point index. Exact parallelism (vanishing cross product)
// decides ray identity; a quantized floating-point direction key narrows
// the candidates first. Parallel vectors share their exact zero pattern, so
// both normalize on the same component, and the rigorous enclosures keep
// each key coordinate within a quarter cell of the true value; two keys for
// the same ray therefore differ by at most one cell per coordinate, and
// probing the adjacent cells never misses a merge.
class RayIndex {
 public:
  explicit RayIndex(const Derivation& d) : d_(d) {}

  int locate(int vec_id, std::vector<int>& points) {
    const Vec3& v = d_.vectors.at(static_cast<size_t>(vec_id));
    int axis = -1;
    for (int i = 0; i < 3 && axis < 0; ++i)
      if (!v[static_cast<size_t>(i)].is_zero()) axis = i;
    if (axis < 0) throw Error(ErrorKind::Validate, "zero vector cannot name a ray");

    int i1 = axis == 0 ? 1 : 0;
    int i2 = axis == 2 ? 1 : 2;
    double m1 = 0, m2 = 0;
    bool tight = false;
    for (mpfr_prec_t prec = 256; prec <= 4096 && !tight; prec *= 4) {
      Interval base = v[static_cast<size_t>(axis)].eval(prec);
      if (base.contains_zero()) continue;
      Interval u1 = v[static_cast<size_t>(i1)].eval(prec) / base;
      Interval u2 = v[static_cast<size_t>(i2)].eval(prec) / base;
      if (u1.width_upper() < kCell / 4 && u2.width_upper() < kCell / 4) {
        m1 = u1.midpoint_double();
        m2 = u2.midpoint_double();
        tight = true;
      }
    }
    if (!tight)
      throw Error(ErrorKind::Precision, "direction key did not converge");

    long long k1 = cell(m1);
    long long k2 = cell(m2);
    for (long long d1 = -1; d1 <= 1; ++d1)
      for (long long d2 = -1; d2 <= 1; ++d2) {
        auto it = buckets_.find({axis, k1 + d1, k2 + d2});
        if (it == buckets_.end()) continue;
        for (int p : it->second)
          if (parallel(v, d_.vectors.at(static_cast<size_t>(
                              points[static_cast<size_t>(p)]))))
            return p;
      }

    int p = static_cast<int>(points.size());
    points.push_back(vec_id);
    buckets_[{axis, k1, k2}].push_back(p);
    return p;
  }

 private:
  static constexpr double kCell = 1e-6;

  static long long cell(double m) {
    return std::llround(std::clamp(m / kCell, -1e15, 1e15));
  }

  const Derivation& d_;
  std::map<std::tuple<int, long long, long long>, std::vector<int>> buckets_;
};

}  // namespace

ContextSet expand_to_triples(const Derivation& d) {
  verify_derivation(d, false);

  ContextSet cs;
  cs.point_of.assign(d.vectors.size(), -1);
  RayIndex index(d);
  std::map<std::array<int, 3>, int> seen;

  for (const Node& n : d.nodes) {
    for (const std::array<int, 3>& t : node_triples(n)) {
      std::array<int, 3> idx;
      for (size_t j = 0; j < 3; ++j) {
        int vid = t[j];
        int& cached = cs.point_of.at(static_cast<size_t>(vid));
        if (cached < 0) cached = index.locate(vid, cs.points);
        idx[j] = cached;
      }
      std::sort(idx.begin(), idx.end());
      if (idx[0] == idx[1] || idx[1] == idx[2])
        throw Error(ErrorKind::Validate, "triple contains a repeated ray");
      auto [it, inserted] = seen.emplace(idx, static_cast<int>(cs.triples.size()));
      if (inserted) {
        cs.triples.push_back(idx);
        cs.provenance.emplace_back();
      }
      std::vector<int>& prov = cs.provenance[static_cast<size_t>(it->second)];
      if (prov.empty() || prov.back() != n.id) prov.push_back(n.id);
    }
  }
  return cs;
}

}  // namespace bks
