#include "bks/oracle.hpp"

#include <chrono>
#include <cstdint>
#include <string>

#include "bks/error.hpp"

namespace bks {

namespace {

constexpr int kExhaustiveCap = 25;

void check_problem(const ColoringProblem& p) {
  if (p.num_points < 0) throw Error(ErrorKind::Validate, "negative point count");
  for (const std::array<int, 3>& t : p.triples) {
    for (int idx : t)
      if (idx < 0 || idx >= p.num_points)
        throw Error(ErrorKind::Validate, "triple index out of range");
    if (t[0] == t[1] || t[0] == t[2] || t[1] == t[2])
      throw Error(ErrorKind::Validate, "triple repeats a point");
  }
  std::vector<int> pinned(static_cast<size_t>(p.num_points), -1);
  for (const auto& [point, value] : p.pins) {
    if (point < 0 || point >= p.num_points)
      throw Error(ErrorKind::Usage, "pin index out of range");
    if (value != 0 && value != 1)
      throw Error(ErrorKind::Usage, "pin value must be 0 or 1");
    int& slot = pinned[static_cast<size_t>(point)];
    if (slot >= 0 && slot != value)
      throw Error(ErrorKind::Usage,
                  "contradictory pins on point " + std::to_string(point));
    slot = value;
  }
}

bool audit(const ColoringProblem& p, const std::vector<int>& w) {
  if (w.size() != static_cast<size_t>(p.num_points)) return false;
  for (int v : w)
    if (v != 0 && v != 1) return false;
  for (const std::array<int, 3>& t : p.triples)
    if (w[static_cast<size_t>(t[0])] + w[static_cast<size_t>(t[1])] +
            w[static_cast<size_t>(t[2])] !=
        1)
      return false;
  for (const auto& [point, value] : p.pins)
    if (w[static_cast<size_t>(point)] != value) return false;
  return true;
}

ColoringResult exhaust(const ColoringProblem& p) {
  if (p.num_points > kExhaustiveCap)
    throw Error(ErrorKind::Usage,
                "exhaustive mode is capped at " + std::to_string(kExhaustiveCap) +
                    " points; use backtracking");
  std::vector<int> fixed(static_cast<size_t>(p.num_points), -1);
  for (const auto& [point, value] : p.pins) fixed[static_cast<size_t>(point)] = value;
  std::vector<int> free_points;
  for (int i = 0; i < p.num_points; ++i)
    if (fixed[static_cast<size_t>(i)] < 0) free_points.push_back(i);

  ColoringResult res;
  std::vector<int> w(static_cast<size_t>(p.num_points), 0);
  for (int i = 0; i < p.num_points; ++i)
    if (fixed[static_cast<size_t>(i)] >= 0)
      w[static_cast<size_t>(i)] = fixed[static_cast<size_t>(i)];

  std::uint64_t total = std::uint64_t{1} << free_points.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    ++res.nodes;
    for (size_t j = 0; j < free_points.size(); ++j)
      w[static_cast<size_t>(free_points[j])] = static_cast<int>((mask >> j) & 1);
    bool ok = true;
    for (const std::array<int, 3>& t : p.triples) {
      if (w[static_cast<size_t>(t[0])] + w[static_cast<size_t>(t[1])] +
              w[static_cast<size_t>(t[2])] !=
          1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      res.colorable = true;
      res.witness = w;
      return res;
    }
  }
  return res;
}

// Depth-first search with unit propagation over the exactly-one constraint:
// a 1 forces 0 on its triple partners, two 0s force the remaining 1, two 1s
// or three 0s conflict.
class Searcher {
 public:
  Searcher(const ColoringProblem& p) : p_(p) {
    incident_.resize(static_cast<size_t>(p.num_points));
    for (size_t t = 0; t < p.triples.size(); ++t)
      for (int idx : p.triples[t]) incident_[static_cast<size_t>(idx)].push_back(t);
    val_.assign(static_cast<size_t>(p.num_points), -1);
  }

  ColoringResult run() {
    ColoringResult res;
    bool consistent = true;
    for (const auto& [point, value] : p_.pins)
      if (!assign(point, value)) {
        consistent = false;
        break;
      }
    if (consistent && solve()) {
      res.colorable = true;
      res.witness.assign(static_cast<size_t>(p_.num_points), 0);
      for (int i = 0; i < p_.num_points; ++i)
        if (val_[static_cast<size_t>(i)] > 0) res.witness[static_cast<size_t>(i)] = 1;
    }
    res.nodes = nodes_;
    res.propagations = props_;
    return res;
  }

 private:
  bool assign(int point, int value) {
    std::int8_t& slot = val_[static_cast<size_t>(point)];
    if (slot >= 0) return slot == value;
    slot = static_cast<std::int8_t>(value);
    trail_.push_back(point);
    ++props_;
    for (size_t t : incident_[static_cast<size_t>(point)])
      if (!propagate(t)) return false;
    return true;
  }

  bool propagate(size_t t) {
    int ones = 0, zeros = 0;
    int unknown[3];
    int unknowns = 0;
    for (int idx : p_.triples[t]) {
      std::int8_t v = val_[static_cast<size_t>(idx)];
      if (v < 0)
        unknown[unknowns++] = idx;
      else if (v == 1)
        ++ones;
      else
        ++zeros;
    }
    if (ones >= 2) return false;
    if (ones == 1) {
      for (int j = 0; j < unknowns; ++j)
        if (!assign(unknown[j], 0)) return false;
      return true;
    }
    if (zeros == 3) return false;
    if (zeros == 2 && unknowns == 1) return assign(unknown[0], 1);
    return true;
  }

  // Branch on the unassigned point constraining the most open triples, ties
  // to the lowest index; value 1 first, since it propagates hardest. Degree
  // order matters: high-degree points are the hubs whose values cascade,
  // while low-degree points sit in half-constrained gadget chains where
  // blind branching multiplies the search.
  int branch_point() const {
    std::vector<int> degree(val_.size(), 0);
    for (const std::array<int, 3>& t : p_.triples) {
      bool open = val_[static_cast<size_t>(t[0])] < 0 ||
                  val_[static_cast<size_t>(t[1])] < 0 ||
                  val_[static_cast<size_t>(t[2])] < 0;
      if (!open) continue;
      for (int idx : t)
        if (val_[static_cast<size_t>(idx)] < 0) ++degree[static_cast<size_t>(idx)];
    }
    int best = -1;
    for (size_t i = 0; i < degree.size(); ++i)
      if (degree[i] > 0 && (best < 0 || degree[i] > degree[static_cast<size_t>(best)]))
        best = static_cast<int>(i);
    return best;
  }

  bool solve() {
    int point = branch_point();
    if (point < 0) return true;  // every constrained point is assigned
    ++nodes_;
    for (int value : {1, 0}) {
      size_t mark = trail_.size();
      if (assign(point, value) && solve()) return true;
      while (trail_.size() > mark) {
        val_[static_cast<size_t>(trail_.back())] = -1;
        trail_.pop_back();
      }
    }
    return false;
  }

  const ColoringProblem& p_;
  std::vector<std::vector<size_t>> incident_;
  std::vector<std::int8_t> val_;
  std::vector<int> trail_;
  long long nodes_ = 0;
  long long props_ = 0;
};

}  // namespace

ColoringResult color_problem(const ColoringProblem& p, ColorMode mode) {
  check_problem(p);
  auto start = std::chrono::steady_clock::now();
  ColoringResult res =
      mode == ColorMode::Exhaustive ? exhaust(p) : Searcher(p).run();
  res.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (res.colorable && !audit(p, res.witness))
    throw Error(ErrorKind::Validate, "coloring witness failed its audit");
  return res;
}

}  // namespace bks
