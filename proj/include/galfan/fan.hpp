#pragma once

#include "galfan/cone.hpp"
#include "galfan/group.hpp"

#include <map>
#include <optional>
#include <string>

namespace galfan {

/// A fan stored by its maximal cones; faces are implicit. Cones are kept in
/// canonical (deduplicated, sorted) order so fans compare by equality.
struct Fan {
  std::size_t ambient_rank = 0;
  std::vector<Cone> maximal_cones;
  std::vector<IntVec> ray_index;  // all primitive rays, deduplicated, sorted

  bool operator==(const Fan& o) const {
    return ambient_rank == o.ambient_rank && maximal_cones == o.maximal_cones;
  }
};

inline Fan make_fan(std::size_t rank, std::vector<Cone> cones) {
  for (const Cone& c : cones)
    if (c.ambient_rank != rank) throw std::invalid_argument("cone has wrong ambient rank");
  std::sort(cones.begin(), cones.end(), cone_less);
  cones.erase(std::unique(cones.begin(), cones.end()), cones.end());
  Fan f;
  f.ambient_rank = rank;
  f.maximal_cones = std::move(cones);
  for (const Cone& c : f.maximal_cones)
    f.ray_index.insert(f.ray_index.end(), c.rays.begin(), c.rays.end());
  std::sort(f.ray_index.begin(), f.ray_index.end(), LexLess{});
  f.ray_index.erase(std::unique(f.ray_index.begin(), f.ray_index.end()), f.ray_index.end());
  return f;
}

struct FanViolation {
  std::size_t cone_a = 0;
  std::size_t cone_b = 0;
  std::string reason;
};

struct FanReport {
  bool valid = false;
  std::vector<FanViolation> violations;
  bool complete = false;
  bool smooth = false;
  bool simplicial = false;
};

inline bool is_complete(const Fan& f);

/// Checks the fan axioms on the maximal cones: strict convexity, no cone
/// contained in another, and every pairwise intersection a common face.
inline FanReport validate_fan(std::size_t rank, const std::vector<Cone>& cones) {
  Fan f = make_fan(rank, cones);
  FanReport report;
  const auto& mc = f.maximal_cones;
  for (std::size_t i = 0; i < mc.size(); ++i)
    if (!mc[i].is_strictly_convex())
      report.violations.push_back({i, i, "cone contains a line"});
  if (report.violations.empty()) {
    for (std::size_t i = 0; i < mc.size(); ++i)
      for (std::size_t j = i + 1; j < mc.size(); ++j) {
        Cone w = intersect(mc[i], mc[j]);
        if (w == mc[i] || w == mc[j]) {
          report.violations.push_back({i, j, "maximal cone contained in another"});
          continue;
        }
        if (!is_face_of(w, mc[i]) || !is_face_of(w, mc[j]))
          report.violations.push_back({i, j, "intersection is not a common face"});
      }
  }
  report.valid = report.violations.empty();
  if (report.valid) {
    report.smooth = true;
    report.simplicial = true;
    for (const Cone& c : mc) {
      if (!c.is_simplicial()) {
        report.simplicial = false;
        report.smooth = false;
      } else if (multiplicity(c) != 1) {
        report.smooth = false;
      }
    }
    report.complete = is_complete(f);
  }
  return report;
}

inline FanReport validate_fan(const Fan& f) {
  return validate_fan(f.ambient_rank, f.maximal_cones);
}

/// Wall-count completeness: every maximal cone is full-dimensional and every
/// facet of a maximal cone is shared by exactly two of them. A proper closed
/// support would expose a singly-covered wall; conversely a singly-covered
/// wall or a low-dimensional cone puts boundary points on the frontier.
inline bool is_complete(const Fan& f) {
  if (f.maximal_cones.empty()) return false;
  for (const Cone& c : f.maximal_cones)
    if (c.dim != f.ambient_rank) return false;
  std::map<std::vector<IntVec>, int> wall_count;
  for (const Cone& c : f.maximal_cones)
    for (const IntVec& h : c.inequalities) wall_count[facet_of(c, h).rays] += 1;
  for (const auto& [rays, count] : wall_count)
    if (count != 2) return false;
  return true;
}

inline bool support_contains(const Fan& f, const RatVec& v) {
  for (const Cone& c : f.maximal_cones)
    if (contains(c, v, Containment::kClosed)) return true;
  return false;
}

inline bool support_contains(const Fan& f, const IntVec& v) {
  return support_contains(f, to_rat(v));
}

struct StabilityResult {
  bool stable = false;
  // offending (generator index, maximal cone index) when unstable
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

inline StabilityResult is_stable(const Fan& f, const FiniteMatrixGroup& g) {
  if (g.rank != f.ambient_rank) throw std::invalid_argument("group rank mismatch");
  std::set<std::vector<IntVec>> keys;
  for (const Cone& c : f.maximal_cones) keys.insert(c.rays);
  for (std::size_t gi = 0; gi < g.generators.size(); ++gi)
    for (std::size_t ci = 0; ci < f.maximal_cones.size(); ++ci) {
      Cone im = image(f.maximal_cones[ci], g.generators[gi]);
      if (!keys.count(im.rays)) return {false, std::make_pair(gi, ci)};
    }
  return {true, std::nullopt};
}

inline bool cone_in_fan(const Fan& f, const Cone& c) {
  for (const Cone& m : f.maximal_cones)
    if (is_face_of(c, m)) return true;
  return false;
}

/// The fan whose maximal cones are the images of c under every group
/// element. Requires c to be a cone of f (maximal or a face).
inline Fan orbit_subfan(const Fan& f, const Cone& c, const FiniteMatrixGroup& g) {
  if (!cone_in_fan(f, c)) throw std::invalid_argument("cone does not belong to the fan");
  std::vector<Cone> images;
  for (const IntMatrix& m : g.elements) images.push_back(image(c, m));
  Fan out = make_fan(f.ambient_rank, std::move(images));
  FanReport report = validate_fan(out);
  if (!report.valid) throw std::logic_error("orbit of a fan cone is not a fan");
  return out;
}

namespace detail {

/// Do the fine cones contained in `coarse` cover it? Relative wall count:
/// a wall of a full-dimensional piece either lies on the boundary of
/// `coarse` or is shared by exactly two pieces.
inline bool covered_by(const Cone& coarse, const std::vector<Cone>& fine) {
  if (coarse.is_zero()) return true;
  std::vector<const Cone*> pieces;
  for (const Cone& c : fine)
    if (c.dim == coarse.dim && cone_contains_cone(coarse, c)) pieces.push_back(&c);
  if (pieces.empty()) return false;
  std::map<std::vector<IntVec>, int> wall_count;
  for (const Cone* c : pieces)
    for (const IntVec& h : c->inequalities) {
      Cone wall = facet_of(*c, h);
      bool on_boundary = false;
      for (const IntVec& hc : coarse.inequalities) {
        bool tight = true;
        for (const IntVec& r : wall.rays)
          if (dot(hc, r) != 0) {
            tight = false;
            break;
          }
        if (tight) {
          on_boundary = true;
          break;
        }
      }
      if (!on_boundary) wall_count[wall.rays] += 1;
    }
  for (const auto& [rays, count] : wall_count)
    if (count != 2) return false;
  return true;
}

}  // namespace detail

/// fine refines coarse: equal supports, cone by cone, and every maximal cone
/// of fine inside a single cone of coarse.
inline bool refines(const Fan& fine, const Fan& coarse) {
  if (fine.ambient_rank != coarse.ambient_rank) throw std::invalid_argument("rank mismatch");
  for (const Cone& c : fine.maximal_cones) {
    bool inside = false;
    for (const Cone& big : coarse.maximal_cones)
      if (cone_contains_cone(big, c)) {
        inside = true;
        break;
      }
    if (!inside) return false;
  }
  for (const Cone& big : coarse.maximal_cones)
    if (!detail::covered_by(big, fine.maximal_cones)) return false;
  return true;
}

}  // namespace galfan
