#pragma once

#include "galfan/fan.hpp"

#include <map>

namespace galfan {

/// Replace every maximal cone containing r (and not already having r as a
/// ray) by the joins of r with its facets not containing r. Cones away from
/// r are untouched; the result is a refinement with the same support.
inline Fan stellar_subdivide(const Fan& f, const IntVec& r) {
  if (r.size() != f.ambient_rank) throw std::invalid_argument("point has wrong dimension");
  if (is_zero(r) || primitive_part(r) != r)
    throw std::invalid_argument("subdivision point must be primitive");
  if (!support_contains(f, r))
    throw std::invalid_argument("subdivision point is not in the support of the fan");
  std::vector<Cone> out;
  for (const Cone& c : f.maximal_cones) {
    if (!contains(c, r, Containment::kClosed)) {
      out.push_back(c);
      continue;
    }
    if (std::find(c.rays.begin(), c.rays.end(), r) != c.rays.end()) {
      out.push_back(c);
      continue;
    }
    for (const IntVec& h : c.inequalities) {
      if (dot(h, r) == 0) continue;  // facet contains r
      std::vector<IntVec> gens{r};
      for (const IntVec& g : c.rays)
        if (dot(h, g) == 0) gens.push_back(g);
      out.push_back(cone_from_generators(f.ambient_rank, gens));
    }
  }
  return make_fan(f.ambient_rank, std::move(out));
}

/// Stellar subdivision at every point of the group orbit of r, applied in
/// the deterministic element order. The result is checked to be stable.
inline Fan equivariant_stellar(const Fan& f, const FiniteMatrixGroup& g, const IntVec& r) {
  std::vector<IntVec> orbit;
  for (const IntMatrix& m : g.elements) {
    IntVec p = m.apply(r);
    if (std::find(orbit.begin(), orbit.end(), p) == orbit.end()) orbit.push_back(p);
  }
  Fan cur = f;
  for (const IntVec& p : orbit) cur = stellar_subdivide(cur, p);
  if (!is_stable(cur, g).stable)
    throw std::logic_error("orbit subdivision produced an unstable fan");
  return cur;
}

/// Lattice points of the fundamental parallelepiped of a simplicial cone,
/// as (coefficient tuple in [0,1)^d, lattice point) pairs. There are
/// exactly multiplicity-many, including the origin.
inline std::vector<std::pair<RatVec, IntVec>> parallelepiped_points(const Cone& c) {
  if (!c.is_simplicial()) throw std::invalid_argument("parallelepiped of a non-simplicial cone");
  const std::size_t d = c.rays.size();
  std::vector<std::pair<RatVec, IntVec>> out;
  if (d == 0) {
    out.emplace_back(RatVec{}, IntVec(c.ambient_rank, Int(0)));
    return out;
  }
  // columns g_i; x = A c is integral iff c = V t with t_i in (1/d_i) Z,
  // where U A V = diag(d_1..d_d) is the Smith form
  SmithResult s = smith_normal_form(IntMatrix::from_columns(c.rays));
  std::vector<Int> divs(s.diag.begin(), s.diag.begin() + d);
  std::vector<Int> counter(d, Int(0));
  while (true) {
    RatVec t(d);
    for (std::size_t i = 0; i < d; ++i) t[i] = make_rat(counter[i], divs[i]);
    RatVec coeff(d, Rat(0));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) coeff[i] += Rat(s.right.at(i, j)) * t[j];
    for (Rat& x : coeff) {  // reduce into [0,1)
      Int fl = numerator(x) / denominator(x);
      if (Rat(fl) > x) fl -= 1;  // floor for negatives
      x -= Rat(fl);
    }
    RatVec point(c.ambient_rank, Rat(0));
    for (std::size_t i = 0; i < c.ambient_rank; ++i)
      for (std::size_t j = 0; j < d; ++j) point[i] += coeff[j] * Rat(c.rays[j][i]);
    if (!is_integral(point)) throw std::logic_error("parallelepiped point is not integral");
    out.emplace_back(std::move(coeff), rat_to_int(point));
    std::size_t k = 0;
    while (k < d) {
      counter[k] += 1;
      if (counter[k] < divs[k]) break;
      counter[k] = 0;
      ++k;
    }
    if (k == d) break;
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return lex_less(a.first, b.first); });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const auto& a, const auto& b) { return a.first == b.first; }),
            out.end());
  return out;
}

/// Equivariant resolution loop: while some cone is singular, split the
/// least cone of maximal multiplicity at the parallelepiped lattice point
/// with the least nonzero coefficient tuple, along its whole orbit. Every
/// split replaces a cone by cones of strictly smaller multiplicity, so the
/// multiset of multiplicities descends and the loop terminates.
inline Fan smooth_equivariant(const Fan& f, const FiniteMatrixGroup& g) {
  for (const Cone& c : f.maximal_cones)
    if (!c.is_simplicial())
      throw std::invalid_argument("smoothing requires a simplicial fan; triangulate first");
  Fan cur = f;
  while (true) {
    Int max_mult = 1;
    const Cone* worst = nullptr;
    for (const Cone& c : cur.maximal_cones) {
      Int m = multiplicity(c);
      if (m > max_mult) {  // cones are in canonical order, first hit is least
        max_mult = m;
        worst = &c;
      }
    }
    if (!worst) return cur;
    const auto points = parallelepiped_points(*worst);
    const RatVec* best_coeff = nullptr;
    const IntVec* best_point = nullptr;
    for (const auto& [coeff, point] : points) {
      if (is_zero(coeff)) continue;
      if (!best_coeff || lex_less(coeff, *best_coeff)) {
        best_coeff = &coeff;
        best_point = &point;
      }
    }
    if (!best_point) throw std::logic_error("singular cone with no interior lattice class");
    cur = equivariant_stellar(cur, g, primitive_part(*best_point));
  }
}

namespace detail {

inline std::vector<Cone> pull_triangulate(const Cone& c,
                                          const std::map<IntVec, IntVec>& orbit_key) {
  if (c.is_simplicial()) return {c};
  // pull at the ray with the least (orbit key, ray) priority
  std::size_t best = 0;
  auto priority_less = [&](const IntVec& a, const IntVec& b) {
    const IntVec& ka = orbit_key.at(a);
    const IntVec& kb = orbit_key.at(b);
    if (ka != kb) return lex_less(ka, kb);
    return lex_less(a, b);
  };
  for (std::size_t i = 1; i < c.rays.size(); ++i)
    if (priority_less(c.rays[i], c.rays[best])) best = i;
  const IntVec r = c.rays[best];
  std::vector<Cone> out;
  for (const IntVec& h : c.inequalities) {
    if (dot(h, r) == 0) continue;
    for (const Cone& t : pull_triangulate(facet_of(c, h), orbit_key)) {
      std::vector<IntVec> gens{r};
      gens.insert(gens.end(), t.rays.begin(), t.rays.end());
      out.push_back(cone_from_generators(c.ambient_rank, gens));
    }
  }
  return out;
}

}  // namespace detail

/// Pulling triangulation on the existing rays, with ray priority keyed by
/// group orbit so images of a cone triangulate compatibly. Validity and
/// stability of the result are asserted; inputs whose cones contain several
/// rays of one orbit can defeat the equivariance and are rejected.
inline Fan triangulate_equivariant(const Fan& f, const FiniteMatrixGroup& g) {
  bool simplicial = std::all_of(f.maximal_cones.begin(), f.maximal_cones.end(),
                                [](const Cone& c) { return c.is_simplicial(); });
  if (simplicial) return f;
  std::map<IntVec, IntVec> orbit_key;
  for (const IntVec& r : f.ray_index) {
    IntVec least = r;
    for (const IntMatrix& m : g.elements) {
      IntVec im = m.apply(r);
      if (lex_less(im, least)) least = im;
    }
    orbit_key[r] = least;
  }
  std::vector<Cone> out;
  for (const Cone& c : f.maximal_cones)
    for (Cone& t : detail::pull_triangulate(c, orbit_key)) out.push_back(std::move(t));
  Fan result = make_fan(f.ambient_rank, std::move(out));
  if (!validate_fan(result).valid || !is_stable(result, g).stable || !refines(result, f))
    throw std::logic_error("equivariant triangulation failed for this input");
  return result;
}

}  // namespace galfan
