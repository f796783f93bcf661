#pragma once

#include "galfan/matrix.hpp"
#include "galfan/simplex.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <set>
#include <vector>

namespace galfan {

enum class Containment { kClosed, kRelativeInterior };

/// Rational polyhedral cone with both descriptions, canonical after
/// construction: rays are primitive, reduced modulo the lineality space and
/// lex-sorted; inequalities are the facet normals valid on the span, reduced
/// modulo span_perp. Two cones are equal iff their canonical fields are.
struct Cone {
  std::size_t ambient_rank = 0;
  std::vector<IntVec> rays;
  std::vector<IntVec> inequalities;
  std::vector<IntVec> span_basis;
  std::vector<IntVec> lineality_basis;
  std::vector<IntVec> span_perp;
  std::size_t dim = 0;

  bool is_strictly_convex() const { return lineality_basis.empty(); }
  bool is_simplicial() const { return is_strictly_convex() && rays.size() == dim; }
  bool is_zero() const { return dim == 0; }
  bool is_full_space() const { return lineality_basis.size() == ambient_rank; }

  bool operator==(const Cone& o) const {
    return ambient_rank == o.ambient_rank && rays == o.rays &&
           lineality_basis == o.lineality_basis;
  }
};

inline bool cone_less(const Cone& a, const Cone& b) {
  if (a.rays != b.rays)
    return std::lexicographical_compare(a.rays.begin(), a.rays.end(), b.rays.begin(),
                                        b.rays.end(), LexLess{});
  return std::lexicographical_compare(a.lineality_basis.begin(), a.lineality_basis.end(),
                                      b.lineality_basis.begin(), b.lineality_basis.end(),
                                      LexLess{});
}

namespace detail {

/// Reduced row echelon basis of the span of `rows`: primitive integer rows,
/// positive pivot entries, pivot columns ascending. Canonical per subspace.
inline std::vector<IntVec> rref_basis(const std::vector<IntVec>& rows, std::size_t rank) {
  std::vector<IntVec> work;
  for (const IntVec& r : rows)
    if (!is_zero(r)) work.push_back(r);
  std::vector<IntVec> result;
  for (std::size_t col = 0; col < rank; ++col) {
    std::size_t pick = work.size();
    for (std::size_t i = 0; i < work.size(); ++i)
      if (work[i][col] != 0) {
        pick = i;
        break;
      }
    if (pick == work.size()) continue;
    IntVec p = work[pick];
    work.erase(work.begin() + pick);
    auto eliminate = [&](IntVec& r) {
      if (r[col] != 0) r = sub(scale(p[col], r), scale(r[col], p));
    };
    for (IntVec& r : result) eliminate(r);
    std::size_t w = 0;
    for (IntVec& r : work) {
      eliminate(r);
      if (!is_zero(r)) work[w++] = r;
    }
    work.resize(w);
    result.push_back(std::move(p));
  }
  for (IntVec& r : result) {
    r = primitive_part(r);
    for (const Int& x : r) {
      if (x == 0) continue;
      if (x < 0) r = negate(r);
      break;
    }
  }
  return result;
}

/// Canonical representative of v modulo the subspace given as an RREF basis.
/// The result is a positive multiple of v plus subspace elements.
inline IntVec reduce_mod(IntVec v, const std::vector<IntVec>& rref) {
  for (const IntVec& row : rref) {
    std::size_t c = 0;
    while (row[c] == 0) ++c;
    if (v[c] != 0) v = sub(scale(row[c], v), scale(v[c], row));
  }
  return v;
}

struct DdState {
  std::vector<IntVec> lineality;
  std::vector<IntVec> rays;
  std::vector<std::vector<char>> tight;  // per ray, per processed halfspace
};

// Double description: intersect the full space with halfspaces {h.x >= 0}
// one at a time, maintaining a lineality basis plus the extremal rays of the
// pointed part. Adjacency of rays is decided combinatorially from the tight
// sets, which is valid because the representation is kept minimal.
inline DdState dd_halfspaces(std::size_t rank, const std::vector<IntVec>& halfspaces) {
  DdState st;
  for (std::size_t i = 0; i < rank; ++i) {
    IntVec e(rank, Int(0));
    e[i] = 1;
    st.lineality.push_back(std::move(e));
  }
  std::size_t processed = 0;
  for (const IntVec& h : halfspaces) {
    if (h.size() != rank) throw std::invalid_argument("halfspace has wrong dimension");
    if (is_zero(h)) {
      for (auto& t : st.tight) t.push_back(1);
      ++processed;
      continue;
    }

    std::size_t bi = st.lineality.size();
    for (std::size_t i = 0; i < st.lineality.size(); ++i)
      if (dot(h, st.lineality[i]) != 0) {
        bi = i;
        break;
      }
    if (bi < st.lineality.size()) {
      // a lineality direction crosses the hyperplane: it becomes the single
      // ray off the plane, everything else is projected into the plane
      IntVec b0 = st.lineality[bi];
      Int hb = dot(h, b0);
      if (hb < 0) {
        b0 = negate(b0);
        hb = -hb;
      }
      std::vector<IntVec> new_lin;
      for (std::size_t i = 0; i < st.lineality.size(); ++i) {
        if (i == bi) continue;
        Int hx = dot(h, st.lineality[i]);
        new_lin.push_back(primitive_part(sub(scale(hb, st.lineality[i]), scale(hx, b0))));
      }
      st.lineality = std::move(new_lin);
      for (std::size_t k = 0; k < st.rays.size(); ++k) {
        Int hr = dot(h, st.rays[k]);
        st.rays[k] = primitive_part(sub(scale(hb, st.rays[k]), scale(hr, b0)));
        st.tight[k].push_back(1);
      }
      st.rays.push_back(std::move(b0));
      st.tight.emplace_back(processed, char(1));
      st.tight.back().push_back(0);
      ++processed;
      continue;
    }

    std::vector<Int> vals(st.rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t k = 0; k < st.rays.size(); ++k) {
      vals[k] = dot(h, st.rays[k]);
      if (vals[k] > 0) pos.push_back(k);
      if (vals[k] < 0) neg.push_back(k);
    }
    if (neg.empty()) {
      for (std::size_t k = 0; k < st.rays.size(); ++k) st.tight[k].push_back(vals[k] == 0);
      ++processed;
      continue;
    }

    auto adjacent = [&](std::size_t p, std::size_t q) {
      std::vector<char> common(processed);
      for (std::size_t i = 0; i < processed; ++i) common[i] = st.tight[p][i] && st.tight[q][i];
      for (std::size_t r = 0; r < st.rays.size(); ++r) {
        if (r == p || r == q) continue;
        bool covers = true;
        for (std::size_t i = 0; i < processed && covers; ++i)
          if (common[i] && !st.tight[r][i]) covers = false;
        if (covers) return false;
      }
      return true;
    };

    std::vector<IntVec> new_rays;
    std::vector<std::vector<char>> new_tight;
    for (std::size_t k = 0; k < st.rays.size(); ++k) {
      if (vals[k] < 0) continue;
      new_rays.push_back(st.rays[k]);
      new_tight.push_back(st.tight[k]);
      new_tight.back().push_back(vals[k] == 0);
    }
    for (std::size_t p : pos)
      for (std::size_t q : neg) {
        if (!adjacent(p, q)) continue;
        IntVec w = primitive_part(sub(scale(vals[p], st.rays[q]), scale(vals[q], st.rays[p])));
        std::vector<char> t(processed + 1);
        for (std::size_t i = 0; i < processed; ++i) t[i] = st.tight[p][i] && st.tight[q][i];
        t[processed] = 1;
        new_rays.push_back(std::move(w));
        new_tight.push_back(std::move(t));
      }
    st.rays = std::move(new_rays);
    st.tight = std::move(new_tight);
    ++processed;
  }
  return st;
}

inline std::vector<IntVec> canonical_ray_set(const std::vector<IntVec>& rays,
                                             const std::vector<IntVec>& lineality_rref) {
  std::vector<IntVec> out;
  for (const IntVec& r : rays) {
    IntVec red = reduce_mod(r, lineality_rref);
    if (is_zero(red)) throw std::logic_error("ray degenerated into the lineality space");
    out.push_back(primitive_part(red));
  }
  std::sort(out.begin(), out.end(), LexLess{});
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

/// Is v a nonnegative combination of the given generators? Decided by exact
/// LP; used as the generator-side membership route, independent of the
/// inequality description.
inline bool in_nonnegative_span(std::size_t rank, const std::vector<IntVec>& gens,
                                const IntVec& v) {
  if (is_zero(v)) return true;
  LinearSystem sys(gens.size());
  for (std::size_t i = 0; i < rank; ++i) {
    RatVec row(gens.size());
    for (std::size_t k = 0; k < gens.size(); ++k) row[k] = Rat(gens[k][i]);
    sys.add_equality(std::move(row), Rat(v[i]));
  }
  for (std::size_t k = 0; k < gens.size(); ++k) {
    RatVec row(gens.size(), Rat(0));
    row[k] = 1;
    sys.add_inequality(std::move(row), Rat(0));
  }
  return lp_feasible(sys).feasible;
}

inline Cone cone_from_generators(std::size_t rank, const std::vector<IntVec>& generators) {
  if (rank == 0) throw std::invalid_argument("ambient rank must be positive");
  std::vector<IntVec> gens;
  for (const IntVec& g : generators) {
    if (g.size() != rank) throw std::invalid_argument("generator has wrong dimension");
    if (!is_zero(g)) gens.push_back(g);
  }

  Cone c;
  c.ambient_rank = rank;

  // dual cone {h : h.g >= 0 for all generators}; its lineality is span_perp
  // and its rays modulo span_perp are the facet normals
  detail::DdState dual = detail::dd_halfspaces(rank, gens);
  c.span_perp = detail::rref_basis(dual.lineality, rank);
  c.inequalities = detail::canonical_ray_set(dual.rays, c.span_perp);

  // rebuild the primal side from the inequality description
  std::vector<IntVec> halfspaces = c.inequalities;
  for (const IntVec& s : c.span_perp) {
    halfspaces.push_back(s);
    halfspaces.push_back(negate(s));
  }
  detail::DdState primal = detail::dd_halfspaces(rank, halfspaces);
  c.lineality_basis = detail::rref_basis(primal.lineality, rank);
  c.rays = detail::canonical_ray_set(primal.rays, c.lineality_basis);

  std::vector<IntVec> span_gens = c.rays;
  span_gens.insert(span_gens.end(), c.lineality_basis.begin(), c.lineality_basis.end());
  c.span_basis = detail::rref_basis(span_gens, rank);
  c.dim = c.span_basis.size();

  if (c.dim + c.span_perp.size() != rank)
    throw std::logic_error("cone construction failed: span/perp dimension mismatch");

  // cross-check the two descriptions against the input
  for (const IntVec& g : gens) {
    for (const IntVec& h : c.inequalities)
      if (dot(h, g) < 0) throw std::logic_error("cone construction failed: generator cut off");
    for (const IntVec& s : c.span_perp)
      if (dot(s, g) != 0) throw std::logic_error("cone construction failed: generator off span");
  }
  for (const IntVec& r : c.rays)
    if (!in_nonnegative_span(rank, gens, r))
      throw std::logic_error("cone construction failed: spurious extremal ray");
  for (const IntVec& l : c.lineality_basis)
    if (!in_nonnegative_span(rank, gens, l) || !in_nonnegative_span(rank, gens, negate(l)))
      throw std::logic_error("cone construction failed: spurious lineality");
  return c;
}

inline Cone cone_from_inequalities(std::size_t rank, const std::vector<IntVec>& ineqs) {
  if (rank == 0) throw std::invalid_argument("ambient rank must be positive");
  detail::DdState primal = detail::dd_halfspaces(rank, ineqs);
  std::vector<IntVec> gens = primal.rays;
  for (const IntVec& l : primal.lineality) {
    gens.push_back(l);
    gens.push_back(negate(l));
  }
  Cone c = cone_from_generators(rank, gens);
  for (const IntVec& h : ineqs)
    for (const IntVec& r : c.rays)
      if (dot(h, r) < 0) throw std::logic_error("cone construction failed: inequality violated");
  return c;
}

inline Cone zero_cone(std::size_t rank) { return cone_from_generators(rank, {}); }

inline Cone full_space_cone(std::size_t rank) {
  return cone_from_inequalities(rank, {});
}

inline bool contains(const Cone& c, const RatVec& v, Containment mode) {
  if (v.size() != c.ambient_rank) throw std::invalid_argument("point has wrong dimension");
  for (const IntVec& s : c.span_perp)
    if (dot(s, v) != 0) return false;
  for (const IntVec& h : c.inequalities) {
    Rat d = dot(h, v);
    if (mode == Containment::kClosed ? d < 0 : d <= 0) return false;
  }
  return true;
}

inline bool contains(const Cone& c, const IntVec& v, Containment mode) {
  return contains(c, to_rat(v), mode);
}

/// Membership via the generator description (rays + lineality), decided by
/// exact LP. Kept separate from `contains` so the dual descriptions stay
/// independently testable.
inline bool contains_by_rays(const Cone& c, const IntVec& v) {
  std::vector<IntVec> gens = c.rays;
  for (const IntVec& l : c.lineality_basis) {
    gens.push_back(l);
    gens.push_back(negate(l));
  }
  return in_nonnegative_span(c.ambient_rank, gens, v);
}

inline bool cone_contains_cone(const Cone& outer, const Cone& inner) {
  for (const IntVec& r : inner.rays)
    if (!contains(outer, r, Containment::kClosed)) return false;
  for (const IntVec& l : inner.lineality_basis)
    if (!contains(outer, l, Containment::kClosed) ||
        !contains(outer, negate(l), Containment::kClosed))
      return false;
  return true;
}

inline Cone intersect(const Cone& a, const Cone& b) {
  if (a.ambient_rank != b.ambient_rank)
    throw std::invalid_argument("cone intersection: rank mismatch");
  std::vector<IntVec> halfspaces = a.inequalities;
  halfspaces.insert(halfspaces.end(), b.inequalities.begin(), b.inequalities.end());
  for (const IntVec& s : a.span_perp) {
    halfspaces.push_back(s);
    halfspaces.push_back(negate(s));
  }
  for (const IntVec& s : b.span_perp) {
    halfspaces.push_back(s);
    halfspaces.push_back(negate(s));
  }
  return cone_from_inequalities(a.ambient_rank, halfspaces);
}

inline Cone dual_cone(const Cone& c) {
  std::vector<IntVec> gens = c.inequalities;
  for (const IntVec& s : c.span_perp) {
    gens.push_back(s);
    gens.push_back(negate(s));
  }
  return cone_from_generators(c.ambient_rank, gens);
}

/// The facet of c cut out by one of its stored inequalities.
inline Cone facet_of(const Cone& c, const IntVec& ineq) {
  std::vector<IntVec> tight;
  for (const IntVec& r : c.rays)
    if (dot(ineq, r) == 0) tight.push_back(r);
  return cone_from_generators(c.ambient_rank, tight);
}

/// All faces of a strictly convex cone, from the zero cone up to c itself.
inline std::vector<Cone> faces(const Cone& c) {
  if (!c.is_strictly_convex())
    throw std::invalid_argument("faces of a cone with lineality are not supported");
  std::vector<Cone> out;
  std::set<std::vector<IntVec>> seen;
  std::deque<Cone> queue{c};
  seen.insert(c.rays);
  while (!queue.empty()) {
    Cone f = std::move(queue.front());
    queue.pop_front();
    for (const IntVec& h : f.inequalities) {
      Cone sub = facet_of(f, h);
      if (seen.insert(sub.rays).second) queue.push_back(sub);
    }
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end(), [](const Cone& a, const Cone& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return cone_less(a, b);
  });
  return out;
}

inline bool is_face_of(const Cone& f, const Cone& c) {
  if (f.ambient_rank != c.ambient_rank) throw std::invalid_argument("rank mismatch");
  if (f.lineality_basis != c.lineality_basis) return false;
  if (!cone_contains_cone(c, f)) return false;
  // minimal face of c containing f: bind every inequality tight on all of f
  std::vector<IntVec> binding;
  for (const IntVec& h : c.inequalities) {
    bool tight = true;
    for (const IntVec& r : f.rays)
      if (dot(h, r) != 0) {
        tight = false;
        break;
      }
    if (tight) binding.push_back(h);
  }
  std::vector<IntVec> gens;
  for (const IntVec& r : c.rays) {
    bool keep = true;
    for (const IntVec& h : binding)
      if (dot(h, r) != 0) {
        keep = false;
        break;
      }
    if (keep) gens.push_back(r);
  }
  for (const IntVec& l : c.lineality_basis) {
    gens.push_back(l);
    gens.push_back(negate(l));
  }
  return cone_from_generators(c.ambient_rank, gens) == f;
}

/// Index of the sublattice spanned by the rays inside the lattice of the
/// span; the product of the Smith diagonal of the ray matrix.
inline Int multiplicity(const Cone& c) {
  if (!c.is_strictly_convex())
    throw std::invalid_argument("multiplicity of a cone with lineality");
  if (!c.is_simplicial()) throw std::invalid_argument("multiplicity of a non-simplicial cone");
  if (c.rays.empty()) return 1;
  SmithResult s = smith_normal_form(IntMatrix::from_columns(c.rays));
  Int m = 1;
  for (const Int& d : s.diag) m *= d;
  if (m == 0) throw std::logic_error("simplicial cone with degenerate ray matrix");
  return m;
}

inline bool is_smooth(const Cone& c) {
  if (!c.is_strictly_convex())
    throw std::invalid_argument("smoothness of a cone with lineality");
  return c.is_simplicial() && multiplicity(c) == 1;
}

inline Cone image(const Cone& c, const IntMatrix& m) {
  if (!m.is_square() || m.rows != c.ambient_rank || !is_unimodular(m))
    throw std::invalid_argument("cone image requires a unimodular matrix");
  std::vector<IntVec> gens;
  for (const IntVec& r : c.rays) gens.push_back(m.apply(r));
  for (const IntVec& l : c.lineality_basis) {
    gens.push_back(m.apply(l));
    gens.push_back(negate(m.apply(l)));
  }
  return cone_from_generators(c.ambient_rank, gens);
}

/// Sum of the primitive rays; lies in the relative interior for strictly
/// convex cones.
inline IntVec barycenter(const Cone& c) {
  IntVec b(c.ambient_rank, Int(0));
  for (const IntVec& r : c.rays) b = add(b, r);
  return b;
}

}  // namespace galfan
