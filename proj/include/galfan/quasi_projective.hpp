#pragma once

#include "galfan/colored.hpp"
#include "galfan/fan.hpp"

#include <optional>

namespace galfan {

/// One linear form per maximal cone, indexed like the fan's canonical cone
/// order: the combinatorial witness of quasi-projectivity.
struct SupportFamily {
  std::vector<RatVec> forms;

  bool operator==(const SupportFamily&) const = default;
};

namespace detail {

inline RatVec pair_row(std::size_t n, std::size_t blocks, std::size_t i, std::size_t j,
                       const IntVec& v) {
  RatVec row(n * blocks, Rat(0));
  for (std::size_t k = 0; k < n; ++k) {
    row[i * n + k] = Rat(v[k]);
    row[j * n + k] = Rat(-v[k]);
  }
  return row;
}

}  // namespace detail

/// Feasibility system for a family of linear forms, one per maximal cone,
/// that agree on pairwise intersections and strictly dominate on interiors.
/// Strictness is normalized to ">= 1" at the ray-sum barycenter: the system
/// is homogeneous, so any positive slack rescales.
inline LinearSystem encode_fan_qp(const Fan& f) {
  const std::size_t n = f.ambient_rank;
  const std::size_t m = f.maximal_cones.size();
  LinearSystem sys(n * m);
  if (m <= 1) return sys;
  std::vector<std::vector<Cone>> overlaps(m, std::vector<Cone>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      overlaps[i][j] = intersect(f.maximal_cones[i], f.maximal_cones[j]);
      overlaps[j][i] = overlaps[i][j];
    }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      for (const IntVec& g : overlaps[i][j].rays)
        sys.add_equality(detail::pair_row(n, m, i, j, g), Rat(0));
      for (const IntVec& g : f.maximal_cones[i].rays)
        sys.add_inequality(detail::pair_row(n, m, i, j, g), Rat(0));
      sys.add_inequality(detail::pair_row(n, m, i, j, barycenter(f.maximal_cones[i])), Rat(1));
    }
  return sys;
}

/// Direct evaluation of the quasi-projectivity conditions, no solver: the
/// forms agree on every ray of every pairwise intersection, l_i - l_j is
/// nonnegative on the rays of cone i and strictly positive at its
/// barycenter.
inline bool verify_support_family(const Fan& f, const SupportFamily& fam) {
  const std::size_t m = f.maximal_cones.size();
  if (fam.forms.size() != m) return false;
  for (const RatVec& l : fam.forms)
    if (l.size() != f.ambient_rank) return false;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      RatVec diff = sub(fam.forms[i], fam.forms[j]);
      Cone w = intersect(f.maximal_cones[i], f.maximal_cones[j]);
      for (const IntVec& g : w.rays)
        if (dot(to_rat(g), diff) != 0) return false;
      for (const IntVec& g : f.maximal_cones[i].rays)
        if (dot(to_rat(g), diff) < 0) return false;
      if (dot(to_rat(barycenter(f.maximal_cones[i])), diff) <= 0) return false;
    }
  return true;
}

struct QpResult {
  bool quasi_projective = false;
  std::optional<SupportFamily> family;          // on yes
  std::optional<FarkasCertificate> certificate; // on no
};

namespace detail {

inline SupportFamily split_blocks(const RatVec& x, std::size_t n, std::size_t m) {
  SupportFamily fam;
  for (std::size_t i = 0; i < m; ++i)
    fam.forms.emplace_back(x.begin() + i * n, x.begin() + (i + 1) * n);
  return fam;
}

}  // namespace detail

inline QpResult is_quasi_projective(const Fan& f) {
  LinearSystem sys = encode_fan_qp(f);
  LpResult lp = lp_feasible(sys);
  QpResult out;
  out.quasi_projective = lp.feasible;
  if (lp.feasible) {
    SupportFamily fam = detail::split_blocks(*lp.solution, f.ambient_rank, f.maximal_cones.size());
    if (!sys.satisfied_by(*lp.solution) || !verify_support_family(f, fam))
      throw std::logic_error("support family failed re-verification");
    out.family = std::move(fam);
  } else {
    if (!verify_farkas(sys, *lp.farkas))
      throw std::logic_error("infeasibility certificate failed re-verification");
    out.certificate = std::move(lp.farkas);
  }
  return out;
}

/// The hand-checkable obstruction: a vector expressible as a difference
/// p_i - q_i across a cycle of cones. If a support family existed, the
/// telescoping sum of its strict positive values on the difference would be
/// zero.
struct CyclicStep {
  std::size_t cone_index = 0;
  RatVec point_in;    // lies in the indexed cone
  RatVec point_next;  // lies in the next cone of the cycle
};

struct CyclicDifferenceCertificate {
  RatVec difference;
  std::vector<CyclicStep> steps;
};

inline bool verify_cyclic_certificate(const Fan& f, const CyclicDifferenceCertificate& cert) {
  const std::size_t k = cert.steps.size();
  if (cert.difference.size() != f.ambient_rank)
    throw std::invalid_argument("malformed cycle: bad difference dimension");
  for (const CyclicStep& s : cert.steps) {
    if (s.cone_index >= f.maximal_cones.size())
      throw std::invalid_argument("malformed cycle: cone index out of range");
    if (s.point_in.size() != f.ambient_rank || s.point_next.size() != f.ambient_rank)
      throw std::invalid_argument("malformed cycle: bad point dimension");
  }
  if (k < 2) return false;
  for (std::size_t i = 0; i < k; ++i) {
    const CyclicStep& s = cert.steps[i];
    const CyclicStep& next = cert.steps[(i + 1) % k];
    const Cone& own = f.maximal_cones[s.cone_index];
    const Cone& nxt = f.maximal_cones[next.cone_index];
    if (!contains(own, s.point_in, Containment::kClosed)) return false;
    if (!contains(nxt, s.point_next, Containment::kClosed)) return false;
    if (sub(s.point_in, s.point_next) != cert.difference) return false;
    if (contains(nxt, s.point_in, Containment::kClosed)) return false;
    if (contains(own, cert.difference, Containment::kClosed)) return false;
  }
  return true;
}

/// Colored analogue: equalities on the full pairwise cone intersections
/// (maximal colored cones may overlap in any dimension), nonnegativity on
/// the rays of cone ∩ valuation cone, and strictness at the barycenter of
/// every face of cone ∩ valuation cone whose relative interior lies in the
/// relative interior of the cone.
inline std::vector<Cone> relevant_faces(const SphericalDatum& d, const Cone& c) {
  Cone cv = intersect(c, d.valuation_cone);
  std::vector<Cone> out;
  for (const Cone& face : faces(cv))
    if (contains(c, barycenter(face), Containment::kRelativeInterior)) out.push_back(face);
  std::sort(out.begin(), out.end(), [](const Cone& a, const Cone& b) {
    if (a.dim != b.dim) return a.dim > b.dim;
    return cone_less(a, b);
  });
  return out;
}

inline LinearSystem encode_colored_qp(const ColoredFan& cf) {
  const std::size_t n = cf.datum.rank;
  const std::size_t m = cf.maximal.size();
  LinearSystem sys(n * m);
  if (m <= 1) return sys;
  std::vector<Cone> cv(m);
  std::vector<std::vector<Cone>> relevant(m);
  for (std::size_t i = 0; i < m; ++i) {
    cv[i] = intersect(cf.maximal[i].cone, cf.datum.valuation_cone);
    relevant[i] = relevant_faces(cf.datum, cf.maximal[i].cone);
  }
  std::vector<std::vector<Cone>> overlaps(m, std::vector<Cone>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      overlaps[i][j] = intersect(cf.maximal[i].cone, cf.maximal[j].cone);
      overlaps[j][i] = overlaps[i][j];
    }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      for (const IntVec& g : overlaps[i][j].rays)
        sys.add_equality(detail::pair_row(n, m, i, j, g), Rat(0));
      for (const IntVec& g : cv[i].rays)
        sys.add_inequality(detail::pair_row(n, m, i, j, g), Rat(0));
      for (const Cone& face : relevant[i])
        sys.add_inequality(detail::pair_row(n, m, i, j, barycenter(face)), Rat(1));
    }
  return sys;
}

inline bool verify_support_family_colored(const ColoredFan& cf, const SupportFamily& fam) {
  const std::size_t m = cf.maximal.size();
  if (fam.forms.size() != m) return false;
  for (const RatVec& l : fam.forms)
    if (l.size() != cf.datum.rank) return false;
  for (std::size_t i = 0; i < m; ++i) {
    Cone cv = intersect(cf.maximal[i].cone, cf.datum.valuation_cone);
    std::vector<Cone> rel = relevant_faces(cf.datum, cf.maximal[i].cone);
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      RatVec diff = sub(fam.forms[i], fam.forms[j]);
      Cone w = intersect(cf.maximal[i].cone, cf.maximal[j].cone);
      for (const IntVec& g : w.rays)
        if (dot(to_rat(g), diff) != 0) return false;
      for (const IntVec& g : cv.rays)
        if (dot(to_rat(g), diff) < 0) return false;
      for (const Cone& face : rel)
        if (dot(to_rat(barycenter(face)), diff) <= 0) return false;
    }
  }
  return true;
}

inline QpResult is_quasi_projective_colored(const ColoredFan& cf) {
  LinearSystem sys = encode_colored_qp(cf);
  LpResult lp = lp_feasible(sys);
  QpResult out;
  out.quasi_projective = lp.feasible;
  if (lp.feasible) {
    SupportFamily fam = detail::split_blocks(*lp.solution, cf.datum.rank, cf.maximal.size());
    if (!sys.satisfied_by(*lp.solution) || !verify_support_family_colored(cf, fam))
      throw std::logic_error("support family failed re-verification");
    out.family = std::move(fam);
  } else {
    if (!verify_farkas(sys, *lp.farkas))
      throw std::logic_error("infeasibility certificate failed re-verification");
    out.certificate = std::move(lp.farkas);
  }
  return out;
}

}  // namespace galfan
