#pragma once

#include "galfan/io.hpp"

namespace galfan {

// Built-in worked examples. F1-F5 live in a rank-3 lattice carrying a cyclic
// order-3 action; F6 is the rank-2 colored datum with an order-2 reflection.

inline IntMatrix epsilon_matrix() {
  return IntMatrix(3, 3, {Int(0), Int(-1), Int(0), Int(1), Int(-1), Int(0), Int(0), Int(0), Int(1)});
}

inline FiniteMatrixGroup cyclic3_group() { return group_closure(3, {epsilon_matrix()}); }

inline IntMatrix swap2_matrix() { return IntMatrix(2, 2, {Int(0), Int(1), Int(1), Int(0)}); }

inline FiniteMatrixGroup swap2_group() { return group_closure(2, {swap2_matrix()}); }

inline Cone sigma_cone() {
  return cone_from_generators(3, {{5, 1, -5}, {-5, -5, 14}, {4, -1, 0}});
}

/// The orbit fan of sigma under the order-3 action: three smooth maximal
/// cones meeting pairwise in the origin only.
inline Fan sigma_fan() {
  IntMatrix eps = epsilon_matrix();
  Cone s = sigma_cone();
  Cone s1 = image(s, eps);
  Cone s2 = image(s1, eps);
  return make_fan(3, {s, s1, s2});
}

namespace fixtures_detail {

inline std::vector<IntVec> orbit_triple(const IntVec& v) {
  IntMatrix eps = epsilon_matrix();
  IntVec v2 = eps.apply(v);
  IntVec v3 = eps.apply(v2);
  return {v, v2, v3};
}

inline std::vector<Cone> with_epsilon_images(const std::vector<std::vector<IntVec>>& gens) {
  IntMatrix eps = epsilon_matrix();
  std::vector<Cone> cones;
  for (const auto& g : gens) {
    Cone c = cone_from_generators(3, g);
    cones.push_back(c);
    Cone c1 = image(c, eps);
    cones.push_back(c1);
    cones.push_back(image(c1, eps));
  }
  return cones;
}

}  // namespace fixtures_detail

/// The complete simplicial fan containing sigma, before the refinement.
inline Fan sigma0_fan() {
  auto r = fixtures_detail::orbit_triple({-5, -5, 14});
  auto s = fixtures_detail::orbit_triple({4, -1, 0});
  auto t = fixtures_detail::orbit_triple({5, 1, -5});
  std::vector<std::vector<IntVec>> gens = {
      {r[0], t[2], s[0]},  // Cone(r1, t3, s1)
      {t[2], s[0], t[0]},  // Cone(t3, s1, t1)
      {r[0], s[0], t[0]},  // sigma
      {r[0], r[1], t[0]},  // Cone(r1, r2, t1)
      {r[0], r[1], r[2]},  // fixed by the action
      {t[0], t[1], t[2]},  // fixed by the action
  };
  return make_fan(3, fixtures_detail::with_epsilon_images(gens));
}

/// The refinement of sigma0 along the orbits of r, w, t and -w.
inline Fan sigma0_refined_fan() {
  auto r1 = fixtures_detail::orbit_triple({-5, -5, 14});
  auto s1 = fixtures_detail::orbit_triple({4, -1, 0});
  auto t1 = fixtures_detail::orbit_triple({5, 1, -5});
  IntVec r = {0, -5, 28};
  IntVec t = {1, -4, -10};
  IntVec w = {0, 0, 1};
  IntVec mw = {0, 0, -1};
  std::vector<std::vector<IntVec>> gens = {
      {r1[0], r, t1[0]},  {r, r1[1], t1[0]},  {r1[0], r, w},     {r, r1[1], w},
      {r1[0], s1[0], t1[0]}, {r1[0], s1[0], t1[2]}, {t1[2], s1[0], t}, {t, t1[0], s1[0]},
      {t1[2], t, mw},     {t, t1[0], mw},
  };
  return make_fan(3, fixtures_detail::with_epsilon_images(gens));
}

/// The rank-2 datum of the reflection example: two colors with rho images
/// (0,1) and (1,0), valuation cone {x + y <= 0}, the coordinate swap acting.
inline SphericalDatum su21_datum() {
  Cone valuation = cone_from_inequalities(2, {{-1, -1}});
  std::vector<Color> colors = {{"D1", {0, 1}}, {"D2", {1, 0}}};
  return make_spherical_datum(2, valuation, colors, swap2_group());
}

/// The colored fan of the reflection example. The corrected variant uses
/// (1,-2) as the second generator; the printed variant keeps (1,-1), whose
/// cone has its relative interior entirely outside the valuation cone.
inline ColoredFan su21_colored_fan(bool corrected = true) {
  SphericalDatum d = su21_datum();
  IntVec second = corrected ? IntVec{1, -2} : IntVec{1, -1};
  Cone c1 = cone_from_generators(2, {{0, 1}, second});
  Cone c2 = image(c1, swap2_matrix());
  return make_colored_fan(d, {make_colored_cone(c1, {"D1"}), make_colored_cone(c2, {"D2"})});
}

/// The hand-built non-quasi-projectivity witness for the sigma fan: the
/// vertical vector (0,0,-151) is a difference of boundary points across the
/// full cone cycle.
inline CyclicDifferenceCertificate sigma_cyclic_certificate() {
  Fan f = sigma_fan();
  IntMatrix eps = epsilon_matrix();
  Cone s = sigma_cone();
  auto index_of = [&](const Cone& c) {
    for (std::size_t i = 0; i < f.maximal_cones.size(); ++i)
      if (f.maximal_cones[i] == c) return i;
    throw std::logic_error("cone not found in the sigma fan");
  };
  CyclicDifferenceCertificate cert;
  cert.difference = to_rat(IntVec{0, 0, -151});
  IntVec p = {45, 0, -25};
  IntVec q = {45, 0, 126};
  Cone cur = s;
  for (int i = 0; i < 3; ++i) {
    cert.steps.push_back({index_of(cur), to_rat(p), to_rat(q)});
    p = eps.apply(p);
    q = eps.apply(q);
    cur = image(cur, eps);
  }
  return cert;
}

struct Fixture {
  std::string name;
  Document payload;
  std::string notes;
};

/// Canonical fixtures, as documents in the interchange schema:
///   F1 the lattice with the order-3 action, no cones
///   F2 the single smooth cone sigma
///   F3 the orbit fan of sigma
///   F4 the complete fan sigma0
///   F5 the refined fan sigma0'
///   F6 the rank-2 colored fan (corrected second generator)
///   F6-printed the same with the boundary-degenerate generator; fails the
///   colored-cone support axiom and is shipped for reference
inline Fixture load_example(const std::string& name) {
  if (name == "F1") {
    std::string notes = "rank-3 lattice with the cyclic order-3 automorphism; no cones";
    return {name, fan_document(3, make_fan(3, {}), cyclic3_group(), notes), notes};
  }
  if (name == "F2") {
    std::string notes = "the smooth strictly convex cone sigma, alone";
    return {name, fan_document(3, make_fan(3, {sigma_cone()}), cyclic3_group(), notes), notes};
  }
  if (name == "F3") {
    std::string notes = "orbit fan of sigma: stable, smooth, not quasi-projective";
    return {name, fan_document(3, sigma_fan(), cyclic3_group(), notes), notes};
  }
  if (name == "F4") {
    std::string notes = "complete simplicial stable fan containing sigma";
    return {name, fan_document(3, sigma0_fan(), cyclic3_group(), notes), notes};
  }
  if (name == "F5") {
    std::string notes = "refinement of F4 along the orbits of (0,-5,28), (0,0,1), (1,-4,-10), (0,0,-1)";
    return {name, fan_document(3, sigma0_refined_fan(), cyclic3_group(), notes), notes};
  }
  if (name == "F6") {
    std::string notes =
        "rank-2 colored fan under the coordinate swap; second generator (1,-2) places the "
        "relative interior inside the valuation cone";
    return {name, colored_fan_document(su21_colored_fan(true), notes), notes};
  }
  if (name == "F6-printed") {
    std::string notes =
        "variant of F6 with second generator (1,-1): that vector lies on the boundary line "
        "x+y=0 of the valuation cone and the relative interior of the cone misses the "
        "valuation cone entirely, so the colored-cone support axiom fails; kept for reference";
    return {name, colored_fan_document(su21_colored_fan(false), notes), notes};
  }
  throw std::invalid_argument("unknown example: " + name);
}

inline const std::vector<std::string>& example_names() {
  static const std::vector<std::string> names = {"F1", "F2", "F3", "F4",
                                                 "F5", "F6", "F6-printed"};
  return names;
}

}  // namespace galfan
