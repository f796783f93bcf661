#pragma once

#include "galfan/quasi_projective.hpp"

#include <optional>

namespace galfan {

/// Outcome of the descent criterion: stability plus per-orbit
/// quasi-projectivity. A form over the base field exists exactly when the
/// fan is stable and no orbit fails.
struct DescentVerdict {
  bool stable = false;
  std::optional<std::pair<Cone, FarkasCertificate>> failing_orbit;
  bool has_form = false;
  std::vector<std::pair<Cone, SupportFamily>> per_orbit_support;  // orbit representative -> family
};

namespace detail {

/// Partition of the maximal cone indices into group orbits; each orbit is
/// keyed by its least cone, orbits sorted by representative.
inline std::vector<std::vector<std::size_t>> cone_orbits(const Fan& f,
                                                         const FiniteMatrixGroup& g) {
  std::map<std::vector<IntVec>, std::size_t> index_of;
  for (std::size_t i = 0; i < f.maximal_cones.size(); ++i) index_of[f.maximal_cones[i].rays] = i;
  std::vector<char> seen(f.maximal_cones.size(), 0);
  std::vector<std::vector<std::size_t>> orbits;
  for (std::size_t i = 0; i < f.maximal_cones.size(); ++i) {
    if (seen[i]) continue;
    std::vector<std::size_t> orbit;
    for (const IntMatrix& m : g.elements) {
      Cone im = image(f.maximal_cones[i], m);
      auto it = index_of.find(im.rays);
      if (it == index_of.end()) throw std::logic_error("orbit enumeration on an unstable fan");
      if (!seen[it->second]) {
        seen[it->second] = 1;
        orbit.push_back(it->second);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  return orbits;  // representatives ascend because cones are in canonical order
}

}  // namespace detail

inline DescentVerdict check_descent_toric(const Fan& f, const FiniteMatrixGroup& g) {
  if (!validate_fan(f).valid) throw std::invalid_argument("invalid fan");
  DescentVerdict verdict;
  verdict.stable = is_stable(f, g).stable;
  if (verdict.stable) {
    for (const auto& orbit : detail::cone_orbits(f, g)) {
      const Cone& rep = f.maximal_cones[orbit.front()];
      Fan orbit_fan = orbit_subfan(f, rep, g);
      QpResult qp = is_quasi_projective(orbit_fan);
      if (!qp.quasi_projective) {
        verdict.failing_orbit = std::make_pair(rep, std::move(*qp.certificate));
        verdict.per_orbit_support.clear();
        break;
      }
      verdict.per_orbit_support.emplace_back(rep, std::move(*qp.family));
    }
  }
  verdict.has_form = verdict.stable && !verdict.failing_orbit;
  return verdict;
}

/// Cases where per-orbit quasi-projectivity is automatic: two-dimensional
/// fans, and groups of order at most two (orbit fans then have one or two
/// maximal cones). Returns empty when no shortcut applies; never false.
inline std::optional<bool> shortcut_toric(const Fan& f, const FiniteMatrixGroup& g) {
  if (!is_stable(f, g).stable) return std::nullopt;
  if (f.ambient_rank == 2 || g.order() <= 2) return true;
  return std::nullopt;
}

struct ColoredDescentVerdict {
  bool stable = false;
  std::optional<std::pair<ColoredCone, FarkasCertificate>> failing_orbit;
  bool has_form = false;
  std::vector<std::pair<ColoredCone, SupportFamily>> per_orbit_support;
};

namespace detail {

inline std::vector<std::vector<std::size_t>> colored_cone_orbits(const ColoredFan& cf) {
  std::vector<char> seen(cf.maximal.size(), 0);
  auto find_index = [&](const ColoredCone& cc) {
    for (std::size_t i = 0; i < cf.maximal.size(); ++i)
      if (cf.maximal[i] == cc) return i;
    throw std::logic_error("orbit enumeration on an unstable colored fan");
  };
  std::vector<std::vector<std::size_t>> orbits;
  for (std::size_t i = 0; i < cf.maximal.size(); ++i) {
    if (seen[i]) continue;
    std::vector<std::size_t> orbit;
    for (std::size_t ei = 0; ei < cf.datum.group.elements.size(); ++ei) {
      std::size_t idx = find_index(colored_image(cf.datum, cf.maximal[i], ei));
      if (!seen[idx]) {
        seen[idx] = 1;
        orbit.push_back(idx);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

}  // namespace detail

inline ColoredDescentVerdict check_descent_colored(const ColoredFan& cf) {
  if (!validate_colored_fan(cf).valid) throw std::invalid_argument("invalid colored fan");
  ColoredDescentVerdict verdict;
  verdict.stable = is_stable_colored(cf).stable;
  if (verdict.stable) {
    for (const auto& orbit : detail::colored_cone_orbits(cf)) {
      const ColoredCone& rep = cf.maximal[orbit.front()];
      std::vector<ColoredCone> cones;
      for (std::size_t ei = 0; ei < cf.datum.group.elements.size(); ++ei)
        cones.push_back(colored_image(cf.datum, rep, ei));
      ColoredFan orbit_fan = make_colored_fan(cf.datum, std::move(cones));
      QpResult qp = is_quasi_projective_colored(orbit_fan);
      if (!qp.quasi_projective) {
        verdict.failing_orbit = std::make_pair(rep, std::move(*qp.certificate));
        verdict.per_orbit_support.clear();
        break;
      }
      verdict.per_orbit_support.emplace_back(rep, std::move(*qp.family));
    }
  }
  verdict.has_form = verdict.stable && !verdict.failing_orbit;
  return verdict;
}

/// Situations where stability alone settles the question: the group acts
/// trivially on V; rank one; horospherical of rank two or under a group of
/// order at most two; no colors with rank two or group order at most two.
inline std::optional<bool> shortcut_colored(const ColoredFan& cf) {
  if (!is_stable_colored(cf).stable) return std::nullopt;
  const SphericalDatum& d = cf.datum;
  if (is_split(d)) return true;
  if (d.rank == 1) return true;
  if (is_horospherical(d) && (d.rank == 2 || d.group.order() <= 2)) return true;
  if (has_no_colors(cf) && (d.rank == 2 || d.group.order() <= 2)) return true;
  return std::nullopt;
}

}  // namespace galfan
