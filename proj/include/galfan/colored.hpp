#pragma once

#include "galfan/fan.hpp"

#include <map>
#include <string>

namespace galfan {

struct Color {
  std::string name;
  IntVec rho;  // valuation image in V

  bool operator==(const Color&) const = default;
};

/// Combinatorial input data of a spherical homogeneous space: the valuation
/// cone, the colors with their rho images, and the Galois action on V. The
/// induced permutation of colors is determined by equivariance (rho of the
/// image color must be the image of rho) and is derived per group element;
/// data where that correspondence is not unique is rejected.
struct SphericalDatum {
  std::size_t rank = 0;
  Cone valuation_cone;
  std::vector<Color> colors;  // sorted by name
  FiniteMatrixGroup group;
  std::vector<std::vector<std::size_t>> color_action;  // per group element

  std::size_t color_index(const std::string& name) const {
    for (std::size_t i = 0; i < colors.size(); ++i)
      if (colors[i].name == name) return i;
    throw std::invalid_argument("unknown color name: " + name);
  }
};

inline SphericalDatum make_spherical_datum(std::size_t rank, Cone valuation_cone,
                                           std::vector<Color> colors, FiniteMatrixGroup group) {
  if (valuation_cone.ambient_rank != rank)
    throw std::invalid_argument("valuation cone has wrong ambient rank");
  if (valuation_cone.dim != rank)
    throw std::invalid_argument("valuation cone must have nonempty interior");
  if (group.rank != rank) throw std::invalid_argument("group rank mismatch");
  std::sort(colors.begin(), colors.end(),
            [](const Color& a, const Color& b) { return a.name < b.name; });
  for (std::size_t i = 0; i + 1 < colors.size(); ++i)
    if (colors[i].name == colors[i + 1].name)
      throw std::invalid_argument("duplicate color name: " + colors[i].name);
  for (const Color& c : colors)
    if (c.rho.size() != rank) throw std::invalid_argument("color rho has wrong dimension");
  for (const IntMatrix& m : group.generators)
    if (!(image(valuation_cone, m) == valuation_cone))
      throw std::invalid_argument("group does not preserve the valuation cone");

  SphericalDatum d;
  d.rank = rank;
  d.valuation_cone = std::move(valuation_cone);
  d.colors = std::move(colors);
  d.group = std::move(group);
  d.color_action.reserve(d.group.elements.size());
  for (const IntMatrix& m : d.group.elements) {
    std::vector<std::size_t> perm(d.colors.size());
    std::vector<char> used(d.colors.size(), 0);
    for (std::size_t i = 0; i < d.colors.size(); ++i) {
      IntVec target = m.apply(d.colors[i].rho);
      std::size_t found = d.colors.size();
      for (std::size_t j = 0; j < d.colors.size(); ++j)
        if (d.colors[j].rho == target) {
          if (found != d.colors.size())
            throw std::invalid_argument("color action ambiguous: repeated rho image");
          found = j;
        }
      if (found == d.colors.size())
        throw std::invalid_argument("group does not permute the color rho images");
      if (used[found])
        throw std::invalid_argument("color action is not a permutation");
      used[found] = 1;
      perm[i] = found;
    }
    d.color_action.push_back(std::move(perm));
  }
  return d;
}

/// (C, F): a cone together with the subset of colors attached to it.
struct ColoredCone {
  Cone cone;
  std::vector<std::string> colors;  // sorted names

  bool operator==(const ColoredCone&) const = default;
};

inline bool colored_cone_less(const ColoredCone& a, const ColoredCone& b) {
  if (!(a.cone == b.cone)) return cone_less(a.cone, b.cone);
  return a.colors < b.colors;
}

inline ColoredCone make_colored_cone(Cone cone, std::vector<std::string> colors) {
  std::sort(colors.begin(), colors.end());
  colors.erase(std::unique(colors.begin(), colors.end()), colors.end());
  return {std::move(cone), std::move(colors)};
}

/// Does the relative interior of c meet the valuation cone? Decided by an
/// exact strict-feasibility LP: facet inequalities of c strictly positive
/// (normalized to >= 1 via an auxiliary variable), valuation inequalities
/// closed, span constraints as equalities.
inline bool relint_meets_valuation(const SphericalDatum& d, const Cone& c) {
  const std::size_t n = d.rank;
  LinearSystem sys(n + 1);  // x and the positivity slack t
  auto row_of = [&](const IntVec& v, const Rat& tcoeff) {
    RatVec row(n + 1, Rat(0));
    for (std::size_t i = 0; i < n; ++i) row[i] = Rat(v[i]);
    row[n] = tcoeff;
    return row;
  };
  for (const IntVec& s : c.span_perp) sys.add_equality(row_of(s, Rat(0)), Rat(0));
  for (const IntVec& h : c.inequalities) sys.add_inequality(row_of(h, Rat(-1)), Rat(0));
  for (const IntVec& h : d.valuation_cone.inequalities)
    sys.add_inequality(row_of(h, Rat(0)), Rat(0));
  {
    RatVec row(n + 1, Rat(0));
    row[n] = 1;
    sys.add_inequality(std::move(row), Rat(1));
  }
  return lp_feasible(sys).feasible;
}

/// Exact emptiness test for relint(a) ∩ relint(b) ∩ valuation cone.
inline bool relative_interiors_meet_over_valuation(const SphericalDatum& d, const Cone& a,
                                                   const Cone& b) {
  const std::size_t n = d.rank;
  LinearSystem sys(n + 1);
  auto row_of = [&](const IntVec& v, const Rat& tcoeff) {
    RatVec row(n + 1, Rat(0));
    for (std::size_t i = 0; i < n; ++i) row[i] = Rat(v[i]);
    row[n] = tcoeff;
    return row;
  };
  for (const IntVec& s : a.span_perp) sys.add_equality(row_of(s, Rat(0)), Rat(0));
  for (const IntVec& s : b.span_perp) sys.add_equality(row_of(s, Rat(0)), Rat(0));
  for (const IntVec& h : a.inequalities) sys.add_inequality(row_of(h, Rat(-1)), Rat(0));
  for (const IntVec& h : b.inequalities) sys.add_inequality(row_of(h, Rat(-1)), Rat(0));
  for (const IntVec& h : d.valuation_cone.inequalities)
    sys.add_inequality(row_of(h, Rat(0)), Rat(0));
  {
    RatVec row(n + 1, Rat(0));
    row[n] = 1;
    sys.add_inequality(std::move(row), Rat(1));
  }
  return lp_feasible(sys).feasible;
}

struct ColoredConeReport {
  bool valid = false;
  std::vector<std::string> violations;
};

inline ColoredConeReport validate_colored_cone(const SphericalDatum& d, const ColoredCone& cc) {
  ColoredConeReport report;
  if (cc.cone.ambient_rank != d.rank) throw std::invalid_argument("cone has wrong ambient rank");
  for (const std::string& name : cc.colors) d.color_index(name);  // throws on unknown

  if (!cc.cone.is_strictly_convex()) report.violations.push_back("cone contains a line");
  for (const std::string& name : cc.colors) {
    const Color& col = d.colors[d.color_index(name)];
    if (is_zero(col.rho)) {
      report.violations.push_back("color " + name + " has zero rho image");
      continue;
    }
    if (!contains(cc.cone, col.rho, Containment::kClosed))
      report.violations.push_back("rho image of color " + name + " lies outside the cone");
  }
  if (cc.cone.is_strictly_convex()) {
    for (const IntVec& r : cc.cone.rays) {
      bool spans_color = false;
      for (const std::string& name : cc.colors) {
        const Color& col = d.colors[d.color_index(name)];
        if (!is_zero(col.rho) && primitive_part(col.rho) == r) {
          spans_color = true;
          break;
        }
      }
      if (!spans_color && !contains(d.valuation_cone, r, Containment::kClosed))
        report.violations.push_back("extremal ray " + to_string(r) +
                                    " neither spans a color image nor lies in the valuation cone");
    }
    if (!relint_meets_valuation(d, cc.cone))
      report.violations.push_back("relative interior does not meet the valuation cone");
  }
  report.valid = report.violations.empty();
  return report;
}

/// Faces of (C, F) whose relative interior meets the valuation cone, each
/// paired with the colors whose rho image lies in the face. Always includes
/// (0, {}) and, for a valid colored cone, (C, F) itself.
inline std::vector<ColoredCone> supported_faces(const SphericalDatum& d, const ColoredCone& cc) {
  std::vector<ColoredCone> out;
  for (const Cone& f : faces(cc.cone)) {
    if (!relint_meets_valuation(d, f)) continue;
    std::vector<std::string> sub;
    for (const std::string& name : cc.colors) {
      const Color& col = d.colors[d.color_index(name)];
      if (contains(f, col.rho, Containment::kClosed)) sub.push_back(name);
    }
    out.push_back(make_colored_cone(f, std::move(sub)));
  }
  std::sort(out.begin(), out.end(), colored_cone_less);
  return out;
}

struct ColoredFan {
  SphericalDatum datum;
  std::vector<ColoredCone> maximal;  // canonical order
};

inline ColoredFan make_colored_fan(SphericalDatum datum, std::vector<ColoredCone> maximal) {
  std::sort(maximal.begin(), maximal.end(), colored_cone_less);
  maximal.erase(std::unique(maximal.begin(), maximal.end()), maximal.end());
  return {std::move(datum), std::move(maximal)};
}

struct ColoredFanReport {
  bool valid = false;
  std::vector<std::string> violations;
};

inline ColoredFanReport validate_colored_fan(const ColoredFan& cf) {
  ColoredFanReport report;
  for (std::size_t i = 0; i < cf.maximal.size(); ++i) {
    ColoredConeReport r = validate_colored_cone(cf.datum, cf.maximal[i]);
    for (const std::string& v : r.violations)
      report.violations.push_back("cone " + std::to_string(i) + ": " + v);
  }
  if (report.violations.empty()) {
    // uniqueness of the colored cone through any valuation point: relative
    // interiors of distinct stored cones (maximal or supported faces) must
    // be disjoint over the valuation cone
    std::vector<ColoredCone> stored;
    for (const ColoredCone& cc : cf.maximal) {
      for (ColoredCone& f : supported_faces(cf.datum, cc)) stored.push_back(std::move(f));
    }
    std::sort(stored.begin(), stored.end(), colored_cone_less);
    stored.erase(std::unique(stored.begin(), stored.end()), stored.end());
    for (std::size_t i = 0; i < stored.size(); ++i)
      for (std::size_t j = i + 1; j < stored.size(); ++j)
        if (relative_interiors_meet_over_valuation(cf.datum, stored[i].cone, stored[j].cone))
          report.violations.push_back(
              "two stored colored cones share a valuation point in their relative interiors");
  }
  report.valid = report.violations.empty();
  return report;
}

inline ColoredCone colored_image(const SphericalDatum& d, const ColoredCone& cc,
                                 std::size_t element_index) {
  const IntMatrix& m = d.group.elements[element_index];
  const auto& perm = d.color_action[element_index];
  std::vector<std::string> mapped;
  for (const std::string& name : cc.colors) mapped.push_back(d.colors[perm[d.color_index(name)]].name);
  return make_colored_cone(image(cc.cone, m), std::move(mapped));
}

struct ColoredStabilityResult {
  bool stable = false;
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // (generator, cone)
};

inline ColoredStabilityResult is_stable_colored(const ColoredFan& cf) {
  std::vector<ColoredCone> sorted = cf.maximal;
  auto in_fan = [&](const ColoredCone& cc) {
    return std::binary_search(sorted.begin(), sorted.end(), cc,
                              [](const ColoredCone& a, const ColoredCone& b) {
                                return colored_cone_less(a, b);
                              });
  };
  for (std::size_t gi = 0; gi < cf.datum.group.generators.size(); ++gi) {
    // generator position inside the element list
    std::size_t ei = 0;
    while (!(cf.datum.group.elements[ei] == cf.datum.group.generators[gi])) ++ei;
    for (std::size_t ci = 0; ci < cf.maximal.size(); ++ci)
      if (!in_fan(colored_image(cf.datum, cf.maximal[ci], ei)))
        return {false, std::make_pair(gi, ci)};
  }
  return {true, std::nullopt};
}

inline bool is_horospherical(const SphericalDatum& d) {
  return d.valuation_cone.is_full_space();
}

inline std::size_t datum_rank(const SphericalDatum& d) { return d.rank; }

inline bool has_no_colors(const ColoredFan& cf) {
  return std::all_of(cf.maximal.begin(), cf.maximal.end(),
                     [](const ColoredCone& cc) { return cc.colors.empty(); });
}

inline bool is_split(const SphericalDatum& d) {
  IntMatrix id = IntMatrix::identity(d.rank);
  return std::all_of(d.group.generators.begin(), d.group.generators.end(),
                     [&](const IntMatrix& m) { return m == id; });
}

/// Forgets the colors; meaningful when the valuation cone is all of V and no
/// colors are attached, where the underlying cones form an ordinary fan.
inline Fan underlying_fan(const ColoredFan& cf) {
  std::vector<Cone> cones;
  for (const ColoredCone& cc : cf.maximal) cones.push_back(cc.cone);
  return make_fan(cf.datum.rank, std::move(cones));
}

}  // namespace galfan
