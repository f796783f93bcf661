#pragma once

#include "galfan/matrix.hpp"

#include <set>
#include <vector>

namespace galfan {

/// A finite group of lattice automorphisms, stored as its full element list.
/// Elements are enumerated breadth-first from the identity, each level sorted
/// lexicographically, so the order is reproducible.
struct FiniteMatrixGroup {
  std::size_t rank = 0;
  std::vector<IntMatrix> generators;
  std::vector<IntMatrix> elements;

  std::size_t order() const { return elements.size(); }
  bool is_trivial() const { return elements.size() == 1; }
};

inline constexpr std::size_t kDefaultMaxGroupOrder = 10000;

inline FiniteMatrixGroup group_closure(std::size_t rank, std::vector<IntMatrix> generators,
                                       std::size_t max_order = kDefaultMaxGroupOrder) {
  for (const IntMatrix& g : generators) {
    if (g.rows != rank || g.cols != rank)
      throw std::invalid_argument("generator has wrong dimensions");
    if (!is_unimodular(g)) throw std::invalid_argument("not a lattice automorphism");
  }
  std::vector<IntMatrix> gens = generators;
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

  FiniteMatrixGroup out;
  out.rank = rank;
  out.generators = std::move(generators);

  IntMatrix id = IntMatrix::identity(rank);
  std::set<IntMatrix> seen{id};
  std::vector<IntMatrix> level{id};
  out.elements.push_back(id);
  while (!level.empty()) {
    std::set<IntMatrix> next;
    for (const IntMatrix& e : level)
      for (const IntMatrix& g : gens) {
        IntMatrix p = mul(e, g);
        if (!seen.count(p)) next.insert(p);
      }
    level.assign(next.begin(), next.end());
    for (const IntMatrix& p : level) {
      if (out.elements.size() + 1 > max_order)
        throw std::runtime_error("group too large or infinite");
      seen.insert(p);
      out.elements.push_back(p);
    }
  }
  return out;
}

inline FiniteMatrixGroup trivial_group(std::size_t rank) {
  return group_closure(rank, {IntMatrix::identity(rank)});
}

}  // namespace galfan
