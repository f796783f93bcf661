#pragma once

#include "galfan/linalg.hpp"

#include <vector>

namespace galfan {

/// Exact rational feasibility system: equalities row.x = rhs and
/// inequalities row.x >= rhs.
struct LinearSystem {
  std::size_t variables = 0;
  std::vector<RatVec> eq_rows;
  std::vector<Rat> eq_rhs;
  std::vector<RatVec> ineq_rows;
  std::vector<Rat> ineq_rhs;

  explicit LinearSystem(std::size_t vars = 0) : variables(vars) {}

  void add_equality(RatVec row, Rat rhs) {
    if (row.size() != variables) throw std::invalid_argument("row length mismatch");
    eq_rows.push_back(std::move(row));
    eq_rhs.push_back(std::move(rhs));
  }
  void add_inequality(RatVec row, Rat rhs) {
    if (row.size() != variables) throw std::invalid_argument("row length mismatch");
    ineq_rows.push_back(std::move(row));
    ineq_rhs.push_back(std::move(rhs));
  }

  std::size_t constraint_count() const { return eq_rows.size() + ineq_rows.size(); }

  bool satisfied_by(const RatVec& x) const {
    if (x.size() != variables) return false;
    for (std::size_t i = 0; i < eq_rows.size(); ++i)
      if (dot(eq_rows[i], x) != eq_rhs[i]) return false;
    for (std::size_t i = 0; i < ineq_rows.size(); ++i)
      if (dot(ineq_rows[i], x) < ineq_rhs[i]) return false;
    return true;
  }

  bool operator==(const LinearSystem&) const = default;
};

/// Infeasibility witness: nonnegative multipliers on the inequalities and
/// free multipliers on the equalities combining to 0 >= positive.
struct FarkasCertificate {
  std::vector<Rat> ineq_multipliers;
  std::vector<Rat> eq_multipliers;

  bool operator==(const FarkasCertificate&) const = default;
};

/// Pure arithmetic check, independent of any solver.
inline bool verify_farkas(const LinearSystem& sys, const FarkasCertificate& cert) {
  if (cert.ineq_multipliers.size() != sys.ineq_rows.size()) return false;
  if (cert.eq_multipliers.size() != sys.eq_rows.size()) return false;
  for (const Rat& m : cert.ineq_multipliers)
    if (m < 0) return false;
  RatVec combo(sys.variables, Rat(0));
  Rat rhs = 0;
  for (std::size_t i = 0; i < sys.ineq_rows.size(); ++i) {
    const Rat& m = cert.ineq_multipliers[i];
    if (m == 0) continue;
    for (std::size_t j = 0; j < sys.variables; ++j) combo[j] += m * sys.ineq_rows[i][j];
    rhs += m * sys.ineq_rhs[i];
  }
  for (std::size_t i = 0; i < sys.eq_rows.size(); ++i) {
    const Rat& m = cert.eq_multipliers[i];
    if (m == 0) continue;
    for (std::size_t j = 0; j < sys.variables; ++j) combo[j] += m * sys.eq_rows[i][j];
    rhs += m * sys.eq_rhs[i];
  }
  return is_zero(combo) && rhs > 0;
}

}  // namespace galfan
