#pragma once

#include "galfan/linear_system.hpp"

#include <optional>
#include <vector>

namespace galfan {

struct LpResult {
  bool feasible = false;
  std::optional<RatVec> solution;             // set when feasible
  std::optional<FarkasCertificate> farkas;    // set when infeasible
};

// Phase-1 simplex over exact rationals with a full artificial basis.
//
// Column layout: [x+ (n) | x- (n) | slacks (#ineq) | artificials (m)].
// Rows are sign-normalized so every right-hand side is nonnegative; the
// normalization is undone when the dual multipliers are mapped back to the
// original rows. Pivoting is largest-coefficient with an index tie-break,
// switching permanently to Bland's rule after a fixed number of iterations,
// so the run is deterministic and cannot cycle.
inline LpResult lp_feasible(const LinearSystem& sys) {
  const std::size_t n = sys.variables;
  const std::size_t ne = sys.eq_rows.size();
  const std::size_t ni = sys.ineq_rows.size();
  const std::size_t m = ne + ni;

  LpResult out;
  if (m == 0) {
    out.feasible = true;
    out.solution = RatVec(n, Rat(0));
    return out;
  }

  const std::size_t cols = 2 * n + ni + m;  // + rhs handled separately
  std::vector<RatVec> tab(m, RatVec(cols, Rat(0)));
  RatVec rhs(m, Rat(0));
  std::vector<int> flip(m, 1);  // -1 where the row was negated

  for (std::size_t r = 0; r < m; ++r) {
    const bool is_eq = r < ne;
    const RatVec& row = is_eq ? sys.eq_rows[r] : sys.ineq_rows[r - ne];
    Rat b = is_eq ? sys.eq_rhs[r] : sys.ineq_rhs[r - ne];
    int f = (b < 0) ? -1 : 1;
    flip[r] = f;
    for (std::size_t j = 0; j < n; ++j) {
      tab[r][j] = Rat(f) * row[j];
      tab[r][n + j] = Rat(-f) * row[j];
    }
    if (!is_eq) tab[r][2 * n + (r - ne)] = Rat(-f);  // row.x - s = rhs
    tab[r][2 * n + ni + r] = 1;                      // artificial
    rhs[r] = Rat(f) * b;
  }

  // objective: minimize the sum of artificials. z_row[j] > 0 marks an
  // improving column; obj is the current objective value.
  RatVec z_row(cols, Rat(0));
  Rat obj = 0;
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j < cols; ++j) z_row[j] += tab[r][j];
    obj += rhs[r];
  }
  for (std::size_t j = 0; j < m; ++j) z_row[2 * n + ni + j] -= 1;

  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) basis[r] = 2 * n + ni + r;

  const std::size_t bland_after = 4 * (m + cols);
  std::size_t iter = 0;
  while (true) {
    // entering column
    std::size_t enter = cols;
    if (iter < bland_after) {
      const Rat* best = nullptr;
      for (std::size_t j = 0; j < cols; ++j)
        if (z_row[j] > 0 && (!best || z_row[j] > *best)) {
          best = &z_row[j];
          enter = j;
        }
    } else {
      for (std::size_t j = 0; j < cols; ++j)
        if (z_row[j] > 0) {
          enter = j;
          break;
        }
    }
    if (enter == cols) break;  // optimal

    // ratio test; ties resolved toward the smallest basis index (Bland-safe)
    std::size_t leave = m;
    Rat best_ratio = 0;
    for (std::size_t r = 0; r < m; ++r) {
      if (tab[r][enter] <= 0) continue;
      Rat ratio = rhs[r] / tab[r][enter];
      if (leave == m || ratio < best_ratio ||
          (ratio == best_ratio && basis[r] < basis[leave])) {
        best_ratio = ratio;
        leave = r;
      }
    }
    if (leave == m) throw std::logic_error("phase-1 objective unbounded");

    // pivot
    Rat piv = tab[leave][enter];
    for (std::size_t j = 0; j < cols; ++j) tab[leave][j] /= piv;
    rhs[leave] /= piv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == leave || tab[r][enter] == 0) continue;
      Rat f = tab[r][enter];
      for (std::size_t j = 0; j < cols; ++j) tab[r][j] -= f * tab[leave][j];
      rhs[r] -= f * rhs[leave];
    }
    {
      Rat f = z_row[enter];
      for (std::size_t j = 0; j < cols; ++j) z_row[j] -= f * tab[leave][j];
      obj -= f * rhs[leave];
    }
    basis[leave] = enter;
    ++iter;
  }

  if (obj == 0) {
    RatVec value(cols, Rat(0));
    for (std::size_t r = 0; r < m; ++r) value[basis[r]] = rhs[r];
    RatVec x(n, Rat(0));
    for (std::size_t j = 0; j < n; ++j) x[j] = value[j] - value[n + j];
    if (!sys.satisfied_by(x)) throw std::logic_error("simplex returned a bad solution");
    out.feasible = true;
    out.solution = std::move(x);
    return out;
  }

  // y_i = 1 + z_row[artificial_i]; un-flip to multipliers on the input rows
  FarkasCertificate cert;
  cert.eq_multipliers.resize(ne);
  cert.ineq_multipliers.resize(ni);
  for (std::size_t r = 0; r < m; ++r) {
    Rat y = Rat(1) + z_row[2 * n + ni + r];
    Rat mult = Rat(flip[r]) * y;
    if (r < ne)
      cert.eq_multipliers[r] = mult;
    else
      cert.ineq_multipliers[r - ne] = mult;
  }
  if (!verify_farkas(sys, cert)) throw std::logic_error("simplex returned a bad certificate");
  out.feasible = false;
  out.farkas = std::move(cert);
  return out;
}

}  // namespace galfan
