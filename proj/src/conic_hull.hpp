#pragma once

// Phase-one simplex deciding whether a target vector is a nonnegative
// combination of generators (Farkas: the constraint target·z <= 0 is implied by
// generator_i·z <= 0 exactly when this holds). Bland's rule, dense tableau.
// Instantiated for mpq_class (exact) and double (tolerance-based).

#include <cmath>
#include <cstddef>
#include <vector>

#include <gmpxx.h>

namespace netmean::detail {

template <class T>
struct ScalarOps;

template <>
struct ScalarOps<mpq_class> {
  static int sign(const mpq_class& x, double /*tol*/) { return sgn(x); }
};

template <>
struct ScalarOps<double> {
  static int sign(double x, double tol) { return x > tol ? 1 : (x < -tol ? -1 : 0); }
};

template <class T>
bool in_conic_hull(const std::vector<std::vector<T>>& generators, const std::vector<T>& target,
                   double tol = 0.0) {
  using Ops = ScalarOps<T>;
  const std::size_t rows = target.size();
  const std::size_t m = generators.size();
  const std::size_t cols = m + rows;

  std::vector<std::vector<T>> tab(rows, std::vector<T>(cols, T(0)));
  std::vector<T> rhs(rows);
  std::vector<std::size_t> basis(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const bool flip = Ops::sign(target[r], tol) < 0;
    rhs[r] = flip ? T(-target[r]) : target[r];
    for (std::size_t c = 0; c < m; ++c) tab[r][c] = flip ? T(-generators[c][r]) : generators[c][r];
    tab[r][m + r] = T(1);
    basis[r] = m + r;
  }

  // Reduced costs of the phase-one objective (sum of artificials).
  std::vector<T> cost(cols, T(0));
  T objective(0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < m; ++c) cost[c] -= tab[r][c];
    objective -= rhs[r];
  }

  for (;;) {
    std::size_t enter = cols;
    for (std::size_t c = 0; c < cols; ++c) {
      if (Ops::sign(cost[c], tol) < 0) {
        enter = c;
        break;
      }
    }
    if (enter == cols) break;

    std::size_t leave = rows;
    T best_ratio(0);
    for (std::size_t r = 0; r < rows; ++r) {
      if (Ops::sign(tab[r][enter], tol) <= 0) continue;
      T ratio = rhs[r] / tab[r][enter];
      if (leave == rows || ratio < best_ratio || (ratio == best_ratio && basis[r] < basis[leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave == rows) break;  // unbounded direction; cannot happen for phase one

    const T pivot = tab[leave][enter];
    for (std::size_t c = 0; c < cols; ++c) tab[leave][c] /= pivot;
    rhs[leave] /= pivot;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == leave) continue;
      const T factor = tab[r][enter];
      if (Ops::sign(factor, 0.0) == 0) continue;
      for (std::size_t c = 0; c < cols; ++c) tab[r][c] -= factor * tab[leave][c];
      rhs[r] -= factor * rhs[leave];
    }
    const T factor = cost[enter];
    for (std::size_t c = 0; c < cols; ++c) cost[c] -= factor * tab[leave][c];
    objective -= factor * rhs[leave];
    basis[leave] = enter;
  }
  // objective holds minus the remaining artificial mass.
  return Ops::sign(objective, tol) == 0;
}

}  // namespace netmean::detail
