#pragma once

// Reference computations written without the library's group machinery.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "netmean/graphspace.hpp"

namespace oracle {

inline int slot(int i, int j, int d) {
  if (i > j) std::swap(i, j);
  int k = 0;
  for (int a = 0; a < i; ++a) k += d - a - 1;
  return k + (j - i - 1);
}

// Relabel vertex v as perm[v]: the weight of edge {i,j} moves to {perm[i], perm[j]}.
inline std::vector<double> relabel(const std::vector<double>& w, int d, const std::vector<int>& perm) {
  std::vector<double> out(w.size());
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) out[static_cast<std::size_t>(slot(perm[i], perm[j], d))] =
        w[static_cast<std::size_t>(slot(i, j, d))];
  }
  return out;
}

inline double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return s;
}

inline double procrustes(const std::vector<double>& x, const std::vector<double>& y, int d) {
  std::vector<int> perm(static_cast<std::size_t>(d));
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    best = std::min(best, sq_dist(x, relabel(y, d, perm)));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::sqrt(best);
}

inline double procrustes(const netmean::WeightVector& x, const netmean::WeightVector& y) {
  return procrustes(x.values(), y.values(), x.d());
}

inline long factorial(int d) {
  long f = 1;
  for (int i = 2; i <= d; ++i) f *= i;
  return f;
}

inline std::vector<int> random_perm(int d, std::mt19937_64& rng) {
  std::vector<int> p(static_cast<std::size_t>(d));
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

inline netmean::WeightVector relabel(const netmean::WeightVector& w, const std::vector<int>& perm) {
  return netmean::WeightVector(w.d(), relabel(w.values(), w.d(), perm));
}

inline netmean::WeightVector random_weights(int d, std::mt19937_64& rng, double lo = 0.0, double hi = 10.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(static_cast<std::size_t>(d * (d - 1) / 2));
  for (double& x : v) x = u(rng);
  return netmean::WeightVector(d, v);
}

inline double angle_between(const std::vector<double>& a, const std::vector<double>& b) {
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    ab += a[k] * b[k];
    aa += a[k] * a[k];
    bb += b[k] * b[k];
  }
  return std::acos(std::clamp(ab / std::sqrt(aa * bb), -1.0, 1.0));
}

// Smallest angle between w and its distinct relabelings.
inline double cone_angle(const netmean::WeightVector& w) {
  const int d = w.d();
  std::vector<int> perm(static_cast<std::size_t>(d));
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  while (std::next_permutation(perm.begin(), perm.end())) {
    best = std::min(best, angle_between(w.values(), relabel(w.values(), d, perm)));
  }
  return best;
}

// Point with angle below `half_angle` to the axis, nonnegative, norm in [0.5, 1.5]·‖axis‖.
inline netmean::WeightVector random_in_cone(const netmean::WeightVector& axis, double half_angle,
                                            std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::vector<double>& a = axis.values();
  double an = 0.0;
  for (double x : a) an += x * x;
  an = std::sqrt(an);
  for (;;) {
    std::vector<double> dir(a.size());
    double dot = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      dir[k] = g(rng);
      dot += dir[k] * a[k] / an;
    }
    double dn = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      dir[k] -= dot * a[k] / an;
      dn += dir[k] * dir[k];
    }
    dn = std::sqrt(dn);
    const double theta = half_angle * 0.999 * u(rng);
    const double scale = an * (0.5 + u(rng));
    std::vector<double> x(a.size());
    bool ok = true;
    for (std::size_t k = 0; k < a.size(); ++k) {
      x[k] = scale * (std::cos(theta) * a[k] / an + std::sin(theta) * dir[k] / dn);
      ok = ok && x[k] >= 0.0;
    }
    if (ok) return netmean::WeightVector(axis.d(), x);
  }
}

}  // namespace oracle
