#pragma once

#include <span>

#include "netmean/graphspace.hpp"

namespace netmean {

// Solid cone with vertex at the origin.
struct Cone {
  WeightVector axis;
  double half_angle = 0.0;  // radians, in (0, pi/2]

  Cone(WeightVector axis, double half_angle);
};

struct DistanceResult {
  double value = 0.0;
  // Applying the aligner to the second argument realises the minimum.
  EdgePermutation aligner;
};

enum class DistanceMethod { exact, branch_and_bound };

double euclidean_distance(std::span<const double> u, std::span<const double> v);
double euclidean_distance(const WeightVector& u, const WeightVector& v);
double squared_distance(std::span<const double> u, std::span<const double> v);

// min over σ of d_E(x, σ·y). Ties resolve to the smallest vertex permutation
// in lexicographic image order.
DistanceResult procrustean_distance(const WeightVector& x, const WeightVector& y,
                                    DistanceMethod method = DistanceMethod::exact);

// Exhaustive min over σ₁, σ₂ of d_E(σ₁·x, σ₂·y). Quadratic in d!; reference only.
double procrustean_distance_double_min(const WeightVector& x, const WeightVector& y);

// Angle in [0, pi] between two nonzero vectors.
double angle(std::span<const double> u, std::span<const double> v);
double angle(const WeightVector& u, const WeightVector& v);

// Smallest angle between w and any nontrivial orbit image; requires w distinct.
double cone_angle(const WeightVector& w);

bool in_cone(const WeightVector& u, const Cone& cone);

}  // namespace netmean
