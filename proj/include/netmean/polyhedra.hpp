#pragma once

#include <optional>
#include <vector>

#include "netmean/graphspace.hpp"

namespace netmean {

// Homogeneous constraint normal·z <= 0.
struct HalfSpace {
  enum class Origin { orbit, coordinate, external };

  std::vector<double> normal;
  Origin origin = Origin::external;
  // Group element index (orbit) or coordinate slot (coordinate).
  int source = -1;
};

// Polyhedral cone on the origin in H-representation, optionally with its
// extreme rays. When built from a Dirichlet center the axis is kept so the
// reducer can recompute normals exactly from the weights.
struct Polyhedron {
  int dim = 0;
  std::vector<HalfSpace> halfspaces;
  std::optional<std::vector<std::vector<double>>> rays;
  std::optional<WeightVector> axis;
};

enum class Membership { inside, boundary, outside };

const char* to_string(Membership m);

// Voronoi cell of w within its orbit, intersected with the octant: one
// constraint (σ·w − w)·z <= 0 per σ != id, then the D coordinate constraints.
Polyhedron build_fundamental_domain(const WeightVector& w);

// Irredundant H-representation with the same feasible set. Exact rational
// arithmetic for dim <= 10, floating point with tolerance 1e-9 above that.
Polyhedron reduce(const Polyhedron& p);

inline constexpr double kBoundaryTolerance = 1e-9;

// Classifies z by its largest signed distance to a constraint hyperplane.
Membership contains(const Polyhedron& p, const WeightVector& z, double tol = kBoundaryTolerance);
Membership contains(const Polyhedron& p, std::span<const double> z, double tol = kBoundaryTolerance);

// Extreme rays by the double-description method, exact arithmetic, each scaled
// so its first nonzero coordinate is 1, sorted lexicographically. Requires
// the cone to lie in the nonnegative octant and dim <= 6.
std::vector<std::vector<double>> rays(const Polyhedron& p);

inline constexpr int kMaxRayDimension = 6;
inline constexpr int kMaxExactReduceDimension = 10;

}  // namespace netmean
