#include "netmean/polyhedra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/dynamic_bitset.hpp>
#include <gmpxx.h>

#include "conic_hull.hpp"

namespace netmean {

namespace {

using RationalVector = std::vector<mpq_class>;

constexpr double kFloatReduceTolerance = 1e-9;

RationalVector to_rational(const std::vector<double>& v) {
  RationalVector out;
  out.reserve(v.size());
  for (double x : v) out.emplace_back(x);  // exact binary value
  return out;
}

// Exact normal of one constraint. Orbit constraints are recomputed from the
// axis weights so the difference is not rounded.
RationalVector exact_normal(const Polyhedron& p, const HalfSpace& h) {
  if (h.origin == HalfSpace::Origin::orbit && p.axis) {
    const WeightVector& w = *p.axis;
    const EdgePermutation& pi = induced_group(w.d()).at(static_cast<std::size_t>(h.source));
    RationalVector out(w.size());
    for (int k = 0; k < pi.size(); ++k) {
      // (σ·w)[π(k)] = w[k]
      out[static_cast<std::size_t>(pi(k))] = mpq_class(w[static_cast<std::size_t>(k)]);
    }
    for (std::size_t k = 0; k < w.size(); ++k) out[k] -= mpq_class(w[k]);
    return out;
  }
  return to_rational(h.normal);
}

// Positive rescaling with the first nonzero entry of magnitude 1.
template <class T>
std::vector<T> direction_key(std::vector<T> v) {
  for (const T& x : v) {
    if (x != T(0)) {
      const T scale = x < T(0) ? T(-x) : x;
      for (T& y : v) y /= scale;
      break;
    }
  }
  return v;
}

bool is_zero_vector(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

template <class T>
std::vector<std::size_t> irredundant_subset(const std::vector<std::vector<T>>& normals, double tol) {
  // Merge positive multiples, keeping the first occurrence.
  std::vector<std::size_t> kept;
  std::vector<std::vector<T>> keys;
  for (std::size_t i = 0; i < normals.size(); ++i) {
    auto key = direction_key(normals[i]);
    bool duplicate = false;
    for (const auto& other : keys) {
      bool same = true;
      for (std::size_t k = 0; k < key.size() && same; ++k) {
        same = detail::ScalarOps<T>::sign(T(key[k] - other[k]), tol) == 0;
      }
      if (same) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) {
      kept.push_back(i);
      keys.push_back(std::move(key));
    }
  }

  // Drop each constraint implied by the others still present.
  for (std::size_t pos = 0; pos < kept.size();) {
    std::vector<std::vector<T>> others;
    others.reserve(kept.size() - 1);
    for (std::size_t q = 0; q < kept.size(); ++q) {
      if (q != pos) others.push_back(normals[kept[q]]);
    }
    if (detail::in_conic_hull(others, normals[kept[pos]], tol)) {
      kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(pos));
    } else {
      ++pos;
    }
  }
  return kept;
}

}  // namespace

const char* to_string(Membership m) {
  switch (m) {
    case Membership::inside:
      return "inside";
    case Membership::boundary:
      return "boundary";
    case Membership::outside:
      return "outside";
  }
  return "unknown";
}

Polyhedron build_fundamental_domain(const WeightVector& w) {
  const auto& group = induced_group(w.d());
  Polyhedron p;
  p.dim = static_cast<int>(w.size());
  p.axis = w;
  for (std::size_t g = 1; g < group.size(); ++g) {
    const WeightVector image = act(group[g], w);
    if (image == w) {
      throw DegenerateAxis("fundamental domain needs a distinct axis: permutation " +
                           std::to_string(g) + " fixes w");
    }
    std::vector<double> normal(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) normal[k] = image[k] - w[k];
    p.halfspaces.push_back({std::move(normal), HalfSpace::Origin::orbit, static_cast<int>(g)});
  }
  for (int j = 0; j < p.dim; ++j) {
    std::vector<double> normal(w.size(), 0.0);
    normal[static_cast<std::size_t>(j)] = -1.0;
    p.halfspaces.push_back({std::move(normal), HalfSpace::Origin::coordinate, j});
  }
  return p;
}

Polyhedron reduce(const Polyhedron& p) {
  for (const auto& h : p.halfspaces) {
    if (static_cast<int>(h.normal.size()) != p.dim) {
      throw DimensionMismatch("half-space normal length differs from polyhedron dimension");
    }
    if (is_zero_vector(h.normal)) throw FormatError("half-space with zero normal");
  }

  std::vector<std::size_t> kept;
  if (p.dim <= kMaxExactReduceDimension) {
    std::vector<RationalVector> normals;
    normals.reserve(p.halfspaces.size());
    for (const auto& h : p.halfspaces) normals.push_back(exact_normal(p, h));
    kept = irredundant_subset(normals, 0.0);
  } else {
    std::vector<std::vector<double>> normals;
    normals.reserve(p.halfspaces.size());
    for (const auto& h : p.halfspaces) {
      double scale = 0.0;
      for (double x : h.normal) scale = std::max(scale, std::abs(x));
      std::vector<double> n = h.normal;
      for (double& x : n) x /= scale;
      normals.push_back(std::move(n));
    }
    kept = irredundant_subset(normals, kFloatReduceTolerance);
  }

  Polyhedron out;
  out.dim = p.dim;
  out.axis = p.axis;
  for (std::size_t i : kept) out.halfspaces.push_back(p.halfspaces[i]);
  return out;
}

Membership contains(const Polyhedron& p, std::span<const double> z, double tol) {
  if (static_cast<int>(z.size()) != p.dim) {
    throw DimensionMismatch("point of length " + std::to_string(z.size()) +
                            " tested against polyhedron of dimension " + std::to_string(p.dim));
  }
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& h : p.halfspaces) {
    double dot = 0.0;
    double nn = 0.0;
    for (std::size_t k = 0; k < z.size(); ++k) {
      dot += h.normal[k] * z[k];
      nn += h.normal[k] * h.normal[k];
    }
    worst = std::max(worst, dot / std::sqrt(nn));
  }
  if (worst > tol) return Membership::outside;
  if (worst >= -tol) return Membership::boundary;
  return Membership::inside;
}

Membership contains(const Polyhedron& p, const WeightVector& z, double tol) {
  return contains(p, z.entries(), tol);
}

std::vector<std::vector<double>> rays(const Polyhedron& p) {
  if (p.dim > kMaxRayDimension) {
    throw ComplexityError("ray enumeration limited to dimension " + std::to_string(kMaxRayDimension) +
                          ", got " + std::to_string(p.dim));
  }
  const std::size_t dim = static_cast<std::size_t>(p.dim);
  const std::size_t n_constraints = dim + p.halfspaces.size();

  struct Ray {
    RationalVector v;
    boost::dynamic_bitset<> tight;
  };

  // Seed: the octant, whose rays are the unit vectors.
  std::vector<Ray> current;
  for (std::size_t j = 0; j < dim; ++j) {
    Ray r{RationalVector(dim, mpq_class(0)), boost::dynamic_bitset<>(n_constraints)};
    r.v[j] = 1;
    for (std::size_t k = 0; k < dim; ++k) {
      if (k != j) r.tight.set(k);
    }
    current.push_back(std::move(r));
  }

  for (std::size_t c = 0; c < p.halfspaces.size(); ++c) {
    const RationalVector a = exact_normal(p, p.halfspaces[c]);
    const std::size_t index = dim + c;

    std::vector<mpq_class> value(current.size());
    std::vector<std::size_t> plus, minus, zero;
    for (std::size_t r = 0; r < current.size(); ++r) {
      mpq_class s = 0;
      for (std::size_t k = 0; k < dim; ++k) s += a[k] * current[r].v[k];
      value[r] = s;
      const int sg = sgn(s);
      (sg > 0 ? plus : sg < 0 ? minus : zero).push_back(r);
    }

    std::vector<Ray> next;
    next.reserve(minus.size() + zero.size());
    for (std::size_t r : minus) next.push_back(current[r]);
    for (std::size_t r : zero) {
      next.push_back(current[r]);
      next.back().tight.set(index);
    }
    for (std::size_t rp : plus) {
      for (std::size_t rm : minus) {
        const boost::dynamic_bitset<> common = current[rp].tight & current[rm].tight;
        if (common.count() + 2 < dim) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < current.size() && adjacent; ++r) {
          if (r != rp && r != rm && common.is_subset_of(current[r].tight)) adjacent = false;
        }
        if (!adjacent) continue;
        // Positive combination lying on the new hyperplane.
        Ray fresh{RationalVector(dim), common};
        for (std::size_t k = 0; k < dim; ++k) {
          fresh.v[k] = value[rp] * current[rm].v[k] - value[rm] * current[rp].v[k];
        }
        fresh.v = direction_key(std::move(fresh.v));
        fresh.tight.set(index);
        next.push_back(std::move(fresh));
      }
    }
    current = std::move(next);
  }

  std::vector<std::vector<double>> out;
  out.reserve(current.size());
  for (auto& r : current) {
    const RationalVector v = direction_key(r.v);
    std::vector<double> d(dim);
    for (std::size_t k = 0; k < dim; ++k) d[k] = v[k].get_d();
    out.push_back(std::move(d));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace netmean
