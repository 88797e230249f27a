#include "netmean/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace netmean {

namespace {

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) {
    throw DimensionMismatch("vectors have lengths " + std::to_string(a) + " and " + std::to_string(b));
  }
}

void require_same_d(const WeightVector& x, const WeightVector& y) {
  require_same_size(x.size(), y.size());
  if (x.d() != y.d()) throw DimensionMismatch("networks have different node counts");
}

// Squared distance between x and π·y, summed in slot order of x.
double aligned_squared(const WeightVector& x, const WeightVector& y, const EdgePermutation& pi,
                       std::vector<double>& scratch) {
  for (int k = 0; k < pi.size(); ++k) scratch[static_cast<std::size_t>(pi(k))] = y[static_cast<std::size_t>(k)];
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double diff = x[k] - scratch[k];
    s += diff * diff;
  }
  return s;
}

DistanceResult exact_search(const WeightVector& x, const WeightVector& y) {
  const auto& group = induced_group(x.d());
  std::vector<double> scratch(x.size());
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_index = 0;
  for (std::size_t g = 0; g < group.size(); ++g) {
    const double s = aligned_squared(x, y, group[g], scratch);
    if (s < best) {
      best = s;
      best_index = g;
    }
  }
  return {std::sqrt(best), group[best_index]};
}

// Depth-first search over vertex images in lexicographic order. The bound for
// a partial assignment adds the sorted matching of the still-free slots, which
// by the rearrangement inequality never exceeds any completion.
class BranchAndBound {
 public:
  BranchAndBound(const WeightVector& x, const WeightVector& y)
      : x_(x), y_(y), d_(x.d()), order_(x.d()), image_(static_cast<std::size_t>(x.d()), -1),
        used_(static_cast<std::size_t>(x.d()), 0), x_free_(x.size(), 1), scratch_(x.size()) {}

  DistanceResult run() {
    // The first leaf reached is the identity, so pruning starts after d steps.
    descend(0, 0.0);
    const EdgePermutation pi = induce(VertexPermutation(best_image_));
    return {std::sqrt(aligned_squared(x_, y_, pi, scratch_)), pi};
  }

 private:
  double leaf_cost(const std::vector<int>& image) {
    const EdgePermutation pi = induce(VertexPermutation(image));
    return aligned_squared(x_, y_, pi, scratch_);
  }

  double lower_bound(int assigned, double partial) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t k = 0; k < x_.size(); ++k) {
      if (x_free_[k]) xs.push_back(x_[k]);
    }
    for (int k = 0; k < order_.size(); ++k) {
      const Edge& e = order_.edge(k);
      if (e.j >= assigned) ys.push_back(y_[static_cast<std::size_t>(k)]);
    }
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    double s = partial;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      const double diff = xs[k] - ys[k];
      s += diff * diff;
    }
    return s;
  }

  // Slack keeps rounding in the bound from cutting off a tied optimum.
  bool prunable(double bound) const { return bound > best_ * (1.0 + 1e-12) + 1e-300; }

  void descend(int v, double partial) {
    if (v == d_) {
      const double cost = leaf_cost(image_);
      if (cost < best_) {
        best_ = cost;
        best_image_ = image_;
      }
      return;
    }
    for (int target = 0; target < d_; ++target) {
      if (used_[static_cast<std::size_t>(target)]) continue;
      image_[static_cast<std::size_t>(v)] = target;
      used_[static_cast<std::size_t>(target)] = 1;
      double added = 0.0;
      std::vector<int> claimed;
      claimed.reserve(static_cast<std::size_t>(v));
      for (int u = 0; u < v; ++u) {
        const int ky = order_.index(u, v);
        const int kx = order_.index(image_[static_cast<std::size_t>(u)], target);
        const double diff = x_[static_cast<std::size_t>(kx)] - y_[static_cast<std::size_t>(ky)];
        added += diff * diff;
        x_free_[static_cast<std::size_t>(kx)] = 0;
        claimed.push_back(kx);
      }
      const double next = partial + added;
      if (!prunable(lower_bound(v + 1, next))) descend(v + 1, next);
      for (int kx : claimed) x_free_[static_cast<std::size_t>(kx)] = 1;
      used_[static_cast<std::size_t>(target)] = 0;
      image_[static_cast<std::size_t>(v)] = -1;
    }
  }

  const WeightVector& x_;
  const WeightVector& y_;
  int d_;
  EdgeOrder order_;
  std::vector<int> image_;
  std::vector<char> used_;
  std::vector<char> x_free_;
  std::vector<double> scratch_;
  std::vector<int> best_image_;
  double best_ = std::numeric_limits<double>::infinity();
};

}  // namespace

Cone::Cone(WeightVector axis_, double half_angle_) : axis(std::move(axis_)), half_angle(half_angle_) {
  if (!(axis.norm() > 0.0)) throw DomainError("cone axis must be nonzero");
  if (!(half_angle > 0.0) || half_angle > std::numbers::pi / 2) {
    throw DomainError("cone half-angle must lie in (0, pi/2]");
  }
}

double squared_distance(std::span<const double> u, std::span<const double> v) {
  require_same_size(u.size(), v.size());
  double s = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double diff = u[k] - v[k];
    s += diff * diff;
  }
  return s;
}

double euclidean_distance(std::span<const double> u, std::span<const double> v) {
  return std::sqrt(squared_distance(u, v));
}

double euclidean_distance(const WeightVector& u, const WeightVector& v) {
  return euclidean_distance(u.entries(), v.entries());
}

DistanceResult procrustean_distance(const WeightVector& x, const WeightVector& y, DistanceMethod method) {
  require_same_d(x, y);
  if (method == DistanceMethod::exact) return exact_search(x, y);
  return BranchAndBound(x, y).run();
}

double procrustean_distance_double_min(const WeightVector& x, const WeightVector& y) {
  require_same_d(x, y);
  const auto& group = induced_group(x.d());
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p1 : group) {
    const WeightVector px = act(p1, x);
    for (const auto& p2 : group) {
      best = std::min(best, squared_distance(px.entries(), act(p2, y).entries()));
    }
  }
  return std::sqrt(best);
}

double angle(std::span<const double> u, std::span<const double> v) {
  require_same_size(u.size(), v.size());
  double uv = 0.0;
  double uu = 0.0;
  double vv = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    uv += u[k] * v[k];
    uu += u[k] * u[k];
    vv += v[k] * v[k];
  }
  if (uu == 0.0 || vv == 0.0) throw DomainError("angle undefined for a zero vector");
  const double c = std::clamp(uv / (std::sqrt(uu) * std::sqrt(vv)), -1.0, 1.0);
  return std::acos(c);
}

double angle(const WeightVector& u, const WeightVector& v) { return angle(u.entries(), v.entries()); }

double cone_angle(const WeightVector& w) {
  const auto& group = induced_group(w.d());
  if (w.norm() == 0.0) throw DegenerateAxis("zero vector has no cone angle");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t g = 1; g < group.size(); ++g) {
    const WeightVector image = act(group[g], w);
    if (image == w) {
      throw DegenerateAxis("axis is not distinct: a nonidentity permutation fixes it");
    }
    best = std::min(best, angle(w, image));
  }
  return best;
}

bool in_cone(const WeightVector& u, const Cone& cone) {
  require_same_size(u.size(), cone.axis.size());
  if (u.norm() == 0.0) return true;
  return angle(u, cone.axis) <= cone.half_angle;
}

}  // namespace netmean
