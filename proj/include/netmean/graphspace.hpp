#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "netmean/errors.hpp"

namespace netmean {

// Number of undirected edge slots D = d(d-1)/2 on d vertices.
int edge_count(int d);

// Inverse of edge_count; throws InvalidDimension when D is not triangular.
int node_count_for(int edge_slots);

// Vertex pair of one edge slot, 0-based, i < j.
struct Edge {
  int i = 0;
  int j = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Lexicographic bijection between edge slots and vertex pairs:
// (0,1), (0,2), ..., (0,d-1), (1,2), ...
class EdgeOrder {
 public:
  explicit EdgeOrder(int d);

  int d() const noexcept { return d_; }
  int size() const noexcept { return static_cast<int>(edges_.size()); }
  const Edge& edge(int k) const { return edges_.at(static_cast<std::size_t>(k)); }
  // Slot of the unordered pair {i, j}; i != j in either order.
  int index(int i, int j) const;
  const std::vector<Edge>& edges() const noexcept { return edges_; }

 private:
  int d_;
  std::vector<Edge> edges_;
};

// A labeled network's edge weights, a point of the nonnegative octant.
class WeightVector {
 public:
  WeightVector() = default;
  WeightVector(int d, std::vector<double> entries);

  static WeightVector zeros(int d);

  int d() const noexcept { return d_; }
  std::size_t size() const noexcept { return entries_.size(); }
  double operator[](std::size_t k) const { return entries_[k]; }
  std::span<const double> entries() const noexcept { return entries_; }
  const std::vector<double>& values() const noexcept { return entries_; }
  double norm() const;

  friend bool operator==(const WeightVector&, const WeightVector&) = default;
  friend auto operator<=>(const WeightVector& a, const WeightVector& b) {
    return a.entries_ <=> b.entries_;
  }

 private:
  int d_ = 0;
  std::vector<double> entries_;
};

// Reads a symmetric, zero-diagonal, nonnegative adjacency matrix.
WeightVector vectorize(const std::vector<std::vector<double>>& adjacency);

// Element of the symmetric group on the d vertices, stored as a 0-based image array.
class VertexPermutation {
 public:
  VertexPermutation() = default;
  explicit VertexPermutation(std::vector<int> image);

  static VertexPermutation identity(int d);
  // Accepts the 1-based image array used in files and on the command line.
  static VertexPermutation from_one_based(const std::vector<int>& image);

  int size() const noexcept { return static_cast<int>(image_.size()); }
  int operator()(int v) const { return image_[static_cast<std::size_t>(v)]; }
  const std::vector<int>& image() const noexcept { return image_; }
  std::vector<int> one_based() const;
  bool is_identity() const;

  VertexPermutation inverse() const;
  // (*this ∘ other)(v) = (*this)(other(v)).
  VertexPermutation compose(const VertexPermutation& other) const;

  friend bool operator==(const VertexPermutation&, const VertexPermutation&) = default;

 private:
  std::vector<int> image_;
};

// Permutation of edge slots induced by a vertex permutation.
class EdgePermutation {
 public:
  EdgePermutation() = default;
  EdgePermutation(std::vector<int> mapping, VertexPermutation source);

  int size() const noexcept { return static_cast<int>(mapping_.size()); }
  int operator()(int k) const { return mapping_[static_cast<std::size_t>(k)]; }
  std::span<const int> mapping() const noexcept { return mapping_; }
  const VertexPermutation& source() const noexcept { return source_; }
  std::vector<int> one_based() const;
  bool is_identity() const;

  EdgePermutation inverse() const;
  EdgePermutation compose(const EdgePermutation& other) const;

  friend bool operator==(const EdgePermutation& a, const EdgePermutation& b) {
    return a.mapping_ == b.mapping_;
  }

 private:
  std::vector<int> mapping_;
  VertexPermutation source_;
};

EdgePermutation induce(const VertexPermutation& sigma);
EdgePermutation induce(const VertexPermutation& sigma, int d);

// (π·w)[π(k)] = w[k], i.e. result[k] = w[π⁻¹(k)].
WeightVector act(const EdgePermutation& pi, const WeightVector& w);

// Largest d whose d! group elements may be materialized. Default 8,
// overridable through the NETMEAN_MAX_D environment variable.
int enumeration_cap();
void check_enumeration(int d);

// All d! induced edge permutations, ordered by the lexicographic order of the
// vertex image arrays. Element 0 is the identity. Built once per d and shared.
const std::vector<EdgePermutation>& induced_group(int d);

// Deduplicated orbit, sorted ascending lexicographically.
std::vector<WeightVector> orbit(const WeightVector& w);
std::size_t stabilizer_size(const WeightVector& w);
bool is_distinct(const WeightVector& w);

// Lexicographically greatest element of the orbit.
WeightVector canonicalize(const WeightVector& w);

class UnlabeledNetwork {
 public:
  explicit UnlabeledNetwork(WeightVector representative);

  const WeightVector& representative() const noexcept { return representative_; }
  const WeightVector& canonical() const noexcept { return canonical_; }

  friend bool operator==(const UnlabeledNetwork& a, const UnlabeledNetwork& b) {
    return a.canonical_ == b.canonical_;
  }

 private:
  WeightVector representative_;
  WeightVector canonical_;
};

}  // namespace netmean
