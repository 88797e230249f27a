#include "netmean/graphspace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <string>

namespace netmean {

namespace {

constexpr double kSymmetryTolerance = 1e-12;
constexpr int kDefaultEnumerationCap = 8;

void require_d(int d) {
  if (d < 2) {
    throw InvalidDimension("node count must be at least 2, got " + std::to_string(d));
  }
}

bool is_permutation_image(const std::vector<int>& image) {
  std::vector<char> seen(image.size(), 0);
  for (int v : image) {
    if (v < 0 || static_cast<std::size_t>(v) >= image.size() || seen[static_cast<std::size_t>(v)]) {
      return false;
    }
    seen[static_cast<std::size_t>(v)] = 1;
  }
  return true;
}

}  // namespace

int edge_count(int d) {
  require_d(d);
  return d * (d - 1) / 2;
}

int node_count_for(int edge_slots) {
  for (int d = 2; d * (d - 1) / 2 <= edge_slots; ++d) {
    if (d * (d - 1) / 2 == edge_slots) return d;
  }
  throw InvalidDimension(std::to_string(edge_slots) + " is not d(d-1)/2 for any d >= 2");
}

EdgeOrder::EdgeOrder(int d) : d_(d) {
  require_d(d);
  edges_.reserve(static_cast<std::size_t>(edge_count(d)));
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) edges_.push_back({i, j});
  }
}

int EdgeOrder::index(int i, int j) const {
  if (i == j || i < 0 || j < 0 || i >= d_ || j >= d_) {
    throw InvalidDimension("no edge between vertices " + std::to_string(i) + " and " +
                           std::to_string(j));
  }
  if (i > j) std::swap(i, j);
  // Slots before row i: sum_{r<i} (d-1-r).
  return i * (2 * d_ - i - 1) / 2 + (j - i - 1);
}

WeightVector::WeightVector(int d, std::vector<double> entries) : d_(d), entries_(std::move(entries)) {
  const int expected = edge_count(d);
  if (static_cast<int>(entries_.size()) != expected) {
    throw DimensionMismatch("weight vector for d=" + std::to_string(d) + " needs " +
                            std::to_string(expected) + " entries, got " +
                            std::to_string(entries_.size()));
  }
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (!std::isfinite(entries_[k]) || entries_[k] < 0.0) {
      std::ostringstream os;
      os << "weight " << k + 1 << " is " << entries_[k] << "; weights must be finite and >= 0";
      throw FormatError(os.str());
    }
  }
}

WeightVector WeightVector::zeros(int d) {
  return WeightVector(d, std::vector<double>(static_cast<std::size_t>(edge_count(d)), 0.0));
}

double WeightVector::norm() const {
  double s = 0.0;
  for (double x : entries_) s += x * x;
  return std::sqrt(s);
}

WeightVector vectorize(const std::vector<std::vector<double>>& adjacency) {
  const int d = static_cast<int>(adjacency.size());
  require_d(d);
  for (int i = 0; i < d; ++i) {
    if (static_cast<int>(adjacency[static_cast<std::size_t>(i)].size()) != d) {
      throw FormatError("adjacency row " + std::to_string(i + 1) + " has " +
                        std::to_string(adjacency[static_cast<std::size_t>(i)].size()) +
                        " entries, expected " + std::to_string(d));
    }
  }
  auto cell = [&](int i, int j) {
    return adjacency[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  };
  auto where = [](int i, int j) {
    return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
  };
  for (int i = 0; i < d; ++i) {
    if (cell(i, i) != 0.0) throw FormatError("nonzero diagonal at cell " + where(i, i));
    for (int j = 0; j < d; ++j) {
      if (!std::isfinite(cell(i, j)) || cell(i, j) < 0.0) {
        throw FormatError("negative or non-finite weight at cell " + where(i, j));
      }
      if (std::abs(cell(i, j) - cell(j, i)) > kSymmetryTolerance) {
        throw FormatError("asymmetric adjacency at cell " + where(i, j));
      }
    }
  }
  const EdgeOrder order(d);
  std::vector<double> w;
  w.reserve(static_cast<std::size_t>(order.size()));
  for (const Edge& e : order.edges()) w.push_back(cell(e.i, e.j));
  return WeightVector(d, std::move(w));
}

VertexPermutation::VertexPermutation(std::vector<int> image) : image_(std::move(image)) {
  if (!is_permutation_image(image_)) throw FormatError("image array is not a permutation");
}

VertexPermutation VertexPermutation::identity(int d) {
  std::vector<int> image(static_cast<std::size_t>(d));
  std::iota(image.begin(), image.end(), 0);
  return VertexPermutation(std::move(image));
}

VertexPermutation VertexPermutation::from_one_based(const std::vector<int>& image) {
  std::vector<int> zero(image.size());
  std::transform(image.begin(), image.end(), zero.begin(), [](int v) { return v - 1; });
  return VertexPermutation(std::move(zero));
}

std::vector<int> VertexPermutation::one_based() const {
  std::vector<int> out(image_.size());
  std::transform(image_.begin(), image_.end(), out.begin(), [](int v) { return v + 1; });
  return out;
}

bool VertexPermutation::is_identity() const {
  for (std::size_t v = 0; v < image_.size(); ++v) {
    if (image_[v] != static_cast<int>(v)) return false;
  }
  return true;
}

VertexPermutation VertexPermutation::inverse() const {
  std::vector<int> inv(image_.size());
  for (std::size_t v = 0; v < image_.size(); ++v) inv[static_cast<std::size_t>(image_[v])] = static_cast<int>(v);
  return VertexPermutation(std::move(inv));
}

VertexPermutation VertexPermutation::compose(const VertexPermutation& other) const {
  if (other.size() != size()) throw DimensionMismatch("composing permutations of different sizes");
  std::vector<int> out(image_.size());
  for (std::size_t v = 0; v < image_.size(); ++v) out[v] = image_[static_cast<std::size_t>(other.image_[v])];
  return VertexPermutation(std::move(out));
}

EdgePermutation::EdgePermutation(std::vector<int> mapping, VertexPermutation source)
    : mapping_(std::move(mapping)), source_(std::move(source)) {
  if (!is_permutation_image(mapping_)) throw FormatError("edge mapping is not a bijection");
}

std::vector<int> EdgePermutation::one_based() const {
  std::vector<int> out(mapping_.size());
  std::transform(mapping_.begin(), mapping_.end(), out.begin(), [](int v) { return v + 1; });
  return out;
}

bool EdgePermutation::is_identity() const {
  for (std::size_t k = 0; k < mapping_.size(); ++k) {
    if (mapping_[k] != static_cast<int>(k)) return false;
  }
  return true;
}

EdgePermutation EdgePermutation::inverse() const {
  std::vector<int> inv(mapping_.size());
  for (std::size_t k = 0; k < mapping_.size(); ++k) inv[static_cast<std::size_t>(mapping_[k])] = static_cast<int>(k);
  return EdgePermutation(std::move(inv), source_.size() > 0 ? source_.inverse() : source_);
}

EdgePermutation EdgePermutation::compose(const EdgePermutation& other) const {
  if (other.size() != size()) throw DimensionMismatch("composing edge permutations of different sizes");
  std::vector<int> out(mapping_.size());
  for (std::size_t k = 0; k < mapping_.size(); ++k) out[k] = mapping_[static_cast<std::size_t>(other.mapping_[k])];
  VertexPermutation src = (source_.size() > 0 && other.source_.size() == source_.size())
                              ? source_.compose(other.source_)
                              : VertexPermutation{};
  return EdgePermutation(std::move(out), std::move(src));
}

EdgePermutation induce(const VertexPermutation& sigma) {
  const EdgeOrder order(sigma.size());
  std::vector<int> mapping(static_cast<std::size_t>(order.size()));
  for (int k = 0; k < order.size(); ++k) {
    const Edge& e = order.edge(k);
    mapping[static_cast<std::size_t>(k)] = order.index(sigma(e.i), sigma(e.j));
  }
  return EdgePermutation(std::move(mapping), sigma);
}

EdgePermutation induce(const VertexPermutation& sigma, int d) {
  if (sigma.size() != d) {
    throw DimensionMismatch("vertex permutation acts on " + std::to_string(sigma.size()) +
                            " vertices, expected " + std::to_string(d));
  }
  return induce(sigma);
}

WeightVector act(const EdgePermutation& pi, const WeightVector& w) {
  if (static_cast<std::size_t>(pi.size()) != w.size()) {
    throw DimensionMismatch("edge permutation on " + std::to_string(pi.size()) +
                            " slots applied to vector of length " + std::to_string(w.size()));
  }
  std::vector<double> out(w.size());
  for (int k = 0; k < pi.size(); ++k) out[static_cast<std::size_t>(pi(k))] = w[static_cast<std::size_t>(k)];
  return WeightVector(w.d(), std::move(out));
}

int enumeration_cap() {
  if (const char* env = std::getenv("NETMEAN_MAX_D")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 2 && v <= 12) return static_cast<int>(v);
  }
  return kDefaultEnumerationCap;
}

void check_enumeration(int d) {
  require_d(d);
  const int cap = enumeration_cap();
  if (d > cap) {
    throw ComplexityError("d=" + std::to_string(d) + " exceeds the permutation enumeration cap " +
                          std::to_string(cap) + " (d! group elements); raise NETMEAN_MAX_D to override");
  }
}

const std::vector<EdgePermutation>& induced_group(int d) {
  check_enumeration(d);
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const std::vector<EdgePermutation>>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[d];
  if (!slot) {
    auto group = std::make_unique<std::vector<EdgePermutation>>();
    std::vector<int> image(static_cast<std::size_t>(d));
    std::iota(image.begin(), image.end(), 0);
    do {
      group->push_back(induce(VertexPermutation(image)));
    } while (std::next_permutation(image.begin(), image.end()));
    slot = std::move(group);
  }
  return *slot;
}

std::vector<WeightVector> orbit(const WeightVector& w) {
  const auto& group = induced_group(w.d());
  std::vector<WeightVector> out;
  out.reserve(group.size());
  for (const auto& pi : group) out.push_back(act(pi, w));
  std::sort(out.begin(), out.end(),
            [](const WeightVector& a, const WeightVector& b) { return a.values() < b.values(); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t stabilizer_size(const WeightVector& w) {
  const auto& group = induced_group(w.d());
  std::size_t count = 0;
  for (const auto& pi : group) {
    bool fixed = true;
    for (int k = 0; k < pi.size() && fixed; ++k) {
      fixed = w[static_cast<std::size_t>(pi(k))] == w[static_cast<std::size_t>(k)];
    }
    if (fixed) ++count;
  }
  return count;
}

bool is_distinct(const WeightVector& w) { return stabilizer_size(w) == 1; }

WeightVector canonicalize(const WeightVector& w) {
  const auto& group = induced_group(w.d());
  std::vector<double> best = w.values();
  std::vector<double> candidate(w.size());
  for (const auto& pi : group) {
    for (int k = 0; k < pi.size(); ++k) {
      candidate[static_cast<std::size_t>(pi(k))] = w[static_cast<std::size_t>(k)];
    }
    if (candidate > best) best = candidate;
  }
  return WeightVector(w.d(), std::move(best));
}

UnlabeledNetwork::UnlabeledNetwork(WeightVector representative)
    : representative_(std::move(representative)), canonical_(canonicalize(representative_)) {}

}  // namespace netmean
