#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "netmean/frechet.hpp"

namespace netmean {

// Counter-based generator: variate i of stream s under seed k is a pure
// function of (k, s, i). The mixing is the SplitMix64 finalizer applied to a
// Weyl sequence whose start is derived from (seed, stream).
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream);

  result_type operator()();
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Standard normal by Box-Muller; consumes two variates per call.
  double normal();

  std::uint64_t index() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

RngStream rng_stream(std::uint64_t seed, std::uint64_t stream_id);

enum class DistributionKind { uniform_ball_in_cone, truncated_gaussian_cone, cone_example };

const char* to_string(DistributionKind k);

struct DistributionSpec {
  DistributionKind kind = DistributionKind::uniform_ball_in_cone;
  int d = 3;
  std::vector<double> center;
  double radius = 0.0;
  // Empty axis means the center; zero half-angle means a/4 of the axis.
  std::vector<double> axis;
  double half_angle = 0.0;
  double sigma = 0.0;
  double alpha = 0.0;
  std::uint64_t seed = 0;
};

// Spec with defaults filled in. Throws InfeasibleSpec when the support
// constraints cannot hold.
DistributionSpec resolve(const DistributionSpec& spec);

Cone support_cone(const DistributionSpec& spec);

inline constexpr double kMinAcceptanceRate = 1e-4;

// n draws from substream `stream` of the spec's seed. Network kinds only.
SampleSet sample(const DistributionSpec& spec, std::size_t n, std::uint64_t stream = 0);

// Planar draws (x, y) from the R²/Z4 example density on the wedge |θ| < π/4,
// radial density proportional to r·exp(-(r-α)²) on [max(0, α-8), α+8].
std::vector<std::array<double, 2>> sample_cone_example(double alpha, std::size_t n, std::uint64_t seed,
                                                        std::uint64_t stream = 0);

}  // namespace netmean
