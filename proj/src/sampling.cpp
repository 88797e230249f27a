#include "netmean/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace netmean {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Counts attempts and fails once the acceptance rate is hopeless.
class AcceptanceGuard {
 public:
  void attempt(bool accepted) {
    ++attempts_;
    if (accepted) ++accepted_;
    if (attempts_ >= 10000 && static_cast<double>(accepted_) < kMinAcceptanceRate * static_cast<double>(attempts_)) {
      throw SamplingError("rejection sampler accepted " + std::to_string(accepted_) + " of " +
                          std::to_string(attempts_) + " proposals, below the 1e-4 rate guard");
    }
  }

 private:
  std::uint64_t attempts_ = 0;
  std::uint64_t accepted_ = 0;
};

bool nonnegative(const std::vector<double>& x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return v >= 0.0; });
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) : key_(mix64(seed ^ mix64(stream + kGamma))) {}

RngStream::result_type RngStream::operator()() { return mix64(key_ + (++counter_) * kGamma); }

double RngStream::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double RngStream::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

RngStream rng_stream(std::uint64_t seed, std::uint64_t stream_id) { return RngStream(seed, stream_id); }

const char* to_string(DistributionKind k) {
  switch (k) {
    case DistributionKind::uniform_ball_in_cone:
      return "uniform_ball_in_cone";
    case DistributionKind::truncated_gaussian_cone:
      return "truncated_gaussian_cone";
    case DistributionKind::cone_example:
      return "cone_example";
  }
  return "unknown";
}

DistributionSpec resolve(const DistributionSpec& spec) {
  DistributionSpec r = spec;
  if (r.kind == DistributionKind::cone_example) {
    if (!(r.alpha >= 0.0) || !std::isfinite(r.alpha)) throw InfeasibleSpec("cone_example needs finite alpha >= 0");
    return r;
  }
  const WeightVector center(r.d, r.center);
  if (center.norm() == 0.0) throw InfeasibleSpec("center must be nonzero");
  if (r.axis.empty()) r.axis = r.center;
  const WeightVector axis(r.d, r.axis);
  if (r.half_angle == 0.0) r.half_angle = cone_angle(axis) / 4.0;
  if (!(r.half_angle > 0.0 && r.half_angle <= std::numbers::pi / 2.0)) {
    throw InfeasibleSpec("half_angle must lie in (0, pi/2]");
  }
  const double offset = angle(center, axis);

  if (r.kind == DistributionKind::uniform_ball_in_cone) {
    if (!(r.radius >= 0.0) || !std::isfinite(r.radius)) throw InfeasibleSpec("radius must be finite and >= 0");
    const double norm = center.norm();
    if (r.radius > norm) throw InfeasibleSpec("ball contains the origin");
    const double need = offset + std::asin(r.radius / norm);
    if (need > r.half_angle + 1e-12) {
      throw InfeasibleSpec("ball does not fit in the cone: needs half-angle " + std::to_string(need) + ", have " +
                           std::to_string(r.half_angle));
    }
    const double lowest = *std::min_element(r.center.begin(), r.center.end());
    if (lowest < r.radius) throw InfeasibleSpec("ball leaves the nonnegative octant");
  } else {
    if (!(r.sigma > 0.0) || !std::isfinite(r.sigma)) throw InfeasibleSpec("sigma must be finite and > 0");
    if (offset > r.half_angle) throw InfeasibleSpec("Gaussian center lies outside the cone");
  }
  return r;
}

Cone support_cone(const DistributionSpec& spec) {
  const DistributionSpec r = resolve(spec);
  return Cone(WeightVector(r.d, r.axis), r.half_angle);
}

SampleSet sample(const DistributionSpec& spec, std::size_t n, std::uint64_t stream) {
  if (n == 0) throw ValidationError("sample size must be at least 1");
  if (spec.kind == DistributionKind::cone_example) {
    throw InfeasibleSpec("cone_example draws planar points; use sample_cone_example");
  }
  const DistributionSpec r = resolve(spec);
  const Cone cone(WeightVector(r.d, r.axis), r.half_angle);
  const std::size_t dim = r.center.size();
  RngStream rng(r.seed, stream);
  AcceptanceGuard guard;
  std::vector<WeightVector> out;
  out.reserve(n);
  std::vector<double> x(dim);
  while (out.size() < n) {
    double dist2 = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      if (r.kind == DistributionKind::uniform_ball_in_cone) {
        x[k] = r.center[k] + r.radius * (2.0 * rng.uniform() - 1.0);
      } else {
        x[k] = r.center[k] + r.sigma * rng.normal();
      }
      dist2 += (x[k] - r.center[k]) * (x[k] - r.center[k]);
    }
    bool ok = nonnegative(x);
    if (ok && r.kind == DistributionKind::uniform_ball_in_cone) ok = dist2 <= r.radius * r.radius;
    WeightVector candidate;
    if (ok) {
      candidate = WeightVector(r.d, x);
      ok = in_cone(candidate, cone);
    }
    guard.attempt(ok);
    if (ok) out.push_back(std::move(candidate));
  }
  const bool aligned = r.half_angle <= cone_angle(cone.axis) / 2.0;
  return SampleSet(r.d, std::move(out), r.seed, aligned);
}

std::vector<std::array<double, 2>> sample_cone_example(double alpha, std::size_t n, std::uint64_t seed,
                                                        std::uint64_t stream) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw InfeasibleSpec("cone_example needs finite alpha >= 0");
  const double lo = std::max(0.0, alpha - 8.0);
  const double hi = alpha + 8.0;
  // Peak of r·exp(-(r-α)²).
  const double peak_r = (alpha + std::sqrt(alpha * alpha + 2.0)) / 2.0;
  const double peak = peak_r * std::exp(-(peak_r - alpha) * (peak_r - alpha));
  RngStream rng(seed, stream);
  AcceptanceGuard guard;
  std::vector<std::array<double, 2>> out;
  out.reserve(n);
  while (out.size() < n) {
    const double r = lo + (hi - lo) * rng.uniform();
    const double u = rng.uniform();
    const bool ok = u * peak < r * std::exp(-(r - alpha) * (r - alpha));
    guard.attempt(ok);
    if (!ok) continue;
    const double theta = -std::numbers::pi / 4.0 + (std::numbers::pi / 2.0) * rng.uniform();
    out.push_back({r * std::cos(theta), r * std::sin(theta)});
  }
  return out;
}

}  // namespace netmean
