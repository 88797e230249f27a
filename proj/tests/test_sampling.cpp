#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "netmean/sampling.hpp"
#include "netmean/stats.hpp"

using namespace netmean;

namespace {

DistributionSpec ball(double radius, std::uint64_t seed = 7) {
  DistributionSpec s;
  s.kind = DistributionKind::uniform_ball_in_cone;
  s.d = 3;
  s.center = {3, 2, 1};
  s.radius = radius;
  s.seed = seed;
  return s;
}

}  // namespace

TEST_CASE("counter-based streams") {
  RngStream a = rng_stream(1, 0);
  RngStream b = rng_stream(1, 0);
  RngStream c = rng_stream(1, 1);
  int differ = 0;
  for (int i = 0; i < 10; ++i) {
    const auto x = a();
    CHECK(x == b());
    differ += x != c();
  }
  CHECK(differ == 10);
  CHECK(a.index() == 10);

  RngStream u = rng_stream(2, 0);
  double sum = 0.0;
  const int n = 1'000'000;
  for (int i = 0; i < n; ++i) {
    const double v = u.uniform();
    REQUIRE(v >= 0.0);
    REQUIRE(v < 1.0);
    sum += v;
  }
  CHECK(std::abs(sum / n - 0.5) < 0.002);

  RngStream g = rng_stream(3, 0);
  double m1 = 0.0, m2 = 0.0;
  const int ng = 200'000;
  for (int i = 0; i < ng; ++i) {
    const double v = g.normal();
    m1 += v;
    m2 += v * v;
  }
  CHECK(std::abs(m1 / ng) < 0.01);
  CHECK(std::abs(m2 / ng - 1.0) < 0.02);
  CHECK(g.index() == 2 * static_cast<std::uint64_t>(ng));
}

TEST_CASE("spec resolution") {
  const DistributionSpec r = resolve(ball(0.2));
  CHECK(r.axis == std::vector<double>{3, 2, 1});
  CHECK(r.half_angle == doctest::Approx(std::acos(13.0 / 14.0) / 4.0));
  CHECK_THROWS_AS(resolve(ball(1.5)), InfeasibleSpec);
  DistributionSpec bad = ball(0.2);
  bad.center = {1, 1, 1};
  CHECK_THROWS_AS(resolve(bad), ValidationError);
  bad = ball(0.2);
  bad.center = {3, 2};
  CHECK_THROWS_AS(resolve(bad), ValidationError);
  DistributionSpec gauss = ball(0.0);
  gauss.kind = DistributionKind::truncated_gaussian_cone;
  CHECK_THROWS_AS(resolve(gauss), InfeasibleSpec);
  gauss.sigma = 0.05;
  CHECK_NOTHROW(resolve(gauss));
}

TEST_CASE("radius zero gives the center") {
  const SampleSet s = sample(ball(0.0), 5);
  for (const auto& x : s.samples()) CHECK(x == WeightVector(3, {3, 2, 1}));
  CHECK(s.aligned());
  CHECK(s.seed() == 7u);
}

TEST_CASE("sampling is reproducible") {
  const SampleSet a = sample(ball(0.2), 100, 4);
  const SampleSet b = sample(ball(0.2), 100, 4);
  const SampleSet c = sample(ball(0.2), 100, 5);
  CHECK(a.samples() == b.samples());
  CHECK_FALSE(a.samples() == c.samples());
  CHECK_FALSE(sample(ball(0.2, 8), 100, 4).samples() == a.samples());
}

TEST_CASE("uniform ball moments and support") {
  const double rho = 0.2;
  const std::size_t n = 100'000;
  const SampleSet s = sample(ball(rho), n);
  const Cone cone = support_cone(ball(rho));
  const double sd = rho / std::sqrt(5.0);
  std::array<double, 3> mean{};
  for (const auto& x : s.samples()) {
    double r2 = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
      mean[k] += x[k];
      r2 += (x[k] - std::array<double, 3>{3, 2, 1}[k]) * (x[k] - std::array<double, 3>{3, 2, 1}[k]);
      REQUIRE(x[k] >= 0.0);
    }
    REQUIRE(r2 <= rho * rho * (1 + 1e-12));
    REQUIRE(in_cone(x, cone));
  }
  const std::array<double, 3> c{3, 2, 1};
  for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(mean[k] / n - c[k]) < 3.0 * sd / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("truncated gaussian support") {
  DistributionSpec g = ball(0.0);
  g.kind = DistributionKind::truncated_gaussian_cone;
  g.sigma = 0.1;
  const SampleSet s = sample(g, 5000);
  const Cone cone = support_cone(g);
  for (const auto& x : s.samples()) {
    REQUIRE(in_cone(x, cone));
    for (double v : x.values()) REQUIRE(v >= 0.0);
  }
}

TEST_CASE("hopeless rejection raises") {
  DistributionSpec g = ball(0.0);
  g.kind = DistributionKind::truncated_gaussian_cone;
  g.sigma = 1e4;
  g.half_angle = 1e-3;
  CHECK_THROWS_AS(sample(g, 10), SamplingError);
}

TEST_CASE("cone example sampler") {
  DistributionSpec e;
  e.kind = DistributionKind::cone_example;
  e.alpha = 15.0;
  CHECK_THROWS_AS(sample(e, 10), InfeasibleSpec);
  const auto pts = sample_cone_example(15.0, 20'000, 9);
  double radial = 0.0;
  for (const auto& p : pts) {
    const double r = std::hypot(p[0], p[1]);
    REQUIRE(std::abs(std::atan2(p[1], p[0])) <= std::numbers::pi / 4.0);
    radial += r;
  }
  // E[r] under r·exp(-(r-α)²) is c2/c1, close to α + 1/(2α).
  CHECK(std::abs(radial / pts.size() - (15.0 + 1.0 / 30.0)) < 0.02);
  CHECK(sample_cone_example(15.0, 10, 9) == sample_cone_example(15.0, 10, 9));
}

TEST_CASE("results do not depend on the thread count") {
  const DistributionSpec spec = ball(0.2);
  setenv("NETMEAN_THREADS", "1", 1);
  const SllnTable one = slln_experiment(spec, {50, 100}, 6);
  setenv("NETMEAN_THREADS", "4", 1);
  const SllnTable four = slln_experiment(spec, {50, 100}, 6);
  unsetenv("NETMEAN_THREADS");
  CHECK(one.errors == four.errors);
}
