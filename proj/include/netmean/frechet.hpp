#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netmean/graphspace.hpp"
#include "netmean/metric.hpp"

namespace netmean {

// An i.i.d. sample of labeled networks on d vertices.
class SampleSet {
 public:
  SampleSet(int d, std::vector<WeightVector> samples, std::optional<std::uint64_t> seed = std::nullopt,
            bool aligned = false);

  int d() const noexcept { return d_; }
  std::size_t size() const noexcept { return samples_.size(); }
  const WeightVector& operator[](std::size_t i) const { return samples_[i]; }
  const std::vector<WeightVector>& samples() const noexcept { return samples_; }
  std::optional<std::uint64_t> seed() const noexcept { return seed_; }
  // True when every sample is stored as its representative in one fundamental domain.
  bool aligned() const noexcept { return aligned_; }

 private:
  int d_;
  std::vector<WeightVector> samples_;
  std::optional<std::uint64_t> seed_;
  bool aligned_;
};

enum class CertificateKind { none, cone_unique, local_only };

const char* to_string(CertificateKind k);

struct Certificate {
  CertificateKind kind = CertificateKind::none;
  std::optional<Cone> cone;
  std::string note;
};

struct MeanResult {
  WeightVector mean;
  double frechet_value = 0.0;
  Certificate certificate;
  int iterations = 0;
  // Fréchet value after each iteration; the first entry is the starting value.
  std::vector<double> trace;
};

// (1/n) Σ d_P(p, X_i)².
double frechet_value(const WeightVector& p, const SampleSet& s);

// Representative of y closest to the axis (the one in the axis' fundamental domain).
WeightVector representative_near(const WeightVector& y, const WeightVector& axis);

// Cone of half-angle a/4 about the axis, a = cone_angle(axis).
Cone uniqueness_cone(const WeightVector& axis);

// Closed-form mean when every sample has a representative in the a/4 cone.
// Throws CertificateViolation listing the offending sample indices otherwise.
MeanResult mean_cone(const SampleSet& s, const WeightVector& axis);

struct IterativeOptions {
  std::optional<WeightVector> init;  // defaults to the medoid
  int max_iter = 100;
  double tol = 1e-12;
};

// Sample with the smallest Fréchet value; lowest index on ties.
WeightVector medoid(const SampleSet& s);

// Align-and-average. The Fréchet value never increases between iterations.
MeanResult mean_iterative(const SampleSet& s, const IterativeOptions& options = {});

inline constexpr double kExactSmallBudget = 1e6;

// Global minimizer over all alignments of X_2..X_n against X_1. Guarded by
// (d!)^(n-1) <= 1e6.
MeanResult mean_exact_small(const SampleSet& s);

// d = 3, coordinates sorted ascending: the order region 0 <= x1 <= x2 <= x3.
struct D3Moments {
  std::array<double, 3> c{};
  double b = 0.0;
};

D3Moments d3_moments(const SampleSet& s);

// ‖x‖² − 2 Σ C_i x_i + B.
double d3_quadratic(const std::array<double, 3>& x, const D3Moments& m);

bool in_d3_order_region(const std::array<double, 3>& x, double tol = 0.0);

struct StratumCandidate {
  int row = 0;    // 1..8
  int dim = 0;    // stratum dimension
  std::array<double, 3> point{};
  bool feasible = false;
  double value = 0.0;
};

struct StrataResult {
  MeanResult result;
  std::vector<StratumCandidate> table;
  int winner = 0;  // row number
};

StrataResult mean_d3_strata(const D3Moments& m);

// Density proportional to exp(-(r-α)²) on the plane, folded onto the cone R²/Z4.
struct ConeExampleSpec {
  double alpha = 0.0;
  double z = 0.0;
  std::array<double, 3> c{};  // ∫ r^k exp(-(r-α)²) dr, k = 1, 2, 3
  double chi1 = 0.0;
  double chi2 = 0.0;
};

struct ConeExampleReport {
  ConeExampleSpec spec;
  double r0_closed_form = 0.0;
  double r0_numeric = 0.0;
  double f_min = 0.0;
  std::vector<double> theta_grid;
  std::vector<double> f_on_grid;  // f(r0, θ) for each grid angle
  double theta_spread = 0.0;      // max − min of f_on_grid
};

ConeExampleSpec cone_example_spec(double alpha);
double cone_example_r0(double alpha);
// Fréchet value at polar point (r, θ), by quadrature over the wedge nearest θ.
double cone_example_frechet(const ConeExampleSpec& spec, double r, double theta);
ConeExampleReport cone_example(double alpha, int theta_points = 16);

struct AnnulusReport {
  double stated_radius = 1.5;
  double computed_radius = 0.0;     // numerical minimizer at θ = π/4
  double closed_form_radius = 0.0;  // 28√2/(9π)
  std::array<double, 3> thetas{};
  std::array<double, 3> radius_at_theta{};
  std::vector<std::array<double, 2>> curve;  // (r, f(r)) at θ = π/4
  double centroid = 0.0;  // Euclidean centroid coordinate on the quarter plane
};

AnnulusReport quarter_annulus_mean(int curve_points = 101);

}  // namespace netmean
