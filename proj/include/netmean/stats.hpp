#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "netmean/frechet.hpp"
#include "netmean/sampling.hpp"

namespace netmean {

enum class CovarianceMethod { lifted_sample, sandwich };

const char* to_string(CovarianceMethod m);

struct CovarianceEstimate {
  Eigen::MatrixXd sigma;
  CovarianceMethod method = CovarianceMethod::lifted_sample;
  std::optional<Eigen::MatrixXd> lambda;  // Hessian of the Fréchet function
  std::optional<Eigen::MatrixXd> c;       // covariance of per-sample gradients
  double lambda_condition = 1.0;
};

// Asymptotic covariance of the sample mean in the cone chart. Requires a
// cone_unique certificate; the chart is the identity on the certified cone.
// The sandwich variant uses central differences with step 1e-5·max(1, ‖mean‖).
CovarianceEstimate estimate_covariance(const SampleSet& s, const MeanResult& mean,
                                       CovarianceMethod method = CovarianceMethod::lifted_sample);

// How per-group covariances combine into Ξ̂.
//   weighted:   Σ (n_j / n) Ξ̂_j
//   as_printed: Σ Ξ̂_j / n_j
enum class Pooling { weighted, as_printed };

const char* to_string(Pooling p);

struct TestReport {
  double statistic = 0.0;
  int df = 0;
  double p_value = 1.0;
  std::vector<WeightVector> group_means;
  WeightVector grand_mean;
  Eigen::MatrixXd pooled_covariance;
  int rank = 0;
  bool pseudo_inverse = false;
  Pooling pooling = Pooling::weighted;
  std::vector<std::string> warnings;
};

// k-sample test for equal Fréchet means; every group must be cone-certified
// against the common axis.
TestReport k_sample_test(const std::vector<SampleSet>& groups, const WeightVector& axis,
                         Pooling pooling = Pooling::weighted);

double chi_squared_upper_tail(double x, double df);
double chi_squared_cdf(double x, double df);

struct PopulationTruth {
  WeightVector mean;
  Eigen::MatrixXd sigma;
  bool surrogate = false;  // estimated from a large sample rather than known in closed form
};

inline constexpr std::size_t kSurrogateSampleSize = 1'000'000;

PopulationTruth population_truth(const DistributionSpec& spec, std::size_t surrogate_n = kSurrogateSampleSize);

struct SllnRow {
  std::size_t n = 0;
  double median = 0.0;
  double max = 0.0;
};

struct SllnTable {
  std::vector<SllnRow> rows;
  // errors[g][r]: d_P(μ_n, μ) for grid entry g and replication r.
  std::vector<std::vector<double>> errors;
  PopulationTruth truth;
};

SllnTable slln_experiment(const DistributionSpec& spec, const std::vector<std::size_t>& n_grid, int replications);

struct CltReport {
  std::size_t n = 0;
  int replications = 0;
  std::vector<double> skewness;         // per coordinate; empty when undefined
  std::vector<double> excess_kurtosis;  // per coordinate; empty when undefined
  std::vector<double> mahalanobis;
  double ks_distance = 0.0;
  double threshold = 0.0;
  bool pass = false;
  Eigen::MatrixXd sigma_used;
  bool surrogate_truth = false;
  std::vector<std::string> warnings;
};

// Default threshold is the 1% Kolmogorov-Smirnov critical value 1.63/√reps.
CltReport clt_experiment(const DistributionSpec& spec, std::size_t n, int replications,
                         const std::optional<Eigen::MatrixXd>& sigma = std::nullopt,
                         std::optional<double> threshold = std::nullopt);

// Kolmogorov-Smirnov distance between the sample and the χ² law with df degrees of freedom.
double ks_distance_chi_squared(std::vector<double> values, double df);

struct SizeStudy {
  int k = 0;
  std::size_t n = 0;
  int replications = 0;
  double level = 0.05;
  int rejections = 0;
  double rejection_rate = 0.0;
  std::vector<double> p_values;
};

// Repeated k-sample tests on k groups drawn from the same spec.
SizeStudy k_sample_size_study(const DistributionSpec& spec, int k, std::size_t n, int replications,
                              double level = 0.05, Pooling pooling = Pooling::weighted);

struct ComparisonReport {
  double d_e = 0.0;
  double d_p = 0.0;
  EdgePermutation aligner;
  bool strict = false;
};

ComparisonReport compare_dP_dE(const WeightVector& x, const WeightVector& y);

}  // namespace netmean
