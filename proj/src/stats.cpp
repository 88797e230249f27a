#include "netmean/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "parallel.hpp"

namespace netmean {

namespace {

Eigen::VectorXd as_vector(const WeightVector& w) {
  return Eigen::Map<const Eigen::VectorXd>(w.values().data(), static_cast<Eigen::Index>(w.size()));
}

Eigen::MatrixXd sample_covariance(const std::vector<Eigen::VectorXd>& xs) {
  const Eigen::Index dim = xs.front().size();
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(dim, dim);
  if (xs.size() < 2) return cov;
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(dim);
  for (const auto& x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  for (const auto& x : xs) {
    const Eigen::VectorXd c = x - mean;
    cov.noalias() += c * c.transpose();
  }
  cov /= static_cast<double>(xs.size() - 1);
  return 0.5 * (cov + cov.transpose());
}

const Cone& certified_cone(const MeanResult& mean) {
  if (mean.certificate.kind != CertificateKind::cone_unique || !mean.certificate.cone) {
    throw ValidationError("covariance needs a cone_unique certificate; the chart is undefined otherwise");
  }
  return *mean.certificate.cone;
}

double squared_dp(const std::vector<double>& p, int d, const WeightVector& y) {
  const double v = procrustean_distance(WeightVector(d, p), y).value;
  return v * v;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

const char* to_string(CovarianceMethod m) {
  return m == CovarianceMethod::lifted_sample ? "lifted_sample" : "sandwich";
}

const char* to_string(Pooling p) { return p == Pooling::weighted ? "weighted" : "as_printed"; }

CovarianceEstimate estimate_covariance(const SampleSet& s, const MeanResult& mean, CovarianceMethod method) {
  const Cone& cone = certified_cone(mean);
  CovarianceEstimate est;
  est.method = method;
  const std::size_t n = s.size();
  const int d = s.d();

  if (method == CovarianceMethod::lifted_sample) {
    std::vector<Eigen::VectorXd> lifted(n);
    detail::parallel_for(n, [&](std::size_t i) { lifted[i] = as_vector(representative_near(s[i], cone.axis)); });
    est.sigma = sample_covariance(lifted);
    return est;
  }

  const std::vector<double> p = mean.mean.values();
  const std::size_t dim = p.size();
  const double h = 1e-5 * std::max(1.0, mean.mean.norm());
  if (*std::min_element(p.begin(), p.end()) <= h) {
    throw NumericalError("mean lies within one difference step of the octant boundary");
  }
  auto shifted = [&](std::size_t j, double dj, std::size_t k, double dk) {
    std::vector<double> q = p;
    q[j] += dj;
    q[k] += dk;
    return q;
  };

  // Hessian of the empirical Fréchet function.
  auto f = [&](const std::vector<double>& q) { return frechet_value(WeightVector(d, q), s); };
  Eigen::MatrixXd lambda(dim, dim);
  const double f0 = f(p);
  for (std::size_t j = 0; j < dim; ++j) {
    lambda(j, j) = (f(shifted(j, h, j, 0.0)) - 2.0 * f0 + f(shifted(j, -h, j, 0.0))) / (h * h);
    for (std::size_t k = j + 1; k < dim; ++k) {
      const double v = (f(shifted(j, h, k, h)) - f(shifted(j, h, k, -h)) - f(shifted(j, -h, k, h)) +
                        f(shifted(j, -h, k, -h))) /
                       (4.0 * h * h);
      lambda(j, k) = lambda(k, j) = v;
    }
  }

  // Per-sample gradients of d_P².
  std::vector<Eigen::VectorXd> grads(n, Eigen::VectorXd(dim));
  detail::parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = 0; j < dim; ++j) {
      grads[i](static_cast<Eigen::Index>(j)) =
          (squared_dp(shifted(j, h, j, 0.0), d, s[i]) - squared_dp(shifted(j, -h, j, 0.0), d, s[i])) / (2.0 * h);
    }
  });
  const Eigen::MatrixXd c = sample_covariance(grads);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(lambda);
  const Eigen::VectorXd ev = eig.eigenvalues().cwiseAbs();
  est.lambda_condition = ev.minCoeff() > 0.0 ? ev.maxCoeff() / ev.minCoeff() : std::numeric_limits<double>::infinity();
  if (!(ev.minCoeff() > 1e-12 * ev.maxCoeff())) {
    throw NumericalError("Hessian estimate is singular (condition number " + std::to_string(est.lambda_condition) +
                         ")");
  }
  const Eigen::MatrixXd inv = lambda.inverse();
  const Eigen::MatrixXd sigma = inv * c * inv;
  est.sigma = 0.5 * (sigma + sigma.transpose());
  est.lambda = lambda;
  est.c = c;
  return est;
}

double chi_squared_upper_tail(double x, double df) {
  if (!(df > 0.0)) throw DomainError("chi-squared degrees of freedom must be positive");
  if (x <= 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return boost::math::gamma_q(df / 2.0, x / 2.0);
}

double chi_squared_cdf(double x, double df) {
  if (!(df > 0.0)) throw DomainError("chi-squared degrees of freedom must be positive");
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return boost::math::gamma_p(df / 2.0, x / 2.0);
}

TestReport k_sample_test(const std::vector<SampleSet>& groups, const WeightVector& axis, Pooling pooling) {
  if (groups.size() < 2) throw ValidationError("k-sample test needs at least two groups");
  const int d = groups.front().d();
  for (const auto& g : groups) {
    if (g.d() != d) throw DimensionMismatch("groups differ in vertex count");
  }
  TestReport rep;
  rep.pooling = pooling;
  const auto dim = static_cast<Eigen::Index>(edge_count(d));

  std::vector<WeightVector> pooled;
  std::size_t n_total = 0;
  for (const auto& g : groups) n_total += g.size();
  pooled.reserve(n_total);
  rep.pooled_covariance = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& g : groups) {
    const MeanResult m = mean_cone(g, axis);
    rep.group_means.push_back(m.mean);
    const Eigen::MatrixXd cov = estimate_covariance(g, m).sigma;
    const double nj = static_cast<double>(g.size());
    rep.pooled_covariance += pooling == Pooling::weighted ? Eigen::MatrixXd(cov * (nj / n_total)) : Eigen::MatrixXd(cov / nj);
    pooled.insert(pooled.end(), g.samples().begin(), g.samples().end());
  }
  rep.grand_mean = mean_cone(SampleSet(d, std::move(pooled)), axis).mean;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(rep.pooled_covariance);
  const Eigen::VectorXd ev = eig.eigenvalues();
  const double top = ev.cwiseAbs().maxCoeff();
  Eigen::VectorXd inv_ev = Eigen::VectorXd::Zero(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (ev(i) > 1e-12 * top && ev(i) > 0.0) {
      inv_ev(i) = 1.0 / ev(i);
      ++rep.rank;
    }
  }
  const Eigen::MatrixXd inverse = eig.eigenvectors() * inv_ev.asDiagonal() * eig.eigenvectors().transpose();
  const int k = static_cast<int>(groups.size());
  rep.df = (k - 1) * static_cast<int>(dim);
  if (rep.rank < dim) {
    rep.pseudo_inverse = true;
    rep.warnings.push_back("pooled covariance is singular (rank " + std::to_string(rep.rank) + " of " +
                           std::to_string(dim) + "); pseudo-inverse used and df reduced to (k-1)*rank");
    rep.df = (k - 1) * rep.rank;
  }

  const Eigen::VectorXd grand = as_vector(rep.grand_mean);
  for (std::size_t j = 0; j < groups.size(); ++j) {
    const Eigen::VectorXd diff = as_vector(rep.group_means[j]) - grand;
    rep.statistic += static_cast<double>(groups[j].size()) * diff.dot(inverse * diff);
  }
  rep.p_value = rep.df > 0 ? chi_squared_upper_tail(rep.statistic, rep.df) : 1.0;
  if (pooling == Pooling::as_printed) {
    rep.warnings.push_back("as_printed pooling divides each group covariance by n_j; the statistic is then not "
                           "on the chi-squared scale");
  }
  return rep;
}

PopulationTruth population_truth(const DistributionSpec& spec, std::size_t surrogate_n) {
  const DistributionSpec r = resolve(spec);
  PopulationTruth t;
  const auto dim = static_cast<Eigen::Index>(r.center.size());
  if (r.kind == DistributionKind::uniform_ball_in_cone) {
    // The ball lies inside the cone and the octant, so nothing is truncated.
    t.mean = WeightVector(r.d, r.center);
    t.sigma = Eigen::MatrixXd::Identity(dim, dim) * (r.radius * r.radius / static_cast<double>(dim + 2));
    return t;
  }
  if (r.kind == DistributionKind::cone_example) throw InfeasibleSpec("cone_example has no network-space truth");
  const SampleSet big = sample(r, surrogate_n, std::numeric_limits<std::uint64_t>::max());
  std::vector<Eigen::VectorXd> xs;
  xs.reserve(big.size());
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(dim);
  for (const auto& x : big.samples()) {
    xs.push_back(as_vector(x));
    mean += xs.back();
  }
  mean /= static_cast<double>(xs.size());
  t.mean = WeightVector(r.d, std::vector<double>(mean.data(), mean.data() + dim));
  t.sigma = sample_covariance(xs);
  t.surrogate = true;
  return t;
}

SllnTable slln_experiment(const DistributionSpec& spec, const std::vector<std::size_t>& n_grid, int replications) {
  if (replications < 1) throw ValidationError("replications must be at least 1");
  if (n_grid.empty()) throw ValidationError("n grid is empty");
  const DistributionSpec r = resolve(spec);
  const WeightVector axis(r.d, r.axis);
  SllnTable table;
  table.truth = population_truth(r);
  const auto reps = static_cast<std::size_t>(replications);
  table.errors.assign(n_grid.size(), std::vector<double>(reps));
  detail::parallel_for(n_grid.size() * reps, [&](std::size_t job) {
    const std::size_t g = job / reps;
    const std::size_t rep = job % reps;
    const SampleSet s = sample(r, n_grid[g], (static_cast<std::uint64_t>(g) << 32) | rep);
    const MeanResult m = mean_cone(s, axis);
    table.errors[g][rep] = procrustean_distance(m.mean, table.truth.mean).value;
  });
  for (std::size_t g = 0; g < n_grid.size(); ++g) {
    const auto& e = table.errors[g];
    table.rows.push_back({n_grid[g], median_of(e), *std::max_element(e.begin(), e.end())});
  }
  return table;
}

double ks_distance_chi_squared(std::vector<double> values, double df) {
  if (values.empty()) throw ValidationError("no values for the KS distance");
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double dist = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double f = chi_squared_cdf(values[i], df);
    dist = std::max({dist, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return dist;
}

CltReport clt_experiment(const DistributionSpec& spec, std::size_t n, int replications,
                         const std::optional<Eigen::MatrixXd>& sigma, std::optional<double> threshold) {
  if (replications < 1) throw ValidationError("replications must be at least 1");
  const DistributionSpec r = resolve(spec);
  const WeightVector axis(r.d, r.axis);
  const PopulationTruth truth = population_truth(r);
  CltReport rep;
  rep.n = n;
  rep.replications = replications;
  rep.surrogate_truth = truth.surrogate;
  rep.sigma_used = sigma ? *sigma : truth.sigma;
  const auto dim = static_cast<Eigen::Index>(truth.mean.size());
  if (rep.sigma_used.rows() != dim || rep.sigma_used.cols() != dim) {
    throw DimensionMismatch("covariance size does not match the edge count");
  }
  rep.threshold = threshold ? *threshold : 1.63 / std::sqrt(static_cast<double>(replications));

  const auto reps = static_cast<std::size_t>(replications);
  std::vector<Eigen::VectorXd> z(reps);
  const Eigen::VectorXd mu = as_vector(truth.mean);
  const double root_n = std::sqrt(static_cast<double>(n));
  detail::parallel_for(reps, [&](std::size_t i) {
    const MeanResult m = mean_cone(sample(r, n, i), axis);
    z[i] = root_n * (as_vector(m.mean) - mu);
  });

  const Eigen::LDLT<Eigen::MatrixXd> solver(rep.sigma_used);
  if (solver.info() != Eigen::Success || !solver.isPositive()) {
    throw NumericalError("covariance used for the Mahalanobis statistic is not positive definite");
  }
  for (const auto& zi : z) rep.mahalanobis.push_back(zi.dot(solver.solve(zi)));
  rep.ks_distance = ks_distance_chi_squared(rep.mahalanobis, static_cast<double>(dim));
  rep.pass = rep.ks_distance < rep.threshold;

  if (reps < 3) {
    rep.warnings.push_back("fewer than three replications: skewness and kurtosis are undefined");
  } else {
    for (Eigen::Index k = 0; k < dim; ++k) {
      double mean = 0.0;
      for (const auto& zi : z) mean += zi(k);
      mean /= static_cast<double>(reps);
      double m2 = 0.0, m3 = 0.0, m4 = 0.0;
      for (const auto& zi : z) {
        const double c = zi(k) - mean;
        m2 += c * c;
        m3 += c * c * c;
        m4 += c * c * c * c;
      }
      m2 /= static_cast<double>(reps);
      m3 /= static_cast<double>(reps);
      m4 /= static_cast<double>(reps);
      rep.skewness.push_back(m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0);
      rep.excess_kurtosis.push_back(m2 > 0.0 ? m4 / (m2 * m2) - 3.0 : 0.0);
    }
  }
  if (replications == 1) rep.warnings.push_back("a single replication gives a one-point KS comparison");
  if (truth.surrogate && !sigma) rep.warnings.push_back("truth estimated from a large sample (surrogate)");
  return rep;
}

SizeStudy k_sample_size_study(const DistributionSpec& spec, int k, std::size_t n, int replications, double level,
                              Pooling pooling) {
  if (k < 2) throw ValidationError("k must be at least 2");
  if (replications < 1) throw ValidationError("replications must be at least 1");
  const DistributionSpec r = resolve(spec);
  const WeightVector axis(r.d, r.axis);
  SizeStudy study;
  study.k = k;
  study.n = n;
  study.replications = replications;
  study.level = level;
  study.p_values.resize(static_cast<std::size_t>(replications));
  const auto kk = static_cast<std::uint64_t>(k);
  detail::parallel_for(study.p_values.size(), [&](std::size_t rep) {
    std::vector<SampleSet> groups;
    for (std::uint64_t j = 0; j < kk; ++j) groups.push_back(sample(r, n, rep * kk + j));
    study.p_values[rep] = k_sample_test(groups, axis, pooling).p_value;
  });
  study.rejections = static_cast<int>(
      std::count_if(study.p_values.begin(), study.p_values.end(), [&](double p) { return p < level; }));
  study.rejection_rate = static_cast<double>(study.rejections) / replications;
  return study;
}

ComparisonReport compare_dP_dE(const WeightVector& x, const WeightVector& y) {
  const DistanceResult dp = procrustean_distance(x, y);
  ComparisonReport rep;
  rep.d_e = euclidean_distance(x, y);
  rep.d_p = dp.value;
  rep.aligner = dp.aligner;
  rep.strict = rep.d_p < rep.d_e - 1e-12;
  return rep;
}

}  // namespace netmean
