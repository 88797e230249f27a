#include "netmean/frechet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "netmean/numeric.hpp"
#include "parallel.hpp"

namespace netmean {

namespace {

void require_dimension(const WeightVector& p, int d) {
  if (p.d() != d) {
    throw DimensionMismatch("network on " + std::to_string(p.d()) + " vertices compared with sample on " +
                            std::to_string(d));
  }
}

WeightVector average(const std::vector<WeightVector>& xs, int d) {
  std::vector<double> sum(xs.front().size(), 0.0);
  for (const auto& x : xs) {
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += x[k];
  }
  for (double& v : sum) v /= static_cast<double>(xs.size());
  return WeightVector(d, std::move(sum));
}

std::vector<WeightVector> align_all(const SampleSet& s, const WeightVector& target) {
  std::vector<WeightVector> out(s.size());
  detail::parallel_for(s.size(), [&](std::size_t i) { out[i] = representative_near(s[i], target); });
  return out;
}

double value_slack(double v) { return 1e-12 * (1.0 + std::abs(v)); }

}  // namespace

SampleSet::SampleSet(int d, std::vector<WeightVector> samples, std::optional<std::uint64_t> seed, bool aligned)
    : d_(d), samples_(std::move(samples)), seed_(seed), aligned_(aligned) {
  if (samples_.empty()) throw ValidationError("sample set needs at least one network");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (samples_[i].d() != d_) {
      throw DimensionMismatch("sample " + std::to_string(i + 1) + " has " + std::to_string(samples_[i].d()) +
                              " vertices, expected " + std::to_string(d_));
    }
  }
}

const char* to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::none:
      return "none";
    case CertificateKind::cone_unique:
      return "cone_unique";
    case CertificateKind::local_only:
      return "local_only";
  }
  return "unknown";
}

double frechet_value(const WeightVector& p, const SampleSet& s) {
  require_dimension(p, s.d());
  check_enumeration(s.d());
  std::vector<double> sq(s.size());
  detail::parallel_for(s.size(), [&](std::size_t i) {
    const double v = procrustean_distance(p, s[i]).value;
    sq[i] = v * v;
  });
  double sum = 0.0;
  for (double v : sq) sum += v;
  return sum / static_cast<double>(s.size());
}

WeightVector representative_near(const WeightVector& y, const WeightVector& axis) {
  return act(procrustean_distance(axis, y).aligner, y);
}

Cone uniqueness_cone(const WeightVector& axis) { return Cone(axis, cone_angle(axis) / 4.0); }

MeanResult mean_cone(const SampleSet& s, const WeightVector& axis) {
  require_dimension(axis, s.d());
  const Cone cone = uniqueness_cone(axis);
  std::vector<WeightVector> reps = align_all(s, axis);
  std::vector<std::size_t> offenders;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    if (!in_cone(reps[i], cone)) offenders.push_back(i);
  }
  if (!offenders.empty()) {
    std::string list;
    for (std::size_t k = 0; k < offenders.size() && k < 10; ++k) {
      list += (k ? ", " : "") + std::to_string(offenders[k] + 1);
    }
    if (offenders.size() > 10) list += ", ...";
    throw CertificateViolation(std::to_string(offenders.size()) + " sample(s) outside the a/4 cone about the axis: " +
                                   list,
                               std::move(offenders));
  }
  MeanResult r;
  r.mean = average(reps, s.d());
  r.frechet_value = frechet_value(r.mean, s);
  r.certificate.kind = CertificateKind::cone_unique;
  r.certificate.cone = cone;
  r.certificate.note =
      "empirical-measure certificate: every sample representative lies in the a/4 cone; convexity of the support "
      "is not checked";
  r.trace = {r.frechet_value};
  return r;
}

WeightVector medoid(const SampleSet& s) {
  std::size_t best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double v = frechet_value(s[i], s);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  return s[best];
}

MeanResult mean_iterative(const SampleSet& s, const IterativeOptions& options) {
  check_enumeration(s.d());
  if (options.max_iter < 1) throw ValidationError("max_iter must be at least 1");
  WeightVector x = options.init ? *options.init : medoid(s);
  require_dimension(x, s.d());

  MeanResult r;
  double value = frechet_value(x, s);
  r.trace.push_back(value);
  std::vector<WeightVector> reps;
  for (int it = 1; it <= options.max_iter; ++it) {
    reps = align_all(s, x);
    WeightVector next = average(reps, s.d());
    const double next_value = frechet_value(next, s);
    if (next_value > value + value_slack(value)) {
      throw NumericalError("align-and-average increased the Fréchet value at iteration " + std::to_string(it));
    }
    const double move = euclidean_distance(next, x);
    x = std::move(next);
    value = next_value;
    r.trace.push_back(value);
    r.iterations = it;
    if (move < options.tol) break;
  }
  r.mean = x;
  r.frechet_value = value;
  r.certificate.kind = CertificateKind::local_only;
  r.certificate.note = "align-and-average fixed point; global optimality not certified";

  // Post hoc check with the estimate itself as axis.
  if (is_distinct(x)) {
    const Cone cone = uniqueness_cone(x);
    const auto aligned = align_all(s, x);
    const bool all_in = std::all_of(aligned.begin(), aligned.end(), [&](const auto& y) { return in_cone(y, cone); });
    if (all_in && euclidean_distance(average(aligned, s.d()), x) <= std::max(options.tol, 1e-12 * (1.0 + x.norm()))) {
      r.certificate.kind = CertificateKind::cone_unique;
      r.certificate.cone = cone;
      r.certificate.note =
          "empirical-measure certificate: every aligned sample lies in the a/4 cone about the estimate";
    }
  }
  return r;
}

MeanResult mean_exact_small(const SampleSet& s) {
  check_enumeration(s.d());
  const auto& group = induced_group(s.d());
  const std::size_t n = s.size();
  const double g = static_cast<double>(group.size());
  const double assignments = std::pow(g, static_cast<double>(n - 1));
  if (assignments > kExactSmallBudget) {
    throw ComplexityError("exact mean needs (d!)^(n-1) = " + std::to_string(assignments) +
                          " assignments, above the 1e6 guard");
  }

  std::vector<std::size_t> digit(n, 0);  // digit[0] stays at the identity
  const std::size_t dim = s[0].size();
  WeightVector best_mean;
  WeightVector best_canonical;
  double best_value = std::numeric_limits<double>::infinity();
  for (;;) {
    std::vector<double> sum(s[0].values());
    for (std::size_t i = 1; i < n; ++i) {
      const WeightVector y = act(group[digit[i]], s[i]);
      for (std::size_t k = 0; k < dim; ++k) sum[k] += y[k];
    }
    for (double& v : sum) v /= static_cast<double>(n);
    WeightVector candidate(s.d(), std::move(sum));
    const double value = frechet_value(candidate, s);
    const double slack = value_slack(best_value);
    if (best_mean.size() == 0 || value < best_value - slack) {
      best_value = value;
      best_mean = candidate;
      best_canonical = canonicalize(candidate);
    } else if (value <= best_value + slack) {
      WeightVector c = canonicalize(candidate);
      if (c < best_canonical) {
        best_value = std::min(best_value, value);
        best_mean = std::move(candidate);
        best_canonical = std::move(c);
      }
    }

    std::size_t pos = 1;
    while (pos < n && ++digit[pos] == group.size()) digit[pos++] = 0;
    if (pos >= n) break;
  }

  MeanResult r;
  r.mean = best_mean;
  r.frechet_value = frechet_value(best_mean, s);
  r.certificate.kind = CertificateKind::none;
  r.certificate.note = "global minimizer by enumeration of all alignments";
  r.trace = {r.frechet_value};
  return r;
}

D3Moments d3_moments(const SampleSet& s) {
  if (s.d() != 3) throw InvalidDimension("stratified minimizer needs d = 3, got " + std::to_string(s.d()));
  D3Moments m;
  for (const auto& x : s.samples()) {
    std::array<double, 3> y{x[0], x[1], x[2]};
    std::sort(y.begin(), y.end());
    for (int i = 0; i < 3; ++i) m.c[i] += y[i];
    m.b += y[0] * y[0] + y[1] * y[1] + y[2] * y[2];
  }
  const double n = static_cast<double>(s.size());
  for (double& c : m.c) c /= n;
  m.b /= n;
  return m;
}

double d3_quadratic(const std::array<double, 3>& x, const D3Moments& m) {
  double v = m.b;
  for (int i = 0; i < 3; ++i) v += x[i] * x[i] - 2.0 * m.c[i] * x[i];
  return v;
}

bool in_d3_order_region(const std::array<double, 3>& x, double tol) {
  return x[0] >= -tol && x[1] >= x[0] - tol && x[2] >= x[1] - tol;
}

StrataResult mean_d3_strata(const D3Moments& m) {
  const auto [c1, c2, c3] = m.c;
  const double h12 = 0.5 * (c1 + c2);
  const double h23 = 0.5 * (c2 + c3);
  const double all = (c1 + c2 + c3) / 3.0;
  StrataResult out;
  out.table = {
      {1, 3, {c1, c2, c3}},       {2, 2, {0.0, c2, c3}},    {3, 2, {h12, h12, c3}},  {4, 2, {c1, h23, h23}},
      {5, 1, {0.0, 0.0, c3}},     {6, 1, {0.0, h23, h23}},  {7, 1, {all, all, all}}, {8, 0, {0.0, 0.0, 0.0}},
  };
  double best = std::numeric_limits<double>::infinity();
  const StratumCandidate* winner = nullptr;
  for (auto& row : out.table) {
    row.feasible = in_d3_order_region(row.point);
    row.value = d3_quadratic(row.point, m);
    if (row.feasible && row.value < best) {
      best = row.value;
      winner = &row;
    }
  }
  // The origin is always feasible, so a winner exists.
  out.winner = winner->row;
  out.result.mean = WeightVector(3, {winner->point[0], winner->point[1], winner->point[2]});
  out.result.frechet_value = winner->value;
  out.result.certificate.note = "minimum of the quadratic Fréchet function over the eight strata of the order region";
  out.result.trace = {winner->value};
  return out;
}

// ---- R²/Z4 examples ----

namespace {

constexpr double kPi = std::numbers::pi;

double radial_moment(double alpha, int k) {
  const double lo = std::max(0.0, alpha - 12.0);
  const double hi = alpha + 12.0;
  const double scale = std::sqrt(kPi) * std::pow(std::max(alpha, 1.0), k);
  return numeric::adaptive_simpson(
      [&](double r) { return std::pow(r, k) * std::exp(-(r - alpha) * (r - alpha)); }, lo, hi, 1e-13 * scale);
}

}  // namespace

ConeExampleSpec cone_example_spec(double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be finite and nonnegative");
  ConeExampleSpec spec;
  spec.alpha = alpha;
  spec.z = std::pow(kPi, 1.5) / 4.0 * (1.0 + std::erf(alpha));
  for (int k = 1; k <= 3; ++k) spec.c[static_cast<std::size_t>(k - 1)] = radial_moment(alpha, k);
  spec.chi1 = kPi / 2.0;
  spec.chi2 = std::sqrt(2.0);
  for (double c : spec.c) {
    if (!std::isfinite(c)) throw NumericalError("radial moment quadrature did not converge");
  }
  return spec;
}

double cone_example_r0(double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be finite and nonnegative");
  // Closed form with numerator and denominator scaled by exp(-α²).
  const double g = std::sqrt(kPi) / 2.0 * (1.0 + std::erf(alpha));
  const double e = std::exp(-alpha * alpha);
  const double first = e / 2.0 + alpha * g;
  const double second = alpha * e / 2.0 + (alpha * alpha + 0.5) * g;
  return 2.0 * std::sqrt(2.0) / kPi * second / first;
}

double cone_example_frechet(const ConeExampleSpec& spec, double r, double theta) {
  const double alpha = spec.alpha;
  const double lo = std::max(0.0, alpha - 12.0);
  const double hi = alpha + 12.0;
  const double scale = (r * r + hi * hi) * hi;
  auto radial = [&](double phi) {
    const double c = std::cos(theta - phi);
    return numeric::adaptive_simpson(
        [&](double s) { return (r * r + s * s - 2.0 * r * s * c) * std::exp(-(s - alpha) * (s - alpha)) * s; }, lo,
        hi, 1e-12 * scale);
  };
  const double integral = numeric::adaptive_simpson(radial, theta - kPi / 4.0, theta + kPi / 4.0, 1e-11 * scale);
  return integral / spec.z;
}

ConeExampleReport cone_example(double alpha, int theta_points) {
  if (theta_points < 1) throw ValidationError("theta grid needs at least one point");
  ConeExampleReport rep;
  rep.spec = cone_example_spec(alpha);
  rep.r0_closed_form = cone_example_r0(alpha);
  const auto f0 = [&](double r) { return cone_example_frechet(rep.spec, r, 0.0); };
  rep.r0_numeric = numeric::golden_section_minimize(f0, 0.0, alpha + 12.0, 1e-9);
  rep.f_min = f0(rep.r0_numeric);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int i = 0; i < theta_points; ++i) {
    const double theta = -kPi / 4.0 + (kPi / 2.0) * i / theta_points;
    const double v = cone_example_frechet(rep.spec, rep.r0_closed_form, theta);
    rep.theta_grid.push_back(theta);
    rep.f_on_grid.push_back(v);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  rep.theta_spread = hi - lo;
  return rep;
}

namespace {

// Uniform density (4/3π) s ds dφ on [1,2] x [0, π/2], distances in R²/Z4.
double annulus_frechet(double r, double theta) {
  constexpr double density = 4.0 / (3.0 * kPi);
  auto integrand_phi = [&](double phi) {
    double best = -2.0;
    for (int k = 0; k < 4; ++k) best = std::max(best, std::cos(theta - phi - k * kPi / 2.0));
    return numeric::adaptive_simpson([&](double s) { return (r * r + s * s - 2.0 * r * s * best) * s; }, 1.0, 2.0,
                                     1e-13);
  };
  // Split the angular range where the nearest rotation changes.
  std::vector<double> cuts{0.0, kPi / 2.0};
  for (int k = -4; k <= 4; ++k) {
    const double c = theta + kPi / 4.0 + k * kPi / 2.0;
    if (c > 0.0 && c < kPi / 2.0) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += numeric::adaptive_simpson(integrand_phi, cuts[i], cuts[i + 1], 1e-12);
  }
  return density * total;
}

}  // namespace

AnnulusReport quarter_annulus_mean(int curve_points) {
  if (curve_points < 2) throw ValidationError("annulus curve needs at least two points");
  AnnulusReport rep;
  rep.closed_form_radius = 28.0 * std::sqrt(2.0) / (9.0 * kPi);
  rep.centroid = 28.0 / (9.0 * kPi);
  rep.thetas = {0.0, kPi / 8.0, kPi / 4.0};
  for (std::size_t i = 0; i < rep.thetas.size(); ++i) {
    const double theta = rep.thetas[i];
    rep.radius_at_theta[i] =
        numeric::golden_section_minimize([&](double r) { return annulus_frechet(r, theta); }, 0.0, 3.0, 1e-10);
  }
  rep.computed_radius = rep.radius_at_theta[2];
  for (int i = 0; i < curve_points; ++i) {
    const double r = 3.0 * i / (curve_points - 1);
    rep.curve.push_back({r, annulus_frechet(r, kPi / 4.0)});
  }
  return rep;
}

}  // namespace netmean
