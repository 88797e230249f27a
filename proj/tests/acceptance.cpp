// Acceptance checks. One PASS/FAIL line per criterion; exit status is nonzero
// when any selected criterion fails.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <iostream>
#include <numbers>
#include <sstream>

#include "netmean/frechet.hpp"
#include "netmean/io.hpp"
#include "netmean/polyhedra.hpp"
#include "netmean/sampling.hpp"
#include "netmean/stats.hpp"
#include "oracles.hpp"

using namespace netmean;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(10);
  s << v;
  return s.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

DistributionSpec ball_spec(std::uint64_t seed) {
  DistributionSpec s;
  s.kind = DistributionKind::uniform_ball_in_cone;
  s.d = 3;
  s.center = {3, 2, 1};
  s.radius = 0.2;
  s.seed = seed;
  return s;
}

WeightVector random_distinct(int d, std::mt19937_64& rng) {
  for (;;) {
    const WeightVector w = oracle::random_weights(d, rng, 0.5, 10.0);
    if (is_distinct(w)) return w;
  }
}

// ---- 1 ----
Outcome domain_counts() {
  Outcome o;
  const struct {
    std::vector<double> w;
    std::size_t halfspaces, rays;
  } cases[] = {{{1, 2, 3, 4, 5, 6}, 7, 7}, {{1, 2, 3, 4, 5, 6.1}, 18, 79}};
  for (const auto& c : cases) {
    const auto t0 = std::chrono::steady_clock::now();
    const Polyhedron red = reduce(build_fundamental_domain(WeightVector(4, c.w)));
    const std::size_t nr = rays(red).size();
    const double secs = seconds_since(t0);
    const bool ok = red.halfspaces.size() == c.halfspaces && nr == c.rays && secs < 10.0;
    o.pass = o.pass && ok;
    o.detail += "w6=" + fmt(c.w.back()) + ": " + std::to_string(red.halfspaces.size()) + " half-spaces (expect " +
                std::to_string(c.halfspaces) + "), " + std::to_string(nr) + " rays (expect " + std::to_string(c.rays) +
                "), " + fmt(secs) + " s; ";
  }
  return o;
}

// ---- 2 ----
Outcome d3_domain() {
  const Polyhedron red = reduce(build_fundamental_domain(WeightVector(3, {3, 2, 1})));
  const std::vector<std::vector<double>> expected{{-1, 1, 0}, {0, -1, 1}, {0, 0, -1}};
  Outcome o;
  o.pass = red.halfspaces.size() == expected.size();
  for (const auto& e : expected) {
    bool found = false;
    for (const auto& h : red.halfspaces) {
      bool parallel = true;
      double dot = 0.0;
      for (std::size_t i = 0; i < 3; ++i) {
        dot += h.normal[i] * e[i];
        for (std::size_t j = 0; j < 3; ++j) parallel = parallel && h.normal[i] * e[j] == h.normal[j] * e[i];
      }
      found = found || (parallel && dot > 0.0);
    }
    o.pass = o.pass && found;
  }
  o.detail = std::to_string(red.halfspaces.size()) + " constraints, matching x>=y, y>=z, z>=0: " +
             (o.pass ? "yes" : "no");
  return o;
}

// ---- 3 ----
Outcome cone_example_check() {
  const auto t0 = std::chrono::steady_clock::now();
  const ConeExampleReport r = cone_example(15.0, 16);
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = std::abs(r.r0_closed_form - 13.5348) < 5e-4 && std::abs(r.r0_numeric - r.r0_closed_form) < 1e-3 &&
           r.theta_spread < 1e-8 && secs < 5.0;
  o.detail = "r0=" + fmt(r.r0_closed_form) + ", numeric=" + fmt(r.r0_numeric) + ", theta spread=" +
             fmt(r.theta_spread) + ", " + fmt(secs) + " s";
  return o;
}

// ---- 4 ----
Outcome isometry_certificate() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(4004);
  const WeightVector axes[] = {WeightVector(3, {3, 2, 1}), random_distinct(4, rng)};
  int failures = 0;
  double worst = 0.0;
  for (const auto& axis : axes) {
    const double quarter = cone_angle(axis) / 4.0;
    for (int t = 0; t < 10'000; ++t) {
      const WeightVector u = oracle::random_in_cone(axis, quarter, rng);
      const WeightVector v = oracle::random_in_cone(axis, quarter, rng);
      const DistanceResult r = procrustean_distance(u, v);
      const double gap = std::abs(r.value - euclidean_distance(u, v));
      worst = std::max(worst, gap);
      if (!r.aligner.is_identity() || gap > 1e-12) ++failures;
    }
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = failures == 0 && secs < 30.0;
  o.detail = std::to_string(failures) + " failures in 2x10^4 pairs, max |d_P-d_E|=" + fmt(worst) + ", " +
             fmt(secs) + " s";
  return o;
}

// ---- 5 ----
Outcome oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(5005);
  int failures = 0;
  double worst = 0.0;
  for (int set = 0; set < 50; ++set) {
    const int d = set < 25 ? 3 : 4;
    const int n = 1 + static_cast<int>(rng() % (d == 3 ? 5 : 3));
    const WeightVector axis = random_distinct(d, rng);
    const double quarter = cone_angle(axis) / 4.0;
    std::vector<WeightVector> xs;
    for (int i = 0; i < n; ++i) {
      xs.push_back(oracle::relabel(oracle::random_in_cone(axis, quarter, rng), oracle::random_perm(d, rng)));
    }
    const SampleSet s(d, xs);
    const WeightVector exact = mean_exact_small(s).mean;
    std::vector<WeightVector> means{mean_cone(s, axis).mean};
    for (int start = 0; start < 10; ++start) {
      IterativeOptions opt;
      opt.init = oracle::relabel(xs[rng() % xs.size()], oracle::random_perm(d, rng));
      means.push_back(mean_iterative(s, opt).mean);
    }
    for (const auto& m : means) {
      const double gap = procrustean_distance(m, exact).value;
      worst = std::max(worst, gap);
      if (gap > 1e-9) ++failures;
    }
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = failures == 0 && secs < 120.0;
  o.detail = std::to_string(failures) + " disagreements over 50 sets x 11 runs, max d_P gap=" + fmt(worst) + ", " +
             fmt(secs) + " s";
  return o;
}

// ---- 6 ----
// Grid search over x = (a, a+b, a+b+c), a, b, c >= 0, then repeated 41^3 refinement.
std::array<double, 3> grid_minimizer(const D3Moments& m) {
  const double cn = std::sqrt(m.c[0] * m.c[0] + m.c[1] * m.c[1] + m.c[2] * m.c[2]);
  const double range = 1.05 * std::max(cn, 1e-3);
  auto point = [](double a, double b, double c) { return std::array<double, 3>{a, a + b, a + b + c}; };
  std::array<double, 3> best{0, 0, 0};
  double best_value = d3_quadratic(point(0, 0, 0), m);
  const int coarse = 200;
  double h = range / (coarse - 1);
  for (int i = 0; i < coarse; ++i) {
    for (int j = 0; j < coarse; ++j) {
      for (int k = 0; k < coarse; ++k) {
        const double v = d3_quadratic(point(i * h, j * h, k * h), m);
        if (v < best_value) {
          best_value = v;
          best = {i * h, j * h, k * h};
        }
      }
    }
  }
  while (h > 1e-9) {
    const double step = h / 10.0;
    const std::array<double, 3> center = best;
    for (int i = -20; i <= 20; ++i) {
      for (int j = -20; j <= 20; ++j) {
        for (int k = -20; k <= 20; ++k) {
          const double a = center[0] + i * step, b = center[1] + j * step, c = center[2] + k * step;
          if (a < 0.0 || b < 0.0 || c < 0.0) continue;
          const double v = d3_quadratic(point(a, b, c), m);
          if (v < best_value) {
            best_value = v;
            best = {a, b, c};
          }
        }
      }
    }
    h = step;
  }
  return point(best[0], best[1], best[2]);
}

Outcome strata_vs_grid() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(6006);
  std::uniform_real_distribution<double> u(-2.0, 4.0);
  int failures = 0;
  double worst_pos = 0.0, worst_val = 0.0;
  std::array<int, 9> winners{};
  for (int t = 0; t < 200; ++t) {
    D3Moments m;
    m.c = {u(rng), u(rng), u(rng)};
    m.b = m.c[0] * m.c[0] + m.c[1] * m.c[1] + m.c[2] * m.c[2];
    const StrataResult r = mean_d3_strata(m);
    ++winners[static_cast<std::size_t>(r.winner)];
    const std::array<double, 3> g = grid_minimizer(m);
    double pos = 0.0;
    for (std::size_t i = 0; i < 3; ++i) pos = std::max(pos, std::abs(g[i] - r.result.mean[i]));
    const double val = std::abs(d3_quadratic(g, m) - r.result.frechet_value);
    worst_pos = std::max(worst_pos, pos);
    worst_val = std::max(worst_val, val);
    if (pos > 1e-4 || val > 1e-6) ++failures;
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = failures == 0 && secs < 120.0;
  std::string rows;
  for (int i = 1; i <= 8; ++i) rows += (i > 1 ? "," : "") + std::to_string(winners[static_cast<std::size_t>(i)]);
  o.detail = std::to_string(failures) + " mismatches in 200, max position gap=" + fmt(worst_pos) +
             ", max value gap=" + fmt(worst_val) + ", winners by row [" + rows + "], " + fmt(secs) + " s";
  return o;
}

// ---- 7 ----
Outcome slln() {
  const auto t0 = std::chrono::steady_clock::now();
  const DistributionSpec spec = ball_spec(7007);
  const SllnTable t = slln_experiment(spec, {100, 1000, 10'000}, 100);
  const double secs = seconds_since(t0);
  Outcome o;
  bool monotone = true;
  for (std::size_t i = 1; i < t.rows.size(); ++i) monotone = monotone && t.rows[i].median < t.rows[i - 1].median;
  o.pass = monotone && t.rows.back().median < 0.05 * spec.radius && secs < 300.0;
  o.detail = "medians";
  for (const auto& r : t.rows) o.detail += " n=" + std::to_string(r.n) + ":" + fmt(r.median);
  o.detail += ", bound " + fmt(0.05 * spec.radius) + ", " + fmt(secs) + " s";
  return o;
}

// ---- 8 ----
Outcome clt() {
  const auto t0 = std::chrono::steady_clock::now();
  const CltReport r = clt_experiment(ball_spec(8008), 2000, 500);
  const double secs = seconds_since(t0);
  const double threshold = 1.63 / std::sqrt(500.0);
  Outcome o;
  o.pass = r.ks_distance < threshold && secs < 600.0;
  o.detail = "KS=" + fmt(r.ks_distance) + " threshold=" + fmt(threshold) + ", " + fmt(secs) + " s";
  return o;
}

// ---- 9 ----
Outcome size_study() {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  for (int k : {2, 3}) {
    const SizeStudy s = k_sample_size_study(ball_spec(9000 + static_cast<std::uint64_t>(k)), k, 500, 1000, 0.05);
    const bool ok = s.rejection_rate >= 0.03 && s.rejection_rate <= 0.07;
    o.pass = o.pass && ok;
    o.detail += "k=" + std::to_string(k) + " rate=" + fmt(s.rejection_rate) + "; ";
  }
  const double secs = seconds_since(t0);
  o.pass = o.pass && secs < 600.0;
  o.detail += fmt(secs) + " s";
  return o;
}

// ---- 10 ----
Outcome property_suites() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(10010);
  std::map<std::string, int> failures;
  const int cases = 1000;
  for (int t = 0; t < cases; ++t) {
    const int d = 3 + static_cast<int>(rng() % 3);
    const WeightVector x = oracle::random_weights(d, rng);
    const WeightVector y = oracle::random_weights(d, rng);
    const WeightVector z = oracle::random_weights(d, rng);
    const double xy = procrustean_distance(x, y).value;

    const WeightVector xs = oracle::relabel(x, oracle::random_perm(d, rng));
    const WeightVector ys = oracle::relabel(y, oracle::random_perm(d, rng));
    if (std::abs(procrustean_distance(xs, ys).value - xy) > 1e-12 * (1.0 + xy)) ++failures["quotient invariance"];

    if (procrustean_distance(x, z).value > xy + procrustean_distance(y, z).value + 1e-12) {
      ++failures["triangle inequality"];
    }
    if (std::abs(procrustean_distance_double_min(x, y) - xy) > 1e-12 * (1.0 + xy)) ++failures["single vs double min"];

    std::vector<double> tied(static_cast<std::size_t>(edge_count(d)));
    for (double& v : tied) v = static_cast<double>(rng() % 3);
    const WeightVector w_tied(d, tied);
    if (static_cast<long>(orbit(w_tied).size() * stabilizer_size(w_tied)) != oracle::factorial(d)) {
      ++failures["orbit-stabilizer"];
    }

    const int dd = 3 + static_cast<int>(rng() % 2);
    const WeightVector w = random_distinct(dd, rng);
    const double a = cone_angle(w);
    if (std::sin(a / 4.0) < std::sin(a / 2.0) / 2.0) ++failures["sin(a/4) >= sin(a/2)/2"];

    const Polyhedron f = build_fundamental_domain(w);
    if (contains(f, oracle::random_in_cone(w, a / 2.0, rng)) == Membership::outside) {
      ++failures["a/2 cone inside the domain"];
    }
    const WeightVector g = oracle::random_weights(dd, rng);
    if (contains(f, act(procrustean_distance(w, g).aligner, g)) != Membership::inside) {
      ++failures["interior representative"];
    }
  }
  const double secs = seconds_since(t0);
  Outcome o;
  int total = 0;
  for (const auto& [name, count] : failures) {
    total += count;
    o.detail += name + ":" + std::to_string(count) + " ";
  }
  o.pass = total == 0 && secs < 120.0;
  o.detail += std::to_string(total) + " failures in 7 suites x " + std::to_string(cases) + " cases, " + fmt(secs) + " s";
  return o;
}

// ---- 11 ----
Outcome discrepancy_reports(const fs::path& dir) {
  const fs::path compare = dir / "intolerable_report.json";
  const fs::path annulus = dir / "annulus_report.json";
  io::write_text(compare, io::intolerable_report().dump(2) + "\n");
  io::write_text(annulus, io::annulus_report(quarter_annulus_mean()).dump(2) + "\n");
  Outcome o;
  const io::json c = io::json::parse(io::read_text(compare));
  bool cases_ok = c.contains("cases") && !c.at("cases").empty();
  if (cases_ok) {
    for (const auto& item : c.at("cases")) cases_ok = cases_ok && item.contains("claim") && item.contains("computed");
  }
  const io::json a = io::json::parse(io::read_text(annulus));
  const bool annulus_ok = a.contains("claim") && a.contains("computed");
  o.pass = cases_ok && annulus_ok;
  o.detail = compare.string() + (cases_ok ? " ok" : " missing claim/computed") + ", " + annulus.string() +
             (annulus_ok ? " ok" : " missing claim/computed");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  int only = 0;
  std::string reports = "reports";
  app.add_option("--criterion", only, "run a single criterion (1-11)")->check(CLI::Range(1, 11));
  app.add_option("--reports", reports, "directory for the discrepancy reports");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "fundamental-domain counts", domain_counts},
      {2, "d=3 domain constraints", d3_domain},
      {3, "cone example minimizer circle", cone_example_check},
      {4, "isometry inside the a/4 cone", isometry_certificate},
      {5, "cone, iterative and exact means agree", oracle_equivalence},
      {6, "d=3 strata against grid search", strata_vs_grid},
      {7, "strong law for the sample mean", slln},
      {8, "central limit via Mahalanobis KS", clt},
      {9, "k-sample test size", size_study},
      {10, "metric and action property suites", property_suites},
      {11, "discrepancy reports", [&] { return discrepancy_reports(reports); }},
  };

  bool all = true;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << o.detail << std::endl;
  }
  return all ? 0 : 1;
}
