#include "netmean/cli.hpp"

#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "netmean/io.hpp"

namespace netmean::cli {

namespace {

using io::json;

struct Options {
  // shared
  int d = 0;
  std::string w;
  std::optional<std::uint64_t> seed;
  std::size_t n = 0;
  int reps = 0;
  std::optional<double> tol;
  std::string method;
  std::string out;
  std::string csv;
  int max_d = 0;
  // per command
  std::string a, b, x, y;
  std::string samples, axis, init, covariance;
  int max_iter = 100;
  bool reduce = false;
  bool with_rays = false;
  std::string point;
  std::string groups, pooling = "weighted";
  std::string spec, experiment = "sample", n_grid = "100,1000,10000";
  int k = 2;
  double level = 0.05;
  double alpha = 15.0;
  int theta_points = 16;
  int curve_points = 101;
};

class Session {
 public:
  Session(std::string command, std::string argv_text, std::ostream& out)
      : command_(std::move(command)), inputs_(std::move(argv_text)), out_(out) {}

  std::string read(const std::string& path) {
    std::string text = io::read_text(path);
    inputs_ += '\0';
    inputs_ += text;
    return text;
  }

  WeightVector graph(const std::string& path) {
    read(path);
    return io::read_graph(path);
  }

  SampleSet sample_set(const std::string& path) {
    read(path);
    if (std::filesystem::exists(io::sidecar_path(path))) read(io::sidecar_path(path).string());
    SampleSet s = io::read_sample_set(path);
    if (!input_seed_ && s.seed()) input_seed_ = s.seed();
    return s;
  }

  // Seed recorded with the first sample set read, if any.
  std::optional<std::uint64_t> input_seed() const { return input_seed_; }

  void emit(const json& result, std::optional<std::uint64_t> seed, const std::string& out_path) {
    json doc;
    doc["command"] = command_;
    doc["input_digest"] = io::digest(inputs_);
    doc["seed"] = seed ? json(*seed) : json(nullptr);
    doc["result"] = result;
    const std::string text = doc.dump(2) + "\n";
    if (out_path.empty()) {
      out_ << text;
    } else {
      io::write_text(out_path, text);
    }
  }

 private:
  std::string command_;
  std::string inputs_;
  std::ostream& out_;
  std::optional<std::uint64_t> input_seed_;
};

WeightVector require_weights(const std::string& text, int d, const char* flag) {
  if (text.empty()) throw ValidationError(std::string("missing ") + flag);
  return io::parse_weights(text, d);
}

WeightVector pick_axis(const Options& o, const SampleSet& s, json& notes) {
  if (!o.axis.empty()) {
    notes["axis_source"] = "user";
    return io::parse_weights(o.axis, s.d());
  }
  notes["axis_source"] = "medoid representative (heuristic)";
  return medoid(s);
}

json run_dist(Session& ses, const Options& o) {
  WeightVector x, y;
  if (!o.a.empty() || !o.b.empty()) {
    if (o.a.empty() || o.b.empty()) throw ValidationError("dist needs both --a and --b");
    x = ses.graph(o.a);
    y = ses.graph(o.b);
  } else {
    x = require_weights(o.x, o.d, "--x or --a");
    y = require_weights(o.y, o.d, "--y or --b");
  }
  DistanceMethod method = DistanceMethod::exact;
  if (o.method == "bnb" || o.method == "branch_and_bound") {
    method = DistanceMethod::branch_and_bound;
  } else if (!o.method.empty() && o.method != "exact") {
    throw ValidationError("unknown distance method '" + o.method + "'");
  }
  json j = io::to_json(procrustean_distance(x, y, method));
  j["method"] = method == DistanceMethod::exact ? "exact" : "branch_and_bound";
  j["d_E"] = euclidean_distance(x, y);
  return j;
}

json run_mean(Session& ses, const Options& o) {
  if (o.samples.empty()) throw ValidationError("mean needs --samples");
  const SampleSet s = ses.sample_set(o.samples);
  const std::string method = o.method.empty() ? "auto" : o.method;
  json notes = json::object();
  MeanResult result;
  if (method == "strata") {
    const StrataResult st = mean_d3_strata(d3_moments(s));
    json j = io::to_json(st);
    j["method"] = method;
    return j;
  }
  if (method == "cone") {
    result = mean_cone(s, pick_axis(o, s, notes));
  } else if (method == "iterative") {
    IterativeOptions opt;
    if (!o.init.empty()) opt.init = io::parse_weights(o.init, s.d());
    opt.max_iter = o.max_iter;
    if (o.tol) opt.tol = *o.tol;
    result = mean_iterative(s, opt);
  } else if (method == "exact") {
    result = mean_exact_small(s);
  } else if (method == "auto") {
    try {
      result = mean_cone(s, pick_axis(o, s, notes));
    } catch (const CertificateViolation& e) {
      notes["fallback"] = std::string("cone certificate failed: ") + e.what();
    } catch (const DegenerateAxis& e) {
      notes["fallback"] = std::string("axis unusable: ") + e.what();
    }
    if (notes.contains("fallback")) {
      IterativeOptions opt;
      opt.max_iter = o.max_iter;
      if (o.tol) opt.tol = *o.tol;
      result = mean_iterative(s, opt);
    }
  } else {
    throw ValidationError("unknown mean method '" + method + "'");
  }
  json j = io::to_json(result);
  j["method"] = method;
  for (auto& [key, value] : notes.items()) j[key] = value;
  if (!o.covariance.empty()) {
    CovarianceMethod cm = CovarianceMethod::lifted_sample;
    if (o.covariance == "sandwich") {
      cm = CovarianceMethod::sandwich;
    } else if (o.covariance != "lifted_sample") {
      throw ValidationError("unknown covariance method '" + o.covariance + "'");
    }
    j["covariance"] = io::to_json(estimate_covariance(s, result, cm));
    j["covariance_note"] =
        "squared-distance loss: the Hessian and gradient covariance use d_P squared, so the sandwich reduces to "
        "the lifted sample covariance on certified data";
  }
  if (!o.csv.empty()) io::write_text(o.csv, io::trace_csv(result));
  return j;
}

json run_domain(const Options& o, bool rays_command) {
  const WeightVector w = require_weights(o.w, o.d, "--w");
  Polyhedron p = build_fundamental_domain(w);
  json j;
  j["raw_halfspace_count"] = p.halfspaces.size();
  if (o.reduce || rays_command) p = reduce(p);
  if (o.with_rays || rays_command) p.rays = rays(p);
  j["reduced"] = o.reduce || rays_command;
  j["polyhedron"] = io::to_json(p);
  if (!o.point.empty()) {
    const WeightVector z = io::parse_weights(o.point, w.d());
    j["point"] = io::to_json(z);
    j["membership"] = to_string(contains(p, z, o.tol.value_or(kBoundaryTolerance)));
  }
  return j;
}

json run_test(Session& ses, const Options& o) {
  if (o.groups.empty()) throw ValidationError("test needs --groups a.csv,b.csv[,...]");
  std::vector<SampleSet> groups;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = o.groups.find(',', start);
    groups.push_back(ses.sample_set(o.groups.substr(start, pos == std::string::npos ? std::string::npos : pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  json notes = json::object();
  const WeightVector axis = pick_axis(o, groups.front(), notes);
  Pooling pooling = Pooling::weighted;
  if (o.pooling == "as_printed") {
    pooling = Pooling::as_printed;
  } else if (o.pooling != "weighted") {
    throw ValidationError("unknown pooling '" + o.pooling + "'");
  }
  json j = io::to_json(k_sample_test(groups, axis, pooling));
  j["axis"] = io::to_json(axis);
  for (auto& [key, value] : notes.items()) j[key] = value;
  return j;
}

json run_simulate(Session& ses, const Options& o, std::optional<std::uint64_t>& seed) {
  if (o.spec.empty()) throw ValidationError("simulate needs --spec FILE.json");
  DistributionSpec spec;
  try {
    spec = io::spec_from_json(json::parse(ses.read(o.spec)));
  } catch (const json::exception& e) {
    throw FormatError(o.spec + ": " + e.what());
  }
  if (o.seed) spec.seed = *o.seed;
  seed = spec.seed;
  json j;
  j["spec"] = io::to_json(resolve(spec));
  if (o.experiment == "sample") {
    const std::size_t n = o.n ? o.n : 100;
    if (spec.kind == DistributionKind::cone_example) {
      const auto pts = sample_cone_example(spec.alpha, n, spec.seed);
      if (!o.csv.empty()) {
        std::string text = "x,y\n";
        for (const auto& [px, py] : pts) text += io::format_double(px) + "," + io::format_double(py) + "\n";
        io::write_text(o.csv, text);
      }
      j["n"] = pts.size();
    } else {
      const SampleSet s = sample(spec, n);
      if (!o.csv.empty()) io::write_sample_set(o.csv, s);
      j["n"] = s.size();
      j["aligned"] = s.aligned();
    }
    if (!o.csv.empty()) j["samples_csv"] = o.csv;
  } else if (o.experiment == "slln") {
    const SllnTable t = slln_experiment(spec, io::parse_sizes(o.n_grid), o.reps ? o.reps : 100);
    j["slln"] = io::to_json(t);
    if (!o.csv.empty()) io::write_text(o.csv, io::slln_csv(t));
  } else if (o.experiment == "clt") {
    const CltReport r = clt_experiment(spec, o.n ? o.n : 2000, o.reps ? o.reps : 500, std::nullopt, o.tol);
    j["clt"] = io::to_json(r);
    if (!o.csv.empty()) io::write_text(o.csv, io::mahalanobis_csv(r));
  } else if (o.experiment == "size") {
    const SizeStudy st = k_sample_size_study(spec, o.k, o.n ? o.n : 500, o.reps ? o.reps : 1000, o.level);
    j["size"] = io::to_json(st);
  } else {
    throw ValidationError("unknown experiment '" + o.experiment + "'");
  }
  j["experiment"] = o.experiment;
  return j;
}

json run_compare(const Options& o) {
  if (o.x.empty() && o.y.empty()) return io::intolerable_report();
  const WeightVector x = require_weights(o.x, o.d, "--x");
  const WeightVector y = require_weights(o.y, o.d, "--y");
  json j = io::to_json(compare_dP_dE(x, y));
  j["x"] = io::to_json(x);
  j["y"] = io::to_json(y);
  return j;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fréchet means of unlabeled weighted networks", "netmean"};
  app.require_subcommand(1);
  Options o;

  auto add_d = [&](CLI::App* c) { c->add_option("--d", o.d, "number of vertices (inferred from --w when omitted)"); };
  auto add_out = [&](CLI::App* c) { c->add_option("--out", o.out, "write the JSON result here instead of stdout"); };
  auto add_max_d = [&](CLI::App* c) {
    c->add_option("--max-d", o.max_d, "override the permutation enumeration cap (NETMEAN_MAX_D)");
  };

  auto* dist = app.add_subcommand("dist", "Procrustean distance between two networks");
  dist->add_option("--a", o.a, "first network file (.json or adjacency .csv)");
  dist->add_option("--b", o.b, "second network file");
  dist->add_option("--x", o.x, "first network as comma-separated weights");
  dist->add_option("--y", o.y, "second network as comma-separated weights");
  dist->add_option("--method", o.method, "exact | bnb");
  add_d(dist);
  add_out(dist);
  add_max_d(dist);

  auto* mean = app.add_subcommand("mean", "Fréchet mean of a sample set");
  mean->add_option("--samples", o.samples, "sample CSV (one network per row)")->required();
  mean->add_option("--method", o.method, "auto | cone | iterative | exact | strata");
  mean->add_option("--axis", o.axis, "cone axis weights (default: medoid)");
  mean->add_option("--init", o.init, "starting point for the iterative method");
  mean->add_option("--max-iter", o.max_iter, "iteration limit for the iterative method");
  mean->add_option("--tol", o.tol, "stopping tolerance for the iterative method");
  mean->add_option("--covariance", o.covariance, "also estimate the covariance: lifted_sample | sandwich");
  mean->add_option("--csv", o.csv, "write the per-iteration Fréchet values here");
  add_out(mean);
  add_max_d(mean);

  auto* domain = app.add_subcommand("domain", "fundamental domain about a distinct axis");
  domain->add_option("--w", o.w, "axis weights, comma separated")->required();
  domain->add_flag("--reduce", o.reduce, "remove redundant half-spaces");
  domain->add_flag("--rays", o.with_rays, "enumerate extreme rays");
  domain->add_option("--point", o.point, "classify this point against the domain");
  domain->add_option("--tol", o.tol, "boundary tolerance for --point");
  add_d(domain);
  add_out(domain);
  add_max_d(domain);

  auto* rays_cmd = app.add_subcommand("rays", "extreme rays of the reduced fundamental domain");
  rays_cmd->add_option("--w", o.w, "axis weights, comma separated")->required();
  add_d(rays_cmd);
  add_out(rays_cmd);
  add_max_d(rays_cmd);

  auto* test = app.add_subcommand("test", "k-sample test for equal Fréchet means");
  test->add_option("--groups", o.groups, "comma-separated sample CSV files")->required();
  test->add_option("--axis", o.axis, "common cone axis (default: medoid of the first group)");
  test->add_option("--pooling", o.pooling, "weighted | as_printed");
  add_out(test);
  add_max_d(test);

  auto* simulate = app.add_subcommand("simulate", "sampling and asymptotic experiments");
  simulate->add_option("--spec", o.spec, "distribution spec JSON")->required();
  simulate->add_option("--experiment", o.experiment, "sample | slln | clt | size");
  simulate->add_option("--seed", o.seed, "override the spec seed");
  simulate->add_option("--n", o.n, "sample size");
  simulate->add_option("--reps", o.reps, "replications");
  simulate->add_option("--n-grid", o.n_grid, "sample sizes for slln, comma separated");
  simulate->add_option("--k", o.k, "groups for the size study");
  simulate->add_option("--level", o.level, "nominal level for the size study");
  simulate->add_option("--tol", o.tol, "KS pass threshold for clt (default 1.63/sqrt(reps))");
  simulate->add_option("--csv", o.csv, "CSV output (samples, slln table or Mahalanobis values)");
  add_out(simulate);
  add_max_d(simulate);

  auto* cone_cmd = app.add_subcommand("example-cone", "Fréchet means of the rotationally symmetric cone density");
  cone_cmd->add_option("--alpha", o.alpha, "radial mode alpha >= 0");
  cone_cmd->add_option("--theta-points", o.theta_points, "angles in the invariance check");
  add_out(cone_cmd);

  auto* annulus = app.add_subcommand("example-annulus", "Fréchet mean radius of the uniform quarter annulus");
  annulus->add_option("--curve-points", o.curve_points, "points on the f(r) curve");
  annulus->add_option("--csv", o.csv, "write the f(r) curve here");
  add_out(annulus);

  auto* compare = app.add_subcommand("compare", "Procrustean vs Euclidean distance");
  compare->add_option("--x", o.x, "first network weights (default: built-in report near (1,1,1))");
  compare->add_option("--y", o.y, "second network weights");
  add_d(compare);
  add_out(compare);
  add_max_d(compare);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitValidation;
  }

  CLI::App* chosen = app.get_subcommands().front();
  std::string argv_text;
  for (int i = 1; i < argc; ++i) {
    argv_text += argv[i];
    argv_text += ' ';
  }

  try {
    if (o.max_d > 0) setenv("NETMEAN_MAX_D", std::to_string(o.max_d).c_str(), 1);
    Session ses(chosen->get_name(), argv_text, out);
    std::optional<std::uint64_t> seed = o.seed;
    json result;
    const std::string& name = chosen->get_name();
    if (name == "dist") {
      result = run_dist(ses, o);
    } else if (name == "mean") {
      result = run_mean(ses, o);
    } else if (name == "domain") {
      result = run_domain(o, false);
    } else if (name == "rays") {
      result = run_domain(o, true);
    } else if (name == "test") {
      result = run_test(ses, o);
    } else if (name == "simulate") {
      result = run_simulate(ses, o, seed);
    } else if (name == "example-cone") {
      result = io::to_json(cone_example(o.alpha, o.theta_points));
    } else if (name == "example-annulus") {
      const AnnulusReport r = quarter_annulus_mean(o.curve_points);
      result = io::annulus_report(r);
      if (!o.csv.empty()) io::write_text(o.csv, io::annulus_curve_csv(r));
    } else if (name == "compare") {
      result = run_compare(o);
    }
    if (!seed) seed = ses.input_seed();
    ses.emit(result, seed, o.out);
    return kExitOk;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const SamplingError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ComplexityError& e) {
    err << "error: " << e.what() << "\n";
    return kExitGuard;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << "\n";
    return kExitGuard;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace netmean::cli
