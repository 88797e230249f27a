#include "netmean/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace netmean::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view token) {
  token = trim(token);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
    throw FormatError("not a number: '" + std::string(token) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> lines(std::string_view text) {
  std::vector<std::string_view> out;
  for (auto line : split(text, '\n')) {
    line = trim(line);
    if (!line.empty() && line.front() != '#') out.push_back(line);
  }
  return out;
}

bool looks_numeric(std::string_view line) {
  for (char c : line) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == ',' || c == '-' || c == '+' || c == 'e' ||
          c == 'E' || c == ' ')) {
      return false;
    }
  }
  return true;
}

json number_list(std::span<const double> v) {
  json out = json::array();
  for (double x : v) out.push_back(x);
  return out;
}

json number_list(const std::vector<double>& v) { return number_list(std::span<const double>(v)); }

json int_list(const std::vector<int>& v) {
  json out = json::array();
  for (int x : v) out.push_back(x);
  return out;
}

std::vector<double> doubles_from(const json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : j) {
    if (!x.is_number()) throw FormatError(std::string(what) + " must contain only numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

const char* origin_name(HalfSpace::Origin o) {
  switch (o) {
    case HalfSpace::Origin::orbit:
      return "orbit";
    case HalfSpace::Origin::coordinate:
      return "coordinate";
    case HalfSpace::Origin::external:
      return "external";
  }
  return "unknown";
}

}  // namespace

std::string digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << text;
  if (!out) throw FormatError("write failed for " + path.string());
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::vector<double> parse_doubles(std::string_view text) {
  std::vector<double> out;
  if (trim(text).empty()) return out;
  for (auto token : split(text, ',')) out.push_back(parse_double(token));
  return out;
}

std::vector<std::size_t> parse_sizes(std::string_view text) {
  std::vector<std::size_t> out;
  for (double v : parse_doubles(text)) {
    if (!(v >= 1.0) || v != std::floor(v)) throw FormatError("expected positive integers, got " + format_double(v));
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

WeightVector parse_weights(std::string_view text, int d) {
  std::vector<double> v = parse_doubles(text);
  if (d == 0) d = node_count_for(static_cast<int>(v.size()));
  return WeightVector(d, std::move(v));
}

WeightVector graph_from_json(const json& j) {
  if (j.is_object() && j.contains("adjacency")) {
    std::vector<std::vector<double>> rows;
    const json& a = j.at("adjacency");
    if (!a.is_array()) throw FormatError("adjacency must be an array of rows");
    for (const auto& row : a) rows.push_back(doubles_from(row, "adjacency row"));
    WeightVector w = vectorize(rows);
    if (j.contains("d") && j.at("d").get<int>() != w.d()) throw DimensionMismatch("d does not match adjacency size");
    return w;
  }
  if (j.is_object() && j.contains("weights")) {
    std::vector<double> v = doubles_from(j.at("weights"), "weights");
    const int d = j.contains("d") ? j.at("d").get<int>() : node_count_for(static_cast<int>(v.size()));
    return WeightVector(d, std::move(v));
  }
  if (j.is_array()) {
    std::vector<double> v = doubles_from(j, "weights");
    return WeightVector(node_count_for(static_cast<int>(v.size())), std::move(v));
  }
  throw FormatError("graph document needs \"weights\" or \"adjacency\"");
}

WeightVector read_graph(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  if (path.extension() == ".csv") {
    std::vector<std::vector<double>> rows;
    for (auto line : lines(text)) rows.push_back(parse_doubles(line));
    return vectorize(rows);
  }
  try {
    return graph_from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

json to_json(const WeightVector& w) {
  json j;
  j["d"] = w.d();
  j["weights"] = number_list(w.entries());
  return j;
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
  std::filesystem::path p = csv;
  p += ".json";
  return p;
}

void write_sample_set(const std::filesystem::path& csv, const SampleSet& s) {
  const EdgeOrder order(s.d());
  std::string text;
  for (int k = 0; k < order.size(); ++k) {
    const Edge& e = order.edge(k);
    text += (k ? "," : "") + ("e" + std::to_string(e.i + 1) + "_" + std::to_string(e.j + 1));
  }
  text += '\n';
  for (const auto& x : s.samples()) {
    for (std::size_t k = 0; k < x.size(); ++k) text += (k ? "," : "") + format_double(x[k]);
    text += '\n';
  }
  write_text(csv, text);
  json meta;
  meta["d"] = s.d();
  meta["n"] = s.size();
  meta["seed"] = s.seed() ? json(*s.seed()) : json(nullptr);
  meta["aligned"] = s.aligned();
  meta["edge_order"] = "lexicographic vertex pairs, 1-based";
  meta["csv_digest"] = digest(text);
  write_text(sidecar_path(csv), meta.dump(2) + "\n");
}

SampleSet read_sample_set(const std::filesystem::path& csv) {
  const std::string text = read_text(csv);
  int d = 0;
  std::optional<std::uint64_t> seed;
  bool aligned = false;
  if (std::filesystem::exists(sidecar_path(csv))) {
    try {
      const json meta = json::parse(read_text(sidecar_path(csv)));
      d = meta.value("d", 0);
      if (meta.contains("seed") && meta.at("seed").is_number_unsigned()) seed = meta.at("seed").get<std::uint64_t>();
      aligned = meta.value("aligned", false);
    } catch (const json::exception& e) {
      throw FormatError(sidecar_path(csv).string() + ": " + e.what());
    }
  }
  std::vector<WeightVector> samples;
  std::size_t row = 0;
  for (auto line : lines(text)) {
    ++row;
    if (row == 1 && !looks_numeric(line)) continue;  // header
    std::vector<double> v;
    try {
      v = parse_doubles(line);
    } catch (const FormatError& e) {
      throw FormatError(csv.string() + " row " + std::to_string(row) + ": " + e.what());
    }
    if (d == 0) d = node_count_for(static_cast<int>(v.size()));
    samples.emplace_back(d, std::move(v));
  }
  if (samples.empty()) throw FormatError(csv.string() + " holds no networks");
  return SampleSet(d, std::move(samples), seed, aligned);
}

DistributionSpec spec_from_json(const json& j) {
  DistributionSpec s;
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "uniform_ball_in_cone") {
      s.kind = DistributionKind::uniform_ball_in_cone;
    } else if (kind == "truncated_gaussian_cone") {
      s.kind = DistributionKind::truncated_gaussian_cone;
    } else if (kind == "cone_example") {
      s.kind = DistributionKind::cone_example;
    } else {
      throw FormatError("unknown distribution kind '" + kind + "'");
    }
    if (j.contains("center")) s.center = doubles_from(j.at("center"), "center");
    if (j.contains("axis")) s.axis = doubles_from(j.at("axis"), "axis");
    s.d = j.contains("d") ? j.at("d").get<int>()
                          : (s.center.empty() ? 3 : node_count_for(static_cast<int>(s.center.size())));
    s.radius = j.value("radius", 0.0);
    s.half_angle = j.value("half_angle", 0.0);
    s.sigma = j.value("sigma", 0.0);
    s.alpha = j.value("alpha", 0.0);
    s.seed = j.value("seed", std::uint64_t{0});
  } catch (const json::exception& e) {
    throw FormatError(std::string("distribution spec: ") + e.what());
  }
  return s;
}

json to_json(const DistributionSpec& spec) {
  json j;
  j["kind"] = to_string(spec.kind);
  j["d"] = spec.d;
  if (spec.kind == DistributionKind::cone_example) {
    j["alpha"] = spec.alpha;
  } else {
    j["center"] = number_list(spec.center);
    j["axis"] = number_list(spec.axis);
    j["half_angle"] = spec.half_angle;
    if (spec.kind == DistributionKind::uniform_ball_in_cone) {
      j["radius"] = spec.radius;
    } else {
      j["sigma"] = spec.sigma;
    }
  }
  j["seed"] = spec.seed;
  return j;
}

json to_json(const VertexPermutation& p) { return int_list(p.one_based()); }

json to_json(const DistanceResult& r) {
  json j;
  j["value"] = r.value;
  j["aligner"] = {{"vertex_image", to_json(r.aligner.source())}, {"edge_image", int_list(r.aligner.one_based())}};
  return j;
}

json to_json(const Polyhedron& p) {
  json j;
  j["dim"] = p.dim;
  if (p.axis) j["axis"] = number_list(p.axis->entries());
  j["halfspace_count"] = p.halfspaces.size();
  json hs = json::array();
  for (const auto& h : p.halfspaces) {
    hs.push_back({{"normal", number_list(h.normal)}, {"origin", origin_name(h.origin)}, {"source", h.source}});
  }
  j["halfspaces"] = hs;
  if (p.rays) {
    j["ray_count"] = p.rays->size();
    json rs = json::array();
    for (const auto& r : *p.rays) rs.push_back(number_list(r));
    j["rays"] = rs;
  }
  return j;
}

json to_json(const Cone& c) { return {{"axis", number_list(c.axis.entries())}, {"half_angle", c.half_angle}}; }

json to_json(const MeanResult& r) {
  json j;
  j["mean"] = to_json(r.mean);
  j["frechet_value"] = r.frechet_value;
  json cert;
  cert["kind"] = to_string(r.certificate.kind);
  if (r.certificate.cone) cert["cone"] = to_json(*r.certificate.cone);
  cert["note"] = r.certificate.note;
  j["certificate"] = cert;
  j["iterations"] = r.iterations;
  j["trace"] = number_list(r.trace);
  return j;
}

json to_json(const StrataResult& r) {
  json j = to_json(r.result);
  j["winner_row"] = r.winner;
  json rows = json::array();
  for (const auto& c : r.table) {
    rows.push_back({{"row", c.row},
                    {"dim", c.dim},
                    {"point", number_list(std::span<const double>(c.point))},
                    {"feasible", c.feasible},
                    {"value", c.value}});
  }
  j["strata"] = rows;
  return j;
}

json to_json(const ConeExampleReport& r) {
  json j;
  j["alpha"] = r.spec.alpha;
  j["Z"] = r.spec.z;
  j["c"] = number_list(std::span<const double>(r.spec.c));
  j["chi1"] = r.spec.chi1;
  j["chi2"] = r.spec.chi2;
  j["r0_closed_form"] = r.r0_closed_form;
  j["r0_numeric"] = r.r0_numeric;
  j["f_min"] = r.f_min;
  j["theta_grid"] = number_list(r.theta_grid);
  j["f_on_theta_grid"] = number_list(r.f_on_grid);
  j["theta_spread"] = r.theta_spread;
  return j;
}

json to_json(const AnnulusReport& r) {
  json j;
  j["stated_radius"] = r.stated_radius;
  j["computed_radius"] = r.computed_radius;
  j["closed_form_radius"] = r.closed_form_radius;
  json per = json::array();
  for (std::size_t i = 0; i < r.thetas.size(); ++i) per.push_back({{"theta", r.thetas[i]}, {"radius", r.radius_at_theta[i]}});
  j["radius_by_theta"] = per;
  j["euclidean_centroid"] = {r.centroid, r.centroid};
  j["curve_points"] = r.curve.size();
  return j;
}

json to_json(const ComparisonReport& r) {
  json j;
  j["d_E"] = r.d_e;
  j["d_P"] = r.d_p;
  j["aligner"] = {{"vertex_image", to_json(r.aligner.source())}, {"edge_image", int_list(r.aligner.one_based())}};
  j["strict"] = r.strict;
  return j;
}

json to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(row);
  }
  return rows;
}

json to_json(const TestReport& r) {
  json j;
  j["statistic"] = r.statistic;
  j["df"] = r.df;
  j["p_value"] = r.p_value;
  json means = json::array();
  for (const auto& m : r.group_means) means.push_back(number_list(m.entries()));
  j["group_means"] = means;
  j["grand_mean"] = number_list(r.grand_mean.entries());
  j["pooled_covariance"] = to_json(r.pooled_covariance);
  j["pooling"] = to_string(r.pooling);
  j["rank"] = r.rank;
  j["pseudo_inverse"] = r.pseudo_inverse;
  j["warnings"] = r.warnings;
  return j;
}

json to_json(const CovarianceEstimate& c) {
  json j;
  j["method"] = to_string(c.method);
  j["sigma"] = to_json(c.sigma);
  if (c.lambda) j["lambda"] = to_json(*c.lambda);
  if (c.c) j["c"] = to_json(*c.c);
  if (c.method == CovarianceMethod::sandwich) j["lambda_condition"] = c.lambda_condition;
  return j;
}

json to_json(const SllnTable& t) {
  json j;
  j["truth"] = number_list(t.truth.mean.entries());
  j["surrogate_truth"] = t.truth.surrogate;
  json rows = json::array();
  for (const auto& r : t.rows) rows.push_back({{"n", r.n}, {"median", r.median}, {"max", r.max}});
  j["rows"] = rows;
  return j;
}

json to_json(const CltReport& r) {
  json j;
  j["n"] = r.n;
  j["replications"] = r.replications;
  j["skewness"] = number_list(r.skewness);
  j["excess_kurtosis"] = number_list(r.excess_kurtosis);
  j["ks_distance"] = r.ks_distance;
  j["threshold"] = r.threshold;
  j["pass"] = r.pass;
  j["sigma"] = to_json(r.sigma_used);
  j["surrogate_truth"] = r.surrogate_truth;
  j["warnings"] = r.warnings;
  return j;
}

json to_json(const SizeStudy& s) {
  json j;
  j["k"] = s.k;
  j["n"] = s.n;
  j["replications"] = s.replications;
  j["level"] = s.level;
  j["rejections"] = s.rejections;
  j["rejection_rate"] = s.rejection_rate;
  return j;
}

json intolerable_report() {
  json cases = json::array();
  auto add = [&](const char* name, const WeightVector& x, const WeightVector& y, const char* claim) {
    const ComparisonReport c = compare_dP_dE(x, y);
    json j;
    j["case"] = name;
    j["x"] = number_list(x.entries());
    j["y"] = number_list(y.entries());
    j["claim"] = claim;
    j["computed"] = to_json(c);
    j["claim_holds"] = c.strict;
    cases.push_back(j);
  };
  add("near_singular_pair", WeightVector(3, {1.01, 1.0, 1.0}), WeightVector(3, {1.0, 1.0, 1.01}),
      "d_P < d_E: the pair lies in one orbit near (1,1,1)");
  add("published_construction", WeightVector(3, {1.4, 1.3, 1.2}), WeightVector(3, {1.3, 1.201, 1.2}),
      "d_P < d_E for both points in the fundamental domain {x >= y >= z} near (1,1,1)");
  return {{"report", "procrustean vs euclidean distance near (1,1,1)"}, {"cases", cases}};
}

json annulus_report(const AnnulusReport& r) {
  json j;
  j["report"] = "Fréchet mean radius for the uniform quarter annulus in R^2/Z4";
  j["claim"] = {{"radius", r.stated_radius}};
  j["computed"] = to_json(r);
  j["claim_holds"] = std::abs(r.computed_radius - r.stated_radius) < 1e-6;
  return j;
}

std::string trace_csv(const MeanResult& r) {
  std::string out = "iteration,frechet_value\n";
  for (std::size_t i = 0; i < r.trace.size(); ++i) out += std::to_string(i) + "," + format_double(r.trace[i]) + "\n";
  return out;
}

std::string slln_csv(const SllnTable& t) {
  std::string out = "n,median,max\n";
  for (const auto& r : t.rows) {
    out += std::to_string(r.n) + "," + format_double(r.median) + "," + format_double(r.max) + "\n";
  }
  return out;
}

std::string annulus_curve_csv(const AnnulusReport& r) {
  std::string out = "r,f\n";
  for (const auto& [x, f] : r.curve) out += format_double(x) + "," + format_double(f) + "\n";
  return out;
}

std::string mahalanobis_csv(const CltReport& r) {
  std::string out = "replication,mahalanobis\n";
  for (std::size_t i = 0; i < r.mahalanobis.size(); ++i) {
    out += std::to_string(i) + "," + format_double(r.mahalanobis[i]) + "\n";
  }
  return out;
}

}  // namespace netmean::io
