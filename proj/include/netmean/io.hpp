#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "netmean/frechet.hpp"
#include "netmean/polyhedra.hpp"
#include "netmean/sampling.hpp"
#include "netmean/stats.hpp"

namespace netmean::io {

using json = nlohmann::ordered_json;

// 64-bit FNV-1a, as 16 lowercase hex digits.
std::string digest(std::string_view bytes);
std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

// "1,2,3" -> weights; d inferred from the length when d == 0.
WeightVector parse_weights(std::string_view text, int d = 0);
std::vector<double> parse_doubles(std::string_view text);
std::vector<std::size_t> parse_sizes(std::string_view text);

// Graph documents: {"d": 3, "weights": [...]} or {"adjacency": [[...], ...]}.
// A .csv file holds the adjacency matrix, one row per line.
WeightVector graph_from_json(const json& j);
WeightVector read_graph(const std::filesystem::path& path);
json to_json(const WeightVector& w);

// One network per CSV row; metadata in <path>.json next to it.
void write_sample_set(const std::filesystem::path& csv, const SampleSet& s);
SampleSet read_sample_set(const std::filesystem::path& csv);
std::filesystem::path sidecar_path(const std::filesystem::path& csv);

DistributionSpec spec_from_json(const json& j);
json to_json(const DistributionSpec& spec);

json to_json(const VertexPermutation& p);
json to_json(const DistanceResult& r);
json to_json(const Polyhedron& p);
json to_json(const Cone& c);
json to_json(const MeanResult& r);
json to_json(const StrataResult& r);
json to_json(const ConeExampleReport& r);
json to_json(const AnnulusReport& r);
json to_json(const ComparisonReport& r);
json to_json(const TestReport& r);
json to_json(const CovarianceEstimate& c);
json to_json(const SllnTable& t);
json to_json(const CltReport& r);
json to_json(const SizeStudy& s);
json to_json(const Eigen::MatrixXd& m);

// Reports that put a published value next to the value computed here.
json intolerable_report();
json annulus_report(const AnnulusReport& r);

std::string trace_csv(const MeanResult& r);
std::string slln_csv(const SllnTable& t);
std::string annulus_curve_csv(const AnnulusReport& r);
std::string mahalanobis_csv(const CltReport& r);

// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

}  // namespace netmean::io
