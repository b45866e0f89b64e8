#pragma once

#include "gomea/harness.hpp"
#include "gomea/schemes.hpp"

#include <iosfwd>
#include <json.hpp>
#include <string>
#include <string_view>
#include <vector>

namespace gomea
{

std::string_view hill_climber_name(HillClimber hc);
HillClimber parse_hill_climber(std::string_view name);
std::string_view measure_name(SimilarityMeasure measure);
SimilarityMeasure parse_measure(std::string_view name);
std::string_view ordering_name(FosOrdering ordering);
FosOrdering parse_ordering(std::string_view name);

nlohmann::json to_json(const SchemeConfig &config);
nlohmann::json to_json(const RunRecord &record);
nlohmann::json to_json(const OrderSummary &summary);
/// `with_runs` adds the per-run records of every tested size.
nlohmann::json to_json(const BisectionResult &result, bool with_runs = true);
nlohmann::json to_json(const SweepRow &row);

SchemeConfig config_from_json(const nlohmann::json &j);
RunRecord run_record_from_json(const nlohmann::json &j);

void write_sweep_csv_header(std::ostream &out);
void write_sweep_csv_row(std::ostream &out, const SweepRow &row);

/// Pulls one metric ("evals" or "seconds") out of every record in a JSONL
/// stream. Lines holding a RunRecord contribute one value; bisection results
/// and sweep rows contribute their reported runs.
std::vector<double> read_metric(std::istream &in, std::string_view metric);

} // namespace gomea
