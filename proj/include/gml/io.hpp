#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include <json.hpp>

#include "gml/bounds.hpp"
#include "gml/hypothesis.hpp"
#include "gml/learner.hpp"
#include "gml/synth.hpp"

namespace gml {

inline constexpr int kSchemaVersion = 1;

// Datasets: JSON Lines, one {"x":"0101...","y":0} object per line. Blank
// lines are skipped; an optional "schema" member must equal 1.
LabeledSample parse_jsonl(std::istream& in, const std::string& origin);
LabeledSample read_jsonl(const std::filesystem::path& path);
void write_jsonl(const LabeledSample& s, std::ostream& out);
void write_jsonl(const LabeledSample& s, const std::filesystem::path& path);

// {"schema":1,"bit_model":"uniform","target":"2:00,11","noise":"1/10","length":16}
// or "bit_model":"bernoulli" with "p":["1/3",...] (length defaults to |p|).
SyntheticDistribution parse_distribution(const nlohmann::json& j);
nlohmann::json distribution_to_json(const SyntheticDistribution& d);
SyntheticDistribution load_distribution(const std::filesystem::path& path);

// "harmonic", "geometric", or {"schema":1,"custom":[...],"tail":"zero"|"geometric"}.
WeightScheme parse_weights(const nlohmann::json& j);
nlohmann::json weights_to_json(const WeightScheme& w);
/// A built-in scheme name, otherwise a path to a weights JSON file.
WeightScheme weights_from_name_or_file(std::string_view spec);

nlohmann::json selection_to_json(const SelectionResult& r, std::string_view rule);
/// Header: n,best_empirical_risk,penalty,objective
std::string trace_to_csv(const SelectionResult& r);

nlohmann::json read_json_file(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// Shortest round-trip decimal for a double ("%.17g" trimmed).
std::string format_real(double v);
/// Fixed six decimals, for report tables.
std::string format_fixed(double v);

}  // namespace gml
