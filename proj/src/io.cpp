#include "gml/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gml/error.hpp"

namespace gml {

using nlohmann::json;

namespace {

void check_schema(const json& j, const std::string& where, ErrorCode code = ErrorCode::Config) {
  if (!j.contains("schema")) return;
  if (!j["schema"].is_number_integer() || j["schema"].get<int>() != kSchemaVersion) {
    fail(code, where + ": unsupported schema version " + j["schema"].dump());
  }
}

void reject_unknown(const json& j, std::initializer_list<std::string_view> known,
                    const std::string& where, ErrorCode code = ErrorCode::Config) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (auto k : known) ok = ok || key == k;
    if (!ok) fail(code, where + ": unknown field '" + key + "'");
  }
}

Rational rational_field(const json& v, const std::string& where) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_number()) {
    // Decimal literal as written, not the binary double closest to it.
    return parse_rational(v.dump());
  }
  fail(ErrorCode::Config, where + ": expected a rational (\"p/q\" or decimal)");
}

}  // namespace

LabeledSample parse_jsonl(std::istream& in, const std::string& origin) {
  std::vector<LabeledExample> examples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = origin + ":" + std::to_string(line_no);
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      fail(ErrorCode::Parse, where + ": " + e.what());
    }
    if (!j.is_object()) fail(ErrorCode::Parse, where + ": expected a JSON object");
    check_schema(j, where, ErrorCode::Parse);
    reject_unknown(j, {"schema", "x", "y"}, where, ErrorCode::Parse);
    if (!j.contains("x") || !j["x"].is_string()) fail(ErrorCode::Parse, where + ": missing string field 'x'");
    if (!j.contains("y") || !j["y"].is_number_integer()) fail(ErrorCode::Parse, where + ": missing integer field 'y'");
    const auto y = j["y"].get<std::int64_t>();
    if (y != 0 && y != 1) fail(ErrorCode::Parse, where + ": label must be 0 or 1");
    LabeledExample e;
    try {
      e.x = BitString::parse(j["x"].get<std::string>());
    } catch (const Error& err) {
      fail(ErrorCode::Parse, where + ": " + err.what());
    }
    e.y = y == 1 ? Label::One : Label::Zero;
    examples.push_back(std::move(e));
  }
  if (examples.empty()) fail(ErrorCode::Parse, origin + ": dataset contains no examples");
  return LabeledSample(std::move(examples));
}

LabeledSample read_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open dataset '" + path.string() + "'");
  return parse_jsonl(in, path.string());
}

void write_jsonl(const LabeledSample& s, std::ostream& out) {
  for (const auto& e : s.examples()) {
    out << "{\"x\":\"" << e.x.to_string() << "\",\"y\":" << to_int(e.y) << "}\n";
  }
}

void write_jsonl(const LabeledSample& s, const std::filesystem::path& path) {
  std::ostringstream buf;
  write_jsonl(s, buf);
  write_text_file(path, buf.str());
}

SyntheticDistribution parse_distribution(const json& j) {
  const std::string where = "distribution";
  if (!j.is_object()) fail(ErrorCode::Config, where + ": expected a JSON object");
  check_schema(j, where);
  reject_unknown(j, {"schema", "bit_model", "target", "noise", "length", "p"}, where);
  if (!j.contains("target") || !j["target"].is_string()) {
    fail(ErrorCode::Config, where + ": missing string field 'target'");
  }
  Hypothesis target = Hypothesis::empty(1);
  try {
    target = Hypothesis::parse(j["target"].get<std::string>());
  } catch (const Error& e) {
    fail(ErrorCode::Config, where + ": " + e.what());
  }
  const Rational noise = j.contains("noise") ? rational_field(j["noise"], where + ".noise") : Rational(0);
  const std::string model = j.value("bit_model", std::string("uniform"));
  if (model == "uniform") {
    if (j.contains("p")) fail(ErrorCode::Config, where + ": 'p' is only valid for bernoulli");
    if (!j.contains("length") || !j["length"].is_number_unsigned()) {
      fail(ErrorCode::Config, where + ": missing unsigned field 'length'");
    }
    return SyntheticDistribution::uniform(std::move(target), noise, j["length"].get<unsigned>());
  }
  if (model == "bernoulli") {
    if (!j.contains("p") || !j["p"].is_array()) fail(ErrorCode::Config, where + ": missing array 'p'");
    std::vector<Rational> p;
    for (const auto& v : j["p"]) p.push_back(rational_field(v, where + ".p"));
    if (j.contains("length") && j["length"].get<std::size_t>() != p.size()) {
      fail(ErrorCode::Config, where + ": 'length' must equal the number of bit probabilities");
    }
    return SyntheticDistribution::bernoulli(std::move(p), std::move(target), noise);
  }
  fail(ErrorCode::Config, where + ": unknown bit_model '" + model + "'");
}

json distribution_to_json(const SyntheticDistribution& d) {
  json j;
  j["schema"] = kSchemaVersion;
  j["bit_model"] = d.is_uniform() ? "uniform" : "bernoulli";
  j["target"] = d.target().to_string();
  j["noise"] = format_rational(d.noise());
  j["length"] = d.length();
  if (!d.is_uniform()) {
    json p = json::array();
    for (const auto& q : d.bit_probabilities()) p.push_back(format_rational(q));
    j["p"] = p;
  }
  return j;
}

SyntheticDistribution load_distribution(const std::filesystem::path& path) {
  return parse_distribution(read_json_file(path));
}

WeightScheme parse_weights(const json& j) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "harmonic") return WeightScheme::harmonic();
    if (name == "geometric") return WeightScheme::geometric();
    fail(ErrorCode::Config, "unknown weight scheme '" + name + "'");
  }
  if (!j.is_object()) fail(ErrorCode::Config, "weights: expected a name or an object");
  check_schema(j, "weights");
  reject_unknown(j, {"schema", "custom", "tail"}, "weights");
  if (!j.contains("custom") || !j["custom"].is_array()) {
    fail(ErrorCode::Config, "weights: missing array 'custom'");
  }
  std::vector<double> table;
  for (const auto& v : j["custom"]) {
    if (!v.is_number()) fail(ErrorCode::Config, "weights: entries must be numbers");
    table.push_back(v.get<double>());
  }
  if (!j.contains("tail") || !j["tail"].is_string()) {
    fail(ErrorCode::Config, "weights: custom tables must declare 'tail' (zero|geometric)");
  }
  const auto tail = j["tail"].get<std::string>();
  if (tail != "zero" && tail != "geometric") {
    fail(ErrorCode::Config, "weights: tail must be 'zero' or 'geometric'");
  }
  return WeightScheme::custom(std::move(table),
                              tail == "zero" ? WeightScheme::Tail::Zero : WeightScheme::Tail::Geometric);
}

json weights_to_json(const WeightScheme& w) {
  if (w.kind() != WeightScheme::Kind::Custom) return w.name();
  json j;
  j["schema"] = kSchemaVersion;
  j["custom"] = std::vector<double>(w.table().begin(), w.table().end());
  j["tail"] = w.tail() == WeightScheme::Tail::Zero ? "zero" : "geometric";
  return j;
}

WeightScheme weights_from_name_or_file(std::string_view spec) {
  if (spec == "harmonic") return WeightScheme::harmonic();
  if (spec == "geometric") return WeightScheme::geometric();
  return parse_weights(read_json_file(std::filesystem::path(spec)));
}

json selection_to_json(const SelectionResult& r, std::string_view rule) {
  json j;
  j["schema"] = kSchemaVersion;
  j["rule"] = rule;
  j["chosen"] = r.chosen.to_string();
  j["chosen_n"] = r.chosen_n;
  j["empirical_risk"] = format_rational(r.empirical_risk);
  j["empirical_risk_value"] = to_double(r.empirical_risk);
  j["penalty"] = r.penalty;
  j["objective"] = r.objective;
  json trace = json::array();
  for (const auto& t : r.trace) {
    trace.push_back({{"n", t.n},
                     {"best_empirical_risk", format_rational(t.best_empirical_risk)},
                     {"penalty", t.penalty},
                     {"objective", t.objective}});
  }
  j["trace"] = trace;
  return j;
}

std::string trace_to_csv(const SelectionResult& r) {
  std::string out = "n,best_empirical_risk,penalty,objective\n";
  for (const auto& t : r.trace) {
    out += std::to_string(t.n) + "," + format_real(to_double(t.best_empirical_risk)) + "," +
           format_real(t.penalty) + "," + format_real(t.objective) + "\n";
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) fail(ErrorCode::Io, "error reading '" + path.string() + "'");
  return buf.str();
}

json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::Config, path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) fail(ErrorCode::Io, "error writing '" + path.string() + "'");
}

std::string format_real(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) return std::to_string(v);
  return std::string(buf, ptr);
}

std::string format_fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace gml
