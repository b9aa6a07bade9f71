#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sebayes/outcomes.hpp"
#include "sebayes/speedup.hpp"

namespace sebayes::io {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  // 1-based line of each row in the source; the header is line 1.
  std::vector<std::size_t> lines;

  // Index of `column` in the header, if present.
  std::optional<std::size_t> column(std::string_view name) const;
};

// RFC 4180 style: comma separated, optional double quotes, "" escapes a quote.
// Blank lines are skipped.
CsvTable parse_csv(std::string_view text, std::string_view source);
std::string read_file(const std::filesystem::path& path);
CsvTable read_csv(const std::filesystem::path& path);

// Lowercase hex SHA-256 of the file contents.
std::string sha256_hex(std::string_view bytes);

std::string csv_escape(std::string_view field);
// Six significant digits, as used in every emitted CSV.
std::string format_number(double v);

enum class Schema { Outcomes, Baseline, Bench, Primary, Bugs };

std::string_view to_string(Schema s);

struct OutcomeRow {
  std::string project_id;
  std::string group;
  std::optional<int> raw_outcome;   // 1..10, rescaled downstream
  std::optional<unsigned> category;  // already binned
};

struct OutcomesData {
  std::vector<OutcomeRow> rows;
  // Group labels in order of first appearance.
  std::vector<std::string> groups;
};

using BaselineTable = std::map<std::string, outcomes::OutcomeDistribution, std::less<>>;

struct BugRecord {
  std::string class_id;
  long found_simple = 0;
  long found_strong = 0;
  std::optional<long> public_methods;
  std::optional<long> loc;
};

// Every ingest function validates the header against its schema and reports
// the offending source line for bad values and duplicate keys.
OutcomesData ingest_outcomes(const CsvTable& table, std::string_view source);
BaselineTable ingest_baselines(const CsvTable& table, std::string_view source);
// Rows whose metric differs from `metric` are validated and then dropped.
speedup::BenchmarkDataset ingest_bench(const CsvTable& table, std::string_view source,
                                       speedup::Metric metric);
speedup::BenchmarkDataset ingest_primary(const CsvTable& table, std::string_view source,
                                         speedup::Metric metric);
std::vector<BugRecord> ingest_bugs(const CsvTable& table, std::string_view source);

}  // namespace sebayes::io
