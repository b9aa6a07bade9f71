#include "sebayes/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "sebayes/error.hpp"

namespace sebayes::io {

namespace {

std::string where(std::string_view source, std::size_t line) {
  return std::string(source) + " row " + std::to_string(line);
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

// Checks that the header holds every required column, optionally some of the
// optional ones, and nothing else.
void check_header(const CsvTable& t, std::string_view source, Schema schema,
                  std::initializer_list<std::string_view> required,
                  std::initializer_list<std::string_view> optional = {}) {
  std::set<std::string, std::less<>> seen;
  for (const auto& h : t.header) {
    const bool known = std::find(required.begin(), required.end(), h) != required.end() ||
                       std::find(optional.begin(), optional.end(), h) != optional.end();
    if (!known) {
      throw Error(ErrorCode::SchemaMismatch, std::string(source) + ": unexpected column '" + h +
                                                 "' for " + std::string(to_string(schema)) + " data");
    }
    if (!seen.insert(h).second) {
      throw Error(ErrorCode::SchemaMismatch, std::string(source) + ": repeated column '" + h + "'");
    }
  }
  for (auto r : required) {
    if (!seen.count(r)) {
      throw Error(ErrorCode::SchemaMismatch, std::string(source) + ": missing column '" +
                                                 std::string(r) + "' for " +
                                                 std::string(to_string(schema)) + " data");
    }
  }
}

const std::string& cell(const CsvTable& t, std::size_t row, std::string_view column) {
  return t.rows[row][*t.column(column)];
}

double parse_real(const std::string& s, std::string_view what, std::string_view source, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::InvalidValue, where(source, line) + ": " + std::string(what) +
                                             " '" + s + "' is not a number");
  }
  return v;
}

long parse_integer(const std::string& s, std::string_view what, std::string_view source, std::size_t line) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::InvalidValue, where(source, line) + ": " + std::string(what) +
                                             " '" + s + "' is not an integer");
  }
  return v;
}

void require_nonempty(const std::string& s, std::string_view what, std::string_view source, std::size_t line) {
  if (s.empty()) throw Error(ErrorCode::InvalidValue, where(source, line) + ": empty " + std::string(what));
}

}  // namespace

std::optional<std::size_t> CsvTable::column(std::string_view name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) return std::nullopt;
  return static_cast<std::size_t>(it - header.begin());
}

CsvTable parse_csv(std::string_view text, std::string_view source) {
  CsvTable table;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool quoted_field = false;
  std::size_t line = 1;
  std::size_t record_line = 1;

  auto end_field = [&] {
    record.push_back(quoted_field ? field : trim(field));
    field.clear();
    quoted_field = false;
  };
  auto end_record = [&] {
    end_field();
    const bool blank = record.size() == 1 && record[0].empty();
    if (!blank) {
      if (table.header.empty()) {
        table.header = std::move(record);
      } else {
        if (record.size() != table.header.size()) {
          throw Error(ErrorCode::SchemaMismatch,
                      where(source, record_line) + ": expected " + std::to_string(table.header.size()) +
                          " fields, found " + std::to_string(record.size()));
        }
        table.rows.push_back(std::move(record));
        table.lines.push_back(record_line);
      }
    }
    record.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        quoted_field = true;
        break;
      case ',':
        end_field();
        break;
      case '\n':
        end_record();
        ++line;
        record_line = line;
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] != '\n') field += c;
        break;
      default:
        field += c;
    }
  }
  if (in_quotes) throw Error(ErrorCode::SchemaMismatch, std::string(source) + ": unterminated quoted field");
  if (!field.empty() || !record.empty()) end_record();
  if (table.header.empty()) throw Error(ErrorCode::SchemaMismatch, std::string(source) + ": missing header");
  return table;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

CsvTable read_csv(const std::filesystem::path& path) { return parse_csv(read_file(path), path.string()); }

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::IoError, "SHA-256 digest failed");
  }
  std::string hex;
  char byte[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(byte, sizeof byte, "%02x", digest[i]);
    hex += byte;
  }
  return hex;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string_view to_string(Schema s) {
  switch (s) {
    case Schema::Outcomes: return "outcomes";
    case Schema::Baseline: return "baseline";
    case Schema::Bench: return "bench";
    case Schema::Primary: return "primary";
    case Schema::Bugs: return "bugs";
  }
  return "?";
}

OutcomesData ingest_outcomes(const CsvTable& t, std::string_view source) {
  check_header(t, source, Schema::Outcomes, {"project_id", "group"}, {"raw_outcome", "category"});
  const bool has_raw = t.column("raw_outcome").has_value();
  const bool has_category = t.column("category").has_value();
  if (has_raw == has_category) {
    throw Error(ErrorCode::SchemaMismatch,
                std::string(source) + ": exactly one of raw_outcome or category is required");
  }
  OutcomesData out;
  std::set<std::string, std::less<>> ids;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const std::size_t line = t.lines[r];
    OutcomeRow row;
    row.project_id = cell(t, r, "project_id");
    row.group = cell(t, r, "group");
    require_nonempty(row.project_id, "project_id", source, line);
    require_nonempty(row.group, "group", source, line);
    if (!ids.insert(row.project_id).second) {
      throw Error(ErrorCode::DuplicateKey, where(source, line) + ": duplicate project '" + row.project_id + "'");
    }
    if (has_raw) {
      const long raw = parse_integer(cell(t, r, "raw_outcome"), "raw_outcome", source, line);
      if (raw < 1 || raw > 10) {
        throw Error(ErrorCode::InvalidValue, where(source, line) + ": raw_outcome must lie in 1..10");
      }
      row.raw_outcome = static_cast<int>(raw);
    } else {
      const long c = parse_integer(cell(t, r, "category"), "category", source, line);
      if (c < 0) throw Error(ErrorCode::InvalidValue, where(source, line) + ": negative category");
      row.category = static_cast<unsigned>(c);
    }
    if (std::find(out.groups.begin(), out.groups.end(), row.group) == out.groups.end()) {
      out.groups.push_back(row.group);
      if (out.groups.size() > 2) {
        throw Error(ErrorCode::InvalidValue, where(source, line) + ": more than two groups");
      }
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

BaselineTable ingest_baselines(const CsvTable& t, std::string_view source) {
  check_header(t, source, Schema::Baseline, {"category", "k", "probability"});
  std::map<std::string, std::map<long, double>, std::less<>> raw;
  std::map<std::string, std::size_t, std::less<>> first_line;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const std::size_t line = t.lines[r];
    const std::string& name = cell(t, r, "category");
    require_nonempty(name, "category", source, line);
    const long k = parse_integer(cell(t, r, "k"), "k", source, line);
    const double p = parse_real(cell(t, r, "probability"), "probability", source, line);
    if (k < 0) throw Error(ErrorCode::InvalidValue, where(source, line) + ": negative k");
    if (p < 0.0 || p > 1.0) throw Error(ErrorCode::InvalidValue, where(source, line) + ": probability outside [0,1]");
    if (!raw[name].emplace(k, p).second) {
      throw Error(ErrorCode::DuplicateKey, where(source, line) + ": duplicate (" + name + ", " + std::to_string(k) + ")");
    }
    first_line.emplace(name, line);
  }
  BaselineTable out;
  for (const auto& [name, by_k] : raw) {
    std::vector<double> probs;
    for (const auto& [k, p] : by_k) {
      if (k != static_cast<long>(probs.size())) {
        throw Error(ErrorCode::InvalidValue, where(source, first_line[name]) + ": category '" + name +
                                                 "' has non-contiguous k values");
      }
      probs.push_back(p);
    }
    try {
      out.emplace(name, outcomes::OutcomeDistribution(std::move(probs)));
    } catch (const Error& e) {
      throw Error(ErrorCode::InvalidValue, where(source, first_line[name]) + ": category '" + name + "': " + e.what());
    }
  }
  return out;
}

speedup::BenchmarkDataset ingest_bench(const CsvTable& t, std::string_view source, speedup::Metric metric) {
  check_header(t, source, Schema::Bench, {"language", "task", "input_size", "variant", "metric", "value"});
  speedup::BenchmarkDataset out(metric);
  std::set<std::tuple<std::string, std::string, std::string, double, std::string>> keys;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const std::size_t line = t.lines[r];
    speedup::Measurement m;
    m.language = cell(t, r, "language");
    m.task = cell(t, r, "task");
    m.variant = cell(t, r, "variant");
    require_nonempty(m.language, "language", source, line);
    require_nonempty(m.task, "task", source, line);
    const std::string& metric_name = cell(t, r, "metric");
    speedup::Metric row_metric;
    try {
      row_metric = speedup::parse_metric(metric_name);
    } catch (const Error&) {
      throw Error(ErrorCode::InvalidValue, where(source, line) + ": unknown metric '" + metric_name + "'");
    }
    m.input_size = parse_real(cell(t, r, "input_size"), "input_size", source, line);
    m.value = parse_real(cell(t, r, "value"), "value", source, line);
    if (!(m.value > 0.0)) throw Error(ErrorCode::InvalidValue, where(source, line) + ": value must be positive");
    if (!keys.emplace(metric_name, m.language, m.task, m.input_size, m.variant).second) {
      throw Error(ErrorCode::DuplicateKey, where(source, line) + ": duplicate (language, task, input_size, variant)");
    }
    if (row_metric == metric) out.add(std::move(m));
  }
  return out;
}

speedup::BenchmarkDataset ingest_primary(const CsvTable& t, std::string_view source, speedup::Metric metric) {
  check_header(t, source, Schema::Primary, {"language", "task", "metric", "value"});
  speedup::BenchmarkDataset out(metric);
  std::set<std::tuple<std::string, std::string, std::string>> keys;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const std::size_t line = t.lines[r];
    speedup::Measurement m;
    m.language = cell(t, r, "language");
    m.task = cell(t, r, "task");
    require_nonempty(m.language, "language", source, line);
    require_nonempty(m.task, "task", source, line);
    const std::string& metric_name = cell(t, r, "metric");
    speedup::Metric row_metric;
    try {
      row_metric = speedup::parse_metric(metric_name);
    } catch (const Error&) {
      throw Error(ErrorCode::InvalidValue, where(source, line) + ": unknown metric '" + metric_name + "'");
    }
    m.value = parse_real(cell(t, r, "value"), "value", source, line);
    if (!(m.value > 0.0)) throw Error(ErrorCode::InvalidValue, where(source, line) + ": value must be positive");
    if (!keys.emplace(metric_name, m.language, m.task).second) {
      throw Error(ErrorCode::DuplicateKey, where(source, line) + ": duplicate (language, task)");
    }
    if (row_metric == metric) out.add(std::move(m));
  }
  return out;
}

std::vector<BugRecord> ingest_bugs(const CsvTable& t, std::string_view source) {
  check_header(t, source, Schema::Bugs, {"class_id", "found_simple", "found_strong"},
               {"public_methods", "loc"});
  std::vector<BugRecord> out;
  std::set<std::string, std::less<>> ids;
  auto optional_positive = [&](std::size_t r, std::string_view column) -> std::optional<long> {
    if (!t.column(column)) return std::nullopt;
    const std::string& s = cell(t, r, column);
    if (s.empty()) return std::nullopt;
    const long v = parse_integer(s, column, source, t.lines[r]);
    if (v <= 0) {
      throw Error(ErrorCode::InvalidValue, where(source, t.lines[r]) + ": " + std::string(column) + " must be positive");
    }
    return v;
  };
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const std::size_t line = t.lines[r];
    BugRecord b;
    b.class_id = cell(t, r, "class_id");
    require_nonempty(b.class_id, "class_id", source, line);
    if (!ids.insert(b.class_id).second) {
      throw Error(ErrorCode::DuplicateKey, where(source, line) + ": duplicate class '" + b.class_id + "'");
    }
    b.found_simple = parse_integer(cell(t, r, "found_simple"), "found_simple", source, line);
    b.found_strong = parse_integer(cell(t, r, "found_strong"), "found_strong", source, line);
    if (b.found_simple < 0 || b.found_strong < 0) {
      throw Error(ErrorCode::InvalidValue, where(source, line) + ": bug counts must be nonnegative");
    }
    b.public_methods = optional_positive(r, "public_methods");
    b.loc = optional_positive(r, "loc");
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace sebayes::io
