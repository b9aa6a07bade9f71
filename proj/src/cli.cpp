#include "sebayes/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "sebayes/density.hpp"
#include "sebayes/error.hpp"
#include "sebayes/io.hpp"
#include "sebayes/pmf.hpp"
#include "sebayes/svg.hpp"

namespace sebayes::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

ordered_json input_entry(const fs::path& path, const std::string& bytes) {
  return {{"path", path.generic_string()}, {"sha256", io::sha256_hex(bytes)}};
}

Report new_report(std::string_view command) {
  Report r;
  r["command"] = command;
  r["inputs"] = ordered_json::object();
  r["parameters"] = ordered_json::object();
  r["results"] = ordered_json::object();
  r["warnings"] = ordered_json::array();
  return r;
}

void finish(const Report& report, const fs::path& out) {
  write_text(out / "report.json", report.dump(2) + "\n");
}

ordered_json interval_json(const CredibleInterval& ci) {
  return {{"low", ci.low}, {"high", ci.high}, {"mass", ci.mass}};
}

ordered_json axis_json(const defects::Axis& a) {
  return {{"lo", a.lo}, {"hi", a.hi}, {"steps", a.steps},
          {"spacing", a.spacing == defects::AxisSpacing::Log ? "log" : "linear"}};
}

std::string file_safe(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) out += c;
    else if (c == '#') out += "sharp";
    else if (c == '+') out += "p";
    else out += '_';
  }
  return out;
}

// Resolves one baseline name: a row of the baseline file, or a concatenation
// of single-letter categories averaged with equal weights.
outcomes::OutcomeDistribution resolve_baseline(const std::string& name, const io::BaselineTable& table) {
  if (const auto it = table.find(name); it != table.end()) return it->second;
  std::vector<std::string> letters;
  for (char c : name) letters.emplace_back(1, c);
  for (const auto& l : letters) {
    if (!table.count(l)) {
      throw Error(ErrorCode::InvalidArgument,
                  "baseline '" + name + "' is neither in the baseline file nor composed of known categories");
    }
  }
  return outcomes::baseline_distribution(letters, table);
}

struct JointSummary {
  Pmf alpha;
  Pmf beta;
  std::pair<double, double> map;
  CredibleInterval alpha_ci;
  CredibleInterval beta_ci;
};

JointSummary summarize_joint(const JointPmf2D& joint, double ci) {
  JointSummary s{marginal_x(joint), marginal_y(joint), map_point(joint), {}, {}};
  s.alpha_ci = credible_interval(s.alpha, ci);
  s.beta_ci = credible_interval(s.beta, ci);
  return s;
}

ordered_json marginal_json(const Pmf& m, const CredibleInterval& ci) {
  return {{"mean", mean(m)}, {"median", median(m)}, {"ci", interval_json(ci)}};
}

std::vector<double> strong_or_simple(const std::vector<io::BugRecord>& bugs, CountColumn column) {
  std::vector<double> out;
  for (const auto& b : bugs) {
    out.push_back(static_cast<double>(column == CountColumn::Strong ? b.found_strong : b.found_simple));
  }
  return out;
}

}  // namespace

double default_simplex_step(std::size_t categories) { return categories <= 3 ? 0.05 : 0.1; }

Report compare_outcomes(const CompareOutcomesConfig& c) {
  Report report = new_report("compare-outcomes");
  const std::string data_bytes = io::read_file(c.data);
  const std::string base_bytes = io::read_file(c.baselines);
  report["inputs"]["data"] = input_entry(c.data, data_bytes);
  report["inputs"]["baselines"] = input_entry(c.baselines, base_bytes);

  const auto data = io::ingest_outcomes(io::parse_csv(data_bytes, c.data.string()), c.data.string());
  const auto table = io::ingest_baselines(io::parse_csv(base_bytes, c.baselines.string()), c.baselines.string());
  if (table.empty()) throw Error(ErrorCode::InvalidArgument, "baseline file has no distributions");
  if (data.groups.size() != 2) {
    throw Error(ErrorCode::InvalidArgument, "outcome data must contain exactly two groups");
  }
  const std::string treatment = c.treatment.value_or(data.groups[0]);
  if (treatment != data.groups[0] && treatment != data.groups[1]) {
    throw Error(ErrorCode::InvalidArgument, "treatment group '" + treatment + "' not present in the data");
  }
  const std::string control = treatment == data.groups[0] ? data.groups[1] : data.groups[0];

  const bool raw = !data.rows.empty() && data.rows.front().raw_outcome.has_value();
  const std::size_t k = raw ? static_cast<std::size_t>(c.rescale_r) + 1 : table.begin()->second.categories();
  outcomes::OutcomeCounts counts{outcomes::Counts(k, 0), outcomes::Counts(k, 0)};
  for (const auto& row : data.rows) {
    const unsigned cat = raw ? outcomes::rescale_outcome(*row.raw_outcome, c.rescale_b, c.rescale_r) : *row.category;
    if (cat >= k) {
      throw Error(ErrorCode::InvalidValue, "project '" + row.project_id + "' has category " +
                                               std::to_string(cat) + " outside 0.." + std::to_string(k - 1));
    }
    (row.group == treatment ? counts.treatment : counts.control)[cat]++;
  }

  std::vector<std::string> names = c.baseline_set;
  if (names.empty()) {
    for (const auto& [name, dist] : table) names.push_back(name);
  }
  const double step = c.simplex_step.value_or(default_simplex_step(k));

  auto& params = report["parameters"];
  params["treatment"] = treatment;
  params["control"] = control;
  params["categories"] = k;
  params["rescale"] = raw ? ordered_json{{"lower_bound", c.rescale_b}, {"range", c.rescale_r}} : ordered_json();
  params["simplex_step"] = step;
  params["baselines"] = names;
  params["schemes"] = ordered_json::array();
  for (auto s : c.schemes) params["schemes"].push_back(std::string(to_string(s)));

  auto& results = report["results"];
  results["counts"] = {{treatment, counts.treatment}, {control, counts.control}};
  results["factors"] = ordered_json::array();

  std::ostringstream csv;
  csv << "scheme";
  for (const auto& n : names) csv << ',' << io::csv_escape(n);
  csv << '\n';
  std::map<std::string, outcomes::OutcomeDistribution> resolved;
  for (const auto& n : names) {
    const auto dist = resolve_baseline(n, table);
    if (dist.categories() != k) {
      throw Error(ErrorCode::DimensionMismatch, "baseline '" + n + "' has " + std::to_string(dist.categories()) +
                                                    " categories, data has " + std::to_string(k));
    }
    resolved.emplace(n, dist);
    results["baseline_distributions"][n] = std::vector<double>(dist.probs().begin(), dist.probs().end());
  }
  for (auto scheme : c.schemes) {
    csv << to_string(scheme);
    for (const auto& n : names) {
      const double factor = outcomes::bayes_factor(counts, resolved.at(n), scheme, step);
      const std::string label =
          factor > 0.0 ? std::string(to_string(outcomes::jeffreys_label(factor))) : "negative";
      results["factors"].push_back(
          {{"baseline", n}, {"scheme", to_string(scheme)}, {"factor", factor}, {"evidence", label}});
      csv << ',' << io::format_number(factor);
    }
    csv << '\n';
  }
  write_text(c.out / "bayes_factors.csv", csv.str());
  finish(report, c.out);
  return report;
}

Report compare_performance(const ComparePerformanceConfig& c) {
  Report report = new_report("compare-performance");
  const std::string primary_bytes = io::read_file(c.primary);
  const std::string calib_bytes = io::read_file(c.calib);
  report["inputs"]["primary"] = input_entry(c.primary, primary_bytes);
  report["inputs"]["calib"] = input_entry(c.calib, calib_bytes);
  const auto primary =
      io::ingest_primary(io::parse_csv(primary_bytes, c.primary.string()), c.primary.string(), c.metric);
  const auto calib = io::ingest_bench(io::parse_csv(calib_bytes, c.calib.string()), c.calib.string(), c.metric);
  if (!(c.ci > 0.0 && c.ci < 1.0)) throw Error(ErrorCode::InvalidMass, "--ci must lie in (0,1)");

  auto& params = report["parameters"];
  params["metric"] = to_string(c.metric);
  params["bandwidth"] = c.bandwidth ? ordered_json(*c.bandwidth) : ordered_json("auto");
  params["ci"] = c.ci;
  params["grid_points"] = c.grid_points;

  std::set<std::string> langs;
  for (const auto& l : primary.languages()) langs.insert(l);
  for (const auto& l : calib.languages()) langs.insert(l);
  const std::vector<std::string> languages(langs.begin(), langs.end());

  speedup::PosteriorOptions options;
  options.prior_bandwidth = c.bandwidth;
  options.delta_bandwidth = c.bandwidth;
  options.grid_points = c.grid_points;

  std::vector<speedup::ComparisonSummary> summaries;
  auto& pairs = report["results"]["pairs"];
  pairs = ordered_json::array();
  std::ostringstream csv;
  csv << "pair,ci_low,ci_high,median,mean,class\n";
  for (std::size_t i = 0; i < languages.size(); ++i) {
    for (std::size_t j = i + 1; j < languages.size(); ++j) {
      const auto& l1 = languages[i];
      const auto& l2 = languages[j];
      const auto p = speedup::primary_speedups(primary, l1, l2);
      const auto s = speedup::calib_speedups(calib, l1, l2);
      const auto d = speedup::calib_deltas(calib, l1, l2);
      if (p.empty() || s.empty()) {
        report["warnings"].push_back(l1 + " vs " + l2 + ": skipped, " +
                                     (p.empty() ? "no common primary tasks" : "no common calibration tasks"));
        continue;
      }
      const Pmf posterior = speedup::speedup_posterior(p, s, d, options);
      auto summary = speedup::summarize(l1, l2, posterior, c.ci);
      pairs.push_back({{"first", l1},
                       {"second", l2},
                       {"primary_count", p.size()},
                       {"calib_count", s.size()},
                       {"delta_count", d.size()},
                       {"ci", interval_json(summary.ci)},
                       {"median", summary.median},
                       {"mean", summary.mean},
                       {"class", to_string(summary.significance)}});
      csv << io::csv_escape(l1 + " vs " + l2) << ',' << io::format_number(summary.ci.low) << ','
          << io::format_number(summary.ci.high) << ',' << io::format_number(summary.median) << ','
          << io::format_number(summary.mean) << ',' << to_string(summary.significance) << '\n';
      if (c.plots) {
        svg::ChartOptions chart;
        chart.title = "Posterior speedup " + l1 + " vs " + l2 + " (" + std::string(to_string(c.metric)) + ")";
        chart.x_label = "speedup ratio";
        chart.y_label = "probability";
        chart.markers = {{summary.ci.low, "CI low"}, {summary.median, "median"}, {summary.ci.high, "CI high"}};
        write_text(c.out / "plots" / (file_safe(l1) + "-" + file_safe(l2) + ".svg"),
                   svg::line_chart({svg::pmf_series(posterior, "posterior")}, chart));
      }
      summaries.push_back(std::move(summary));
    }
  }
  const auto graph = speedup::relationship_graph(summaries);
  auto& g = report["results"]["graph"];
  g["nodes"] = ordered_json::array();
  for (const auto& n : graph.nodes) g["nodes"].push_back({{"language", n.language}, {"x", n.x}});
  g["edges"] = ordered_json::array();
  for (const auto& e : graph.edges) {
    g["edges"].push_back({{"from", e.from}, {"to", e.to},
                          {"style", e.style == speedup::EdgeStyle::Dotted ? "dotted" : "solid"}});
  }
  write_text(c.out / "summary.csv", csv.str());
  write_text(c.out / "graph.dot", speedup::to_dot(graph));
  finish(report, c.out);
  return report;
}

Report fit_defects(const FitDefectsConfig& c) {
  Report report = new_report("fit-defects");
  const std::string bytes = io::read_file(c.data);
  report["inputs"]["data"] = input_entry(c.data, bytes);
  const auto bugs = io::ingest_bugs(io::parse_csv(bytes, c.data.string()), c.data.string());
  const auto counts = strong_or_simple(bugs, c.column);

  auto& params = report["parameters"];
  params["prior"] = to_string(c.prior);
  params["counts"] = c.column == CountColumn::Strong ? "found_strong" : "found_simple";
  params["alpha_axis"] = axis_json(c.grid.alpha);
  params["beta_axis"] = axis_json(c.grid.beta);
  params["ci"] = c.ci;
  params["x_max"] = c.x_max ? ordered_json(*c.x_max) : ordered_json();

  const auto joint = defects::fit_weibull_posterior(counts, c.prior, c.grid);
  const auto s = summarize_joint(joint, c.ci);
  auto& results = report["results"];
  results["map"] = {{"alpha", s.map.first}, {"beta", s.map.second}};
  results["alpha"] = marginal_json(s.alpha, s.alpha_ci);
  results["beta"] = marginal_json(s.beta, s.beta_ci);

  const std::vector<std::pair<std::string, defects::WeibullParams>> picks = {
      {"low", {s.alpha_ci.low, s.beta_ci.low}},
      {"map", {s.map.first, s.map.second}},
      {"high", {s.alpha_ci.high, s.beta_ci.high}}};
  if (c.x_max) {
    results["pareto"] = ordered_json::array();
    for (const auto& [name, p] : picks) {
      results["pareto"].push_back({{"pick", name}, {"alpha", p.alpha}, {"beta", p.beta},
                                   {"fraction", defects::pareto_fraction(p, *c.x_max)}});
    }
  } else {
    report["warnings"].push_back("pareto fractions not computed: --x-max not given");
  }

  std::ostringstream csv;
  csv << "parameter,value,mass\n";
  for (std::size_t i = 0; i < s.alpha.size(); ++i) {
    csv << "alpha," << io::format_number(s.alpha.support()[i]) << ',' << io::format_number(s.alpha.mass()[i]) << '\n';
  }
  for (std::size_t i = 0; i < s.beta.size(); ++i) {
    csv << "beta," << io::format_number(s.beta.support()[i]) << ',' << io::format_number(s.beta.mass()[i]) << '\n';
  }
  write_text(c.out / "marginals.csv", csv.str());

  svg::ChartOptions alpha_chart{"Marginal posterior of alpha (" + std::string(to_string(c.prior)) + " prior)",
                                "alpha", "probability", 640, 400,
                                {{s.alpha_ci.low, "CI low"}, {s.map.first, "MAP"}, {s.alpha_ci.high, "CI high"}}};
  write_text(c.out / "marginal_alpha.svg", svg::line_chart({svg::pmf_series(s.alpha, "m[alpha]")}, alpha_chart));
  svg::ChartOptions beta_chart{"Marginal posterior of beta (" + std::string(to_string(c.prior)) + " prior)",
                               "beta", "probability", 640, 400,
                               {{s.beta_ci.low, "CI low"}, {s.map.second, "MAP"}, {s.beta_ci.high, "CI high"}}};
  write_text(c.out / "marginal_beta.svg", svg::line_chart({svg::pmf_series(s.beta, "m[beta]", "#d62728")}, beta_chart));

  double top = 0.0;
  for (double v : counts) top = std::max(top, v);
  const auto xs = linspace(0.0, std::max(10.0, 2.0 * top), 200);
  std::vector<svg::Series> fan;
  const char* colors[] = {"#2ca02c", "#1f77b4", "#ff7f0e"};
  for (std::size_t k = 0; k < picks.size(); ++k) {
    svg::Series series;
    char label[96];
    std::snprintf(label, sizeof label, "alpha=%.3g beta=%.3g", picks[k].second.alpha, picks[k].second.beta);
    series.label = label;
    series.color = colors[k];
    series.x = xs;
    for (double x : xs) series.y.push_back(defects::weibull_cdf(x, picks[k].second));
    fan.push_back(std::move(series));
  }
  write_text(c.out / "cdf.svg",
             svg::line_chart(fan, {"Weibull cdf for credible parameter picks", "bugs", "W(x)", 640, 400, {}}));
  finish(report, c.out);
  return report;
}

Report estimate_total_bugs(const EstimateTotalBugsConfig& c) {
  Report report = new_report("estimate-total-bugs");
  const std::string bytes = io::read_file(c.data);
  report["inputs"]["data"] = input_entry(c.data, bytes);
  const auto bugs = io::ingest_bugs(io::parse_csv(bytes, c.data.string()), c.data.string());
  defects::validate(c.effectiveness);
  if (c.n_max && *c.n_max < 0) throw Error(ErrorCode::InvalidArgument, "--nmax must be nonnegative");

  auto& params = report["parameters"];
  params["prior"] = to_string(c.prior);
  params["alpha_axis"] = axis_json(c.grid.alpha);
  params["beta_axis"] = axis_json(c.grid.beta);
  params["e_axis"] = axis_json(c.effectiveness.e);
  params["E_axis"] = axis_json(c.effectiveness.E);
  params["n_max"] = c.n_max ? ordered_json(*c.n_max) : ordered_json("max(100, 10d)");
  params["ci"] = c.ci;

  const auto joint = defects::fit_weibull_posterior(strong_or_simple(bugs, CountColumn::Strong), c.prior, c.grid);
  const auto [alpha_hat, beta_hat] = map_point(joint);
  const defects::WeibullParams p{alpha_hat, beta_hat};
  auto& results = report["results"];
  results["weibull"] = {{"alpha", alpha_hat}, {"beta", beta_hat}};
  results["classes"] = ordered_json::array();

  std::ostringstream csv;
  csv << "class_id,median,ci_low,ci_high,per_method\n";
  for (const auto& b : bugs) {
    const long n_max = c.n_max.value_or(defects::default_n_max(b.found_simple));
    if (n_max < b.found_simple) {
      throw Error(ErrorCode::InvalidArgument, "class '" + b.class_id + "': --nmax below the bugs found");
    }
    const Pmf total = defects::class_total_bugs(p, b.found_simple, c.effectiveness, n_max);
    const auto s = defects::summarize_class(b.class_id, total, c.ci, b.public_methods);
    results["classes"].push_back({{"class_id", s.class_id},
                                  {"found", b.found_simple},
                                  {"n_max", n_max},
                                  {"mean", mean(total)},
                                  {"median", s.median},
                                  {"ci", interval_json(s.ci)},
                                  {"per_method", s.per_method ? ordered_json(*s.per_method) : ordered_json()}});
    csv << io::csv_escape(s.class_id) << ',' << io::format_number(s.median) << ',' << io::format_number(s.ci.low)
        << ',' << io::format_number(s.ci.high) << ',' << (s.per_method ? io::format_number(*s.per_method) : "")
        << '\n';
  }
  write_text(c.out / "total_bugs.csv", csv.str());
  finish(report, c.out);
  return report;
}

Report derived_plots(const DerivedPlotsConfig& c) {
  Report report = new_report("derived-plots");
  const std::string bytes = io::read_file(c.data);
  report["inputs"]["data"] = input_entry(c.data, bytes);
  const auto bugs = io::ingest_bugs(io::parse_csv(bytes, c.data.string()), c.data.string());
  if (!(c.ci > 0.0 && c.ci <= 1.0)) throw Error(ErrorCode::InvalidMass, "--ci must lie in (0,1]");

  auto& params = report["parameters"];
  params["prior"] = to_string(c.prior);
  params["alpha_axis"] = axis_json(c.grid.alpha);
  params["beta_axis"] = axis_json(c.grid.beta);
  params["at_most"] = c.at_most;
  params["ci"] = c.ci;
  params["bins"] = c.bins;

  auto joint = defects::fit_weibull_posterior(strong_or_simple(bugs, CountColumn::Strong), c.prior, c.grid);
  if (c.ci < 1.0) {
    const auto s = summarize_joint(joint, c.ci);
    std::vector<double> mass(joint.mass().begin(), joint.mass().end());
    const std::size_t ny = joint.y_grid().size();
    for (std::size_t i = 0; i < joint.x_grid().size(); ++i) {
      for (std::size_t j = 0; j < ny; ++j) {
        const double a = joint.x_grid()[i], b = joint.y_grid()[j];
        if (a < s.alpha_ci.low || a > s.alpha_ci.high || b < s.beta_ci.low || b > s.beta_ci.high) {
          mass[i * ny + j] = 0.0;
        }
      }
    }
    joint = normalize(JointPmf2D({joint.x_grid().begin(), joint.x_grid().end()},
                                 {joint.y_grid().begin(), joint.y_grid().end()}, std::move(mass)));
  }
  const Pmf derived = defects::derived_prob_at_most(c.at_most, joint, c.bins);
  report["results"]["mean"] = mean(derived);
  report["results"]["median"] = median(derived);

  const std::string stem = "derived_at_most_" + std::to_string(c.at_most);
  std::ostringstream csv;
  csv << "probability,mass\n";
  for (std::size_t i = 0; i < derived.size(); ++i) {
    csv << io::format_number(derived.support()[i]) << ',' << io::format_number(derived.mass()[i]) << '\n';
  }
  write_text(c.out / (stem + ".csv"), csv.str());
  svg::ChartOptions chart{"Probability that a class has at most " + std::to_string(c.at_most) + " bugs",
                          "probability", "posterior mass", 640, 400, {}};
  write_text(c.out / (stem + ".svg"), svg::line_chart({svg::pmf_series(derived, "")}, chart));
  finish(report, c.out);
  return report;
}

namespace {

std::pair<double, double> parse_range(const std::string& text, std::string_view flag) {
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument("no comma");
    std::size_t used = 0;
    const double a = std::stod(text.substr(0, comma), &used);
    const double b = std::stod(text.substr(comma + 1));
    return {a, b};
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument, std::string(flag) + " expects 'lo,hi', got '" + text + "'");
  }
}

std::pair<std::size_t, std::size_t> parse_grid(const std::string& text) {
  const auto x = text.find_first_of("xX");
  try {
    if (x == std::string::npos) throw std::invalid_argument("no x");
    const long n = std::stol(text.substr(0, x));
    const long m = std::stol(text.substr(x + 1));
    if (n < 1 || m < 1) throw std::invalid_argument("nonpositive");
    return {static_cast<std::size_t>(n), static_cast<std::size_t>(m)};
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument, "--grid expects NxM with positive N and M, got '" + text + "'");
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::SchemaMismatch:
    case ErrorCode::DuplicateKey:
    case ErrorCode::InvalidValue:
      return 3;
    case ErrorCode::IoError:
      return 4;
    default:
      return 1;
  }
}

// Weibull grid flags shared by the defect subcommands.
struct WeibullFlags {
  std::string alpha_range = "0.1,40";
  std::string beta_range = "0.1,3";
  std::string grid = "400x300";
  std::string alpha_spacing = "log";
  std::string prior = "uniform";

  void attach(CLI::App* app) {
    app->add_option("--prior", prior, "Prior over (alpha, beta): uniform|jeffreys")
        ->check(CLI::IsMember({"uniform", "jeffreys"}))
        ->capture_default_str();
    app->add_option("--alpha-range", alpha_range, "Weibull scale grid bounds 'lo,hi'")->capture_default_str();
    app->add_option("--beta-range", beta_range, "Weibull shape grid bounds 'lo,hi'")->capture_default_str();
    app->add_option("--grid", grid, "Grid size NxM (alpha steps x beta steps)")->capture_default_str();
    app->add_option("--alpha-spacing", alpha_spacing, "Alpha axis spacing: log|linear")
        ->check(CLI::IsMember({"log", "linear"}))
        ->capture_default_str();
  }

  defects::WeibullGrid resolve() const {
    defects::WeibullGrid g;
    const auto [alo, ahi] = parse_range(alpha_range, "--alpha-range");
    const auto [blo, bhi] = parse_range(beta_range, "--beta-range");
    const auto [n, m] = parse_grid(grid);
    g.alpha = {alo, ahi, n, alpha_spacing == "log" ? defects::AxisSpacing::Log : defects::AxisSpacing::Linear};
    g.beta = {blo, bhi, m, defects::AxisSpacing::Linear};
    return g;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian analysis of software engineering data: Bayes factors over outcome categories, "
               "posterior speedups between languages, and Weibull models of defect counts."};
  app.set_config("--config", "", "Read options from a TOML/INI file; command-line flags take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);

  // compare-outcomes
  CompareOutcomesConfig oc;
  std::string oc_data, oc_base, oc_set, oc_scheme = "all", oc_treatment, oc_out = "out";
  double oc_step = 0.0;
  auto* co = app.add_subcommand("compare-outcomes", "Bayes factors: treatment group better than baseline vs no difference");
  co->add_option("--data", oc_data, "Outcomes CSV (project_id, group, raw_outcome|category)")->required();
  co->add_option("--baselines", oc_base, "Baseline CSV (category, k, probability)")->required();
  co->add_option("--baseline-set", oc_set, "Comma-separated baselines, e.g. A,AIL,T (default: all in file)");
  co->add_option("--scheme", oc_scheme, "Weight scheme: uniform|triangle|power|exp|all, or a comma list")
      ->capture_default_str();
  co->add_option("--simplex-step", oc_step, "Simplex discretization step (default 0.05 for K<=3, else 0.1)");
  co->add_option("--rescale-b", oc.rescale_b, "Lower bound b for rescaling raw 1..10 outcomes")->capture_default_str();
  co->add_option("--rescale-r", oc.rescale_r, "Rescaled range r (categories 0..r)")->capture_default_str();
  co->add_option("--treatment", oc_treatment, "Group hypothesized better (default: first group in the data)");
  co->add_option("--out", oc_out, "Output directory")->capture_default_str();

  // compare-performance
  ComparePerformanceConfig pc;
  std::string pc_primary, pc_calib, pc_metric = "time", pc_bw = "auto", pc_out = "out";
  auto* cp = app.add_subcommand("compare-performance", "Posterior speedups for every language pair");
  cp->add_option("--primary", pc_primary, "Primary CSV (language, task, metric, value)")->required();
  cp->add_option("--calib", pc_calib, "Calibration CSV (language, task, input_size, variant, metric, value)")
      ->required();
  cp->add_option("--metric", pc_metric, "Metric: time|memory")->check(CLI::IsMember({"time", "memory"}))
      ->capture_default_str();
  cp->add_option("--bandwidth", pc_bw, "KDE bandwidth: auto (Scott's rule) or a positive number")
      ->capture_default_str();
  cp->add_option("--ci", pc.ci, "Credible interval mass")->capture_default_str();
  cp->add_option("--grid-points", pc.grid_points, "Posterior grid points")->capture_default_str();
  cp->add_flag("--plots", pc.plots, "Write one SVG posterior plot per pair");
  cp->add_option("--out", pc_out, "Output directory")->capture_default_str();

  // fit-defects
  FitDefectsConfig fc;
  WeibullFlags f_flags;
  std::string fc_data, fc_counts = "strong", fc_out = "out";
  double fc_xmax = 0.0;
  auto* fd = app.add_subcommand("fit-defects", "Posterior over Weibull (alpha, beta) from per-class bug counts");
  fd->add_option("--data", fc_data, "Bugs CSV (class_id, found_simple, found_strong[, public_methods, loc])")
      ->required();
  f_flags.attach(fd);
  fd->add_option("--counts", fc_counts, "Count column to fit: strong|simple")
      ->check(CLI::IsMember({"strong", "simple"}))
      ->capture_default_str();
  fd->add_option("--ci", fc.ci, "Credible interval mass for marginals")->capture_default_str();
  fd->add_option("--x-max", fc_xmax, "Total possible bugs used as the Pareto fraction denominator");
  fd->add_option("--out", fc_out, "Output directory")->capture_default_str();

  // estimate-total-bugs
  EstimateTotalBugsConfig tc;
  WeibullFlags t_flags;
  std::string tc_data, tc_e = "0.15,0.5", tc_E = "0.7,0.95", tc_out = "out";
  std::size_t tc_e_steps = 8, tc_E_steps = 6;
  long tc_nmax = -1;
  auto* tb = app.add_subcommand("estimate-total-bugs", "Hierarchical estimate of total bugs per class");
  tb->add_option("--data", tc_data, "Bugs CSV (class_id, found_simple, found_strong[, public_methods, loc])")
      ->required();
  t_flags.attach(tb);
  tb->add_option("--e-range", tc_e, "Effectiveness range of simple-spec testing 'lo,hi'")->capture_default_str();
  tb->add_option("--E-range", tc_E, "Effectiveness range of strong-spec testing 'lo,hi'")->capture_default_str();
  tb->add_option("--e-steps", tc_e_steps, "Grid points on the e axis")->capture_default_str();
  tb->add_option("--E-steps", tc_E_steps, "Grid points on the E axis")->capture_default_str();
  tb->add_option("--nmax", tc_nmax, "Largest total bug count considered (default max(100, 10d) per class)");
  tb->add_option("--ci", tc.ci, "Credible interval mass")->capture_default_str();
  tb->add_option("--out", tc_out, "Output directory")->capture_default_str();

  // derived-plots
  DerivedPlotsConfig dc;
  WeibullFlags d_flags;
  std::string dc_data, dc_out = "out";
  auto* dp = app.add_subcommand("derived-plots", "Distribution of P[class has at most N bugs] over the Weibull posterior");
  dp->add_option("--data", dc_data, "Bugs CSV (class_id, found_simple, found_strong[, public_methods, loc])")
      ->required();
  d_flags.attach(dp);
  dp->add_option("--at-most", dc.at_most, "Bug bound N")->capture_default_str();
  dp->add_option("--ci", dc.ci, "Restrict (alpha, beta) to marginal credible intervals of this mass (1 = none)")
      ->capture_default_str();
  dp->add_option("--bins", dc.bins, "Probability bins on [0, 1]")->capture_default_str();
  dp->add_option("--out", dc_out, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (co->parsed()) {
      oc.data = oc_data;
      oc.baselines = oc_base;
      oc.baseline_set = split_list(oc_set);
      if (oc_scheme != "all") {
        oc.schemes.clear();
        for (const auto& s : split_list(oc_scheme)) oc.schemes.push_back(outcomes::parse_weight_scheme(s));
      }
      if (co->count("--simplex-step")) oc.simplex_step = oc_step;
      if (!oc_treatment.empty()) oc.treatment = oc_treatment;
      oc.out = oc_out;
      compare_outcomes(oc);
    } else if (cp->parsed()) {
      pc.primary = pc_primary;
      pc.calib = pc_calib;
      pc.metric = speedup::parse_metric(pc_metric);
      if (pc_bw != "auto") {
        const auto bw = parse_range(pc_bw + "," + pc_bw, "--bandwidth").first;
        if (!(bw > 0.0)) throw Error(ErrorCode::InvalidArgument, "--bandwidth must be positive");
        pc.bandwidth = bw;
      }
      pc.out = pc_out;
      compare_performance(pc);
    } else if (fd->parsed()) {
      fc.data = fc_data;
      fc.grid = f_flags.resolve();
      fc.prior = defects::parse_prior_kind(f_flags.prior);
      fc.column = fc_counts == "simple" ? CountColumn::Simple : CountColumn::Strong;
      if (fd->count("--x-max")) fc.x_max = fc_xmax;
      fc.out = fc_out;
      fit_defects(fc);
    } else if (tb->parsed()) {
      tc.data = tc_data;
      tc.grid = t_flags.resolve();
      tc.prior = defects::parse_prior_kind(t_flags.prior);
      const auto [elo, ehi] = parse_range(tc_e, "--e-range");
      const auto [Elo, Ehi] = parse_range(tc_E, "--E-range");
      tc.effectiveness.e = {elo, ehi, tc_e_steps, defects::AxisSpacing::Linear};
      tc.effectiveness.E = {Elo, Ehi, tc_E_steps, defects::AxisSpacing::Linear};
      if (tb->count("--nmax")) tc.n_max = tc_nmax;
      tc.out = tc_out;
      estimate_total_bugs(tc);
    } else if (dp->parsed()) {
      dc.data = dc_data;
      dc.grid = d_flags.resolve();
      dc.prior = defects::parse_prior_kind(d_flags.prior);
      dc.out = dc_out;
      derived_plots(dc);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace sebayes::cli
