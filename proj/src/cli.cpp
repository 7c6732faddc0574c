#include "secretary/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "secretary/asymptotics.hpp"
#include "secretary/equilibrium.hpp"
#include "secretary/oracle.hpp"
#include "secretary/simulator.hpp"

namespace secretary::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr double kAgreementTolerance = 1e-12;

std::string cell_text(const Cell& cell) {
  if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
  return std::get<std::string>(cell);
}

nlohmann::json cell_json(const Cell& cell) {
  if (const auto* i = std::get_if<long long>(&cell)) return *i;
  if (const auto* d = std::get_if<double>(&cell)) return *d;
  return std::get<std::string>(cell);
}

int parse_int(const std::string& text, const char* what) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) {
    throw UsageError(std::string("cannot parse ") + what + " '" + text + "'");
  }
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string part;
  while (std::getline(stream, part, sep)) parts.push_back(part);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

// Options shared by the subcommands.
struct Options {
  int n = 0;
  double cost = 0.0;
  std::string n_range;
  std::string cost_list;
  long long trials = 100000;
  unsigned long long seed = 20240101;
  std::string format = "csv";
  std::string out_path;
  double grid_step = 0.0;
  int log_count = 0;
  bool tables = false;
  unsigned threads = 0;
  std::string profile = "equilibrium";
};

GameConfig config_from(const Options& o) {
  try {
    return make_config(o.n, o.cost);
  } catch (const InvalidInstance& e) {
    throw UsageError(e.what());
  }
}

std::vector<int> n_values(const Options& o, std::vector<int> fallback) {
  std::vector<int> values = o.n_range.empty() ? std::move(fallback) : parse_n_range(o.n_range);
  if (o.log_count > 0) values = log_spaced(values.front(), values.back(), o.log_count);
  return values;
}

void add_meta(Table& table, const std::string& command) {
  table.metadata.insert(table.metadata.begin(),
                        {{"tool", std::string("secretary_cli")},
                         {"version", std::string(kToolVersion)},
                         {"command", command}});
}

Table solve_command(const Options& o) {
  const GameConfig config = config_from(o);
  const auto tables = solve_values<double>(config);
  const auto policy = build_policy(config, tables);
  Table table;
  add_meta(table, "solve");
  const double pi = tables.success_probability;
  const double tau = expected_stopping_time(config);
  table.metadata.push_back({"n", static_cast<long long>(config.n_applicants)});
  table.metadata.push_back({"cost", config.cost});
  table.metadata.push_back({"n_star", static_cast<long long>(tables.threshold)});
  table.metadata.push_back({"pi", pi});
  table.metadata.push_back({"expected_tau", tau});
  if (o.tables) {
    table.columns = {"n", "v0", "v1", "V0", "V1", "accept_record"};
    for (int n = 1; n <= config.n_applicants; ++n) {
      table.rows.push_back({static_cast<long long>(n), tables.normalized0(n),
                            tables.normalized1(n), tables.value0(n), tables.value1(n),
                            policy.record_acceptance(n)});
    }
  } else {
    table.columns = {"N",  "c", "n_star", "pi", "pi_closed_form", "expected_tau",
                     "accept_before_threshold", "accept_from_threshold"};
    table.rows.push_back({static_cast<long long>(config.n_applicants), config.cost,
                          static_cast<long long>(tables.threshold), pi,
                          closed_form_success(config), tau, config.cost, 1.0});
  }
  return table;
}

Table sweep_command(const Options& o) {
  const std::vector<int> ns = n_values(o, parse_n_range("2:1000"));
  const std::vector<double> costs =
      o.cost_list.empty() ? std::vector<double>{o.cost} : parse_cost_list(o.cost_list);
  Table table;
  add_meta(table, "sweep");
  table.columns = {"N", "c", "n_star", "pi", "scaled_pi", "asymptote", "expected_tau"};
  for (double c : costs) {
    const double limit = limit_constant(c);
    for (int n : ns) {
      const GameConfig config = make_config(n, c);
      const auto tables = solve_values<double>(config);
      const double pi = tables.success_probability;
      table.rows.push_back({static_cast<long long>(n), c,
                            static_cast<long long>(tables.threshold), pi,
                            std::pow(double(n), c) * pi, limit * std::pow(double(n), -c),
                            expected_stopping_time(config)});
    }
  }
  return table;
}

Table asymptotics_command(const Options& o) {
  const std::vector<int> ns =
      n_values(o, {10, 100, 1000, 10000, 100000, 1000000});
  if (!(o.cost >= 0.0 && o.cost < 1.0)) throw UsageError("cost must lie in [0, 1)");
  const AsymptoticReport report = convergence_report(o.cost, ns);
  Table table;
  add_meta(table, "asymptotics");
  table.metadata.push_back({"cost", report.cost});
  table.metadata.push_back({"limit_constant", report.limit_constant});
  table.metadata.push_back({"final_relative_deviation", report.final_relative_deviation()});
  table.metadata.push_back({"scaled_tolerance", report.scaled_tolerance});
  table.metadata.push_back({"bounds_hold", std::string(report.bounds_hold() ? "true" : "false")});
  table.metadata.push_back({"note", report.tolerance_note});
  table.columns = {"N", "n_star", "lower_bound", "upper_bound", "pi", "scaled_pi",
                   "limit_constant"};
  for (std::size_t i = 0; i < report.samples.size(); ++i) {
    const auto& s = report.samples[i];
    const auto& t = report.threshold_samples[i];
    table.rows.push_back({static_cast<long long>(s.n_applicants),
                          static_cast<long long>(t.threshold), t.lower_bound, t.upper_bound,
                          s.success_probability, s.scaled_value, report.limit_constant});
  }
  return table;
}

StrategyProfile profile_from(const GameConfig& config, const std::string& name) {
  if (name == "equilibrium") return full_learning_profile(config);
  if (name == "ignore-first") return ignore_first_profile(config);
  if (name == "no-learning") {
    const std::vector<double> uniform(static_cast<std::size_t>(config.n_applicants),
                                      1.0 / config.n_applicants);
    return no_learning_profile(config, uniform);
  }
  throw UsageError("unknown profile '" + name + "'");
}

Table simulate_command(const Options& o) {
  const GameConfig config = config_from(o);
  if (o.trials < 1) throw UsageError("--trials must be >= 1");
  const StrategyProfile profile = profile_from(config, o.profile);
  const AggregateStats stats = estimate(config, profile, o.trials, o.seed, o.threads);
  Table table;
  add_meta(table, "simulate");
  table.metadata.push_back({"profile", o.profile});
  table.metadata.push_back({"seed", static_cast<long long>(o.seed)});
  table.columns = {"N",      "c",          "trials",  "seed",          "success_rate",
                   "success_se", "acceptance_rate", "mean_tau_unconditional", "tau_se",
                   "mean_tau_conditional"};
  table.rows.push_back({static_cast<long long>(config.n_applicants), config.cost,
                        static_cast<long long>(stats.trials),
                        static_cast<long long>(stats.seed), stats.success_rate,
                        stats.success_se, stats.acceptance_rate,
                        stats.mean_tau_unconditional, stats.tau_se,
                        stats.mean_tau_conditional});
  if (o.profile == "equilibrium") {
    table.metadata.push_back({"exact_pi", closed_form_success(config)});
    table.metadata.push_back({"exact_expected_tau", expected_stopping_time(config)});
  }
  return table;
}

Table oracle_command(const Options& o, bool& failed) {
  const GameConfig config = config_from(o);
  if (config.n_applicants > kMaxOracleApplicants) {
    throw UsageError("oracle supports --n <= " + std::to_string(kMaxOracleApplicants));
  }
  const double dp = solve_values<double>(config).success_probability;
  const double closed = closed_form_success(config);
  const PolicySpec<double> spec = equilibrium_spec(config);
  const ExactOutcome<double> exact = exact_outcome(spec);
  const double tau = expected_stopping_time(config);
  const FullLearningAudit audit = full_learning_audit(config);
  const AuditReport incentives = incentive_audit(config, full_learning_profile(config));

  Table table;
  add_meta(table, "oracle");
  table.columns = {"check", "value", "reference", "abs_diff", "passed"};
  auto add = [&](const std::string& name, double value, double reference) {
    const double diff = std::abs(value - reference);
    const bool ok = diff <= kAgreementTolerance;
    failed = failed || !ok;
    table.rows.push_back({name, value, reference, diff, std::string(ok ? "true" : "false")});
  };
  add("closed_form_vs_dp", closed, dp);
  add("enumeration_vs_dp", exact.success_probability, dp);
  add("expected_tau_vs_N_pi", tau, config.n_applicants * closed);
  add("enumeration_tau_vs_N_pi", exact.expected_tau,
      config.n_applicants * exact.success_probability);
  auto add_flag = [&](const std::string& name, bool ok) {
    failed = failed || !ok;
    table.rows.push_back({name, ok ? 1.0 : 0.0, 1.0, ok ? 0.0 : 1.0,
                          std::string(ok ? "true" : "false")});
  };
  add_flag("full_learning_audit", audit.ok);
  add_flag("incentive_audit", incentives.ok());
  if (o.grid_step > 0.0) {
    ScanReport scan;
    try {
      scan = optimality_scan(config, o.grid_step);
    } catch (const InvalidInstance& e) {
      throw UsageError(e.what());
    }
    table.rows.push_back({std::string("scan_best_vs_pi"), scan.best_success, scan.dp_success,
                          std::abs(scan.best_success - scan.dp_success),
                          std::string(scan.no_policy_beats_equilibrium ? "true" : "false")});
    failed = failed || !scan.no_policy_beats_equilibrium;
    add_flag("scan_equilibrium_attains_max", scan.equilibrium_attains_max);
    table.metadata.push_back({"policies_scanned", scan.policies_evaluated});
    table.metadata.push_back({"scan_note", scan.note});
  }
  return table;
}

}  // namespace

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
    out << '\n';
  }
}

void write_json(const Table& table, std::ostream& out) {
  nlohmann::json doc;
  doc["metadata"] = nlohmann::json::object();
  for (const auto& [key, value] : table.metadata) doc["metadata"][key] = cell_json(value);
  doc["rows"] = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json object = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) object[table.columns[i]] = cell_json(row[i]);
    doc["rows"].push_back(std::move(object));
  }
  out << doc.dump(2) << '\n';
}

std::vector<int> parse_n_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() < 2 || parts.size() > 3) {
    throw UsageError("--n-range expects lo:hi or lo:hi:step, got '" + text + "'");
  }
  const int lo = parse_int(parts[0], "range start");
  const int hi = parse_int(parts[1], "range end");
  const int step = parts.size() == 3 ? parse_int(parts[2], "range step") : 1;
  if (lo < 2) throw UsageError("--n-range must start at N >= 2");
  if (hi < lo) throw UsageError("--n-range must be ascending");
  if (step < 1) throw UsageError("--n-range step must be >= 1");
  std::vector<int> values;
  for (long long n = lo; n <= hi; n += step) values.push_back(static_cast<int>(n));
  return values;
}

std::vector<int> log_spaced(int lo, int hi, int count) {
  if (lo < 2 || hi < lo) throw UsageError("log spacing needs 2 <= lo <= hi");
  if (count < 1) throw UsageError("--log-spaced must be >= 1");
  if (count == 1 || lo == hi) return {lo};
  std::vector<int> values;
  const double a = std::log(double(lo));
  const double b = std::log(double(hi));
  for (int i = 0; i < count; ++i) {
    const double x = a + (b - a) * i / (count - 1);
    values.push_back(std::clamp(static_cast<int>(std::lround(std::exp(x))), lo, hi));
  }
  values.front() = lo;
  values.back() = hi;
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

std::vector<double> parse_cost_list(const std::string& text) {
  std::vector<double> costs;
  for (const std::string& part : split(text, ',')) {
    std::size_t used = 0;
    double c = 0.0;
    try {
      c = std::stod(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (part.empty() || used != part.size()) {
      throw UsageError("cannot parse cost '" + part + "'");
    }
    if (!(c >= 0.0 && c < 1.0)) throw UsageError("costs must lie in [0, 1)");
    costs.push_back(c);
  }
  if (costs.empty()) throw UsageError("--cost-list is empty");
  if (!std::is_sorted(costs.begin(), costs.end())) {
    throw UsageError("--cost-list must be ascending");
  }
  return costs;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Secretary problem with costly interviews: solver, simulator, verifier"};
  app.require_subcommand(1);
  Options o;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", o.out_path, "output file (default: standard output)");
  };

  auto* solve = app.add_subcommand("solve", "solve one instance");
  solve->add_option("--n", o.n, "number of applicants")->required();
  solve->add_option("--cost", o.cost, "interview cost in [0, 1)")->required();
  solve->add_flag("--tables", o.tables, "emit the per-stage value tables");
  add_format(solve);

  auto* sweep = app.add_subcommand("sweep", "success probability over N and c");
  sweep->add_option("--n-range", o.n_range, "lo:hi[:step], default 2:1000");
  sweep->add_option("--cost-list", o.cost_list, "comma-separated ascending costs");
  sweep->add_option("--cost", o.cost, "single cost when no list is given");
  sweep->add_option("--log-spaced", o.log_count, "use this many log-spaced N values");
  add_format(sweep);

  auto* asymptotics = app.add_subcommand("asymptotics", "power-law convergence report");
  asymptotics->add_option("--cost", o.cost, "interview cost in [0, 1)")->required();
  asymptotics->add_option("--n-range", o.n_range, "lo:hi[:step]");
  asymptotics->add_option("--log-spaced", o.log_count, "use this many log-spaced N values");
  add_format(asymptotics);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo play of the game");
  simulate->add_option("--n", o.n, "number of applicants")->required();
  simulate->add_option("--cost", o.cost, "interview cost in [0, 1)")->required();
  simulate->add_option("--trials", o.trials, "number of games");
  simulate->add_option("--seed", o.seed, "random seed");
  simulate->add_option("--threads", o.threads, "worker threads (0 = hardware)");
  simulate->add_option("--profile", o.profile, "equilibrium, no-learning or ignore-first")
      ->check(CLI::IsMember({"equilibrium", "no-learning", "ignore-first"}));
  add_format(simulate);

  auto* oracle = app.add_subcommand("oracle", "exact enumeration checks (N <= 10)");
  oracle->add_option("--n", o.n, "number of applicants")->required();
  oracle->add_option("--cost", o.cost, "interview cost in [0, 1)")->required();
  oracle->add_option("--grid-step", o.grid_step, "also run the optimality scan (N <= 8)");
  add_format(oracle);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  bool failed = false;
  Table table;
  try {
    if (solve->parsed()) {
      table = solve_command(o);
    } else if (sweep->parsed()) {
      table = sweep_command(o);
    } else if (asymptotics->parsed()) {
      table = asymptotics_command(o);
    } else if (simulate->parsed()) {
      table = simulate_command(o);
    } else {
      table = oracle_command(o, failed);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidInstance& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!o.out_path.empty()) {
    file.open(o.out_path, std::ios::binary);
    if (!file) {
      err << "cannot open output file " << o.out_path << '\n';
      return kExitUsage;
    }
    sink = &file;
  }
  if (o.format == "json") {
    write_json(table, *sink);
  } else {
    write_csv(table, *sink);
  }
  if (failed) {
    err << "verification failure: oracle checks disagree beyond tolerance\n";
    return kExitVerification;
  }
  return kExitOk;
}

}  // namespace secretary::cli
