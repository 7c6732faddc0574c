#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace secretary::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitVerification = 3;

inline constexpr const char* kToolVersion = "1.0.0";

using Cell = std::variant<long long, double, std::string>;

/// Column-named rows, emitted as CSV (17 significant digits) or as a JSON
/// object {"metadata": ..., "rows": [{column: value}, ...]}.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> metadata;
};

std::string format_double(double value);
void write_csv(const Table& table, std::ostream& out);
void write_json(const Table& table, std::ostream& out);

/// Parses "lo:hi" or "lo:hi:step" into an ascending list with lo >= 2.
std::vector<int> parse_n_range(const std::string& text);
/// K log-spaced integers spanning [lo, hi], deduplicated, ascending.
std::vector<int> log_spaced(int lo, int hi, int count);
/// Parses "0,0.1,0.5" into a list of costs in [0, 1).
std::vector<double> parse_cost_list(const std::string& text);

/// Runs one command line (args excludes the program name). Data goes to
/// `out` unless --out names a file; diagnostics go to `err`. Returns the
/// process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace secretary::cli
