#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "qstaff/bistability.hpp"
#include "qstaff/performance.hpp"
#include "qstaff/retrials.hpp"
#include "qstaff/staffing.hpp"

namespace qstaff {

enum class Command { measure, staff, retrial, bistability, table, figure2 };
enum class Format { csv, json };

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int io = 1;          ///< unwritable output path and kin
inline constexpr int domain = 2;      ///< argument outside a contract
inline constexpr int convergence = 3; ///< solver or consistency failure
inline constexpr int usage = 64;      ///< malformed invocation
}  // namespace exit_code

/// One resolved command invocation. Defaults are part of the interface:
/// 100 servers, load 80, target 0.01, policy bernoulli:0.1, rejection
/// variant, no retrials, CSV to stdout, tol 1e-10, grid 256, and the table
/// epsilon grid 0.01..0.10 in steps of 0.01.
struct RunConfig {
  Command command = Command::table;
  int servers = 100;
  double lambda = 80.0;
  double epsilon = 0.01;
  std::string policy_spec = "bernoulli:0.1";
  Variant variant = Variant::rejection;
  bool retrials = false;
  Format format = Format::csv;
  double tol = 1e-10;  ///< residual level above which results are flagged
  std::string output_path;       ///< empty writes to the report stream
  std::vector<double> eps_list;  ///< empty uses the default table grid
  int grid_size = 256;

  bool operator==(const RunConfig&) const = default;
};

std::string config_to_json(const RunConfig& config);
RunConfig config_from_json(const std::string& text);

const char* command_name(Command c);
const char* variant_name(Variant v);
const char* format_name(Format f);
Command parse_command(const std::string& name);
Variant parse_variant(const std::string& name);
Format parse_format(const std::string& name);

/// One dimensioning-table row; field names match the CSV header
///   epsilon,lambda_opt,lambda_star,lambda_bullet,r_bullet,
///   constraint_at_star,constraint_at_bullet
struct TableRow {
  double epsilon = 0.0;
  double lambda_opt = 0.0;
  double lambda_star = 0.0;
  double lambda_bullet = 0.0;
  double r_bullet = 0.0;
  double constraint_at_star = 0.0;
  double constraint_at_bullet = 0.0;
};

struct TableReport {
  std::vector<TableRow> rows;
};

/// Builds the staffing table for each target in eps_list.
TableReport make_table(int servers, const Policy& policy, Variant variant,
                       bool retrials, const std::vector<double>& eps_list);

/// CSV (6-decimal fixed point) or JSON (full precision) serialization.
std::string emit(const TableReport& report, Format format);
TableReport parse_table_csv(const std::string& text);
TableReport parse_table_json(const std::string& text);

struct Figure2Report {
  std::vector<std::pair<double, double>> rows;  ///< (delta, value)
};

/// Tab-separated `delta<TAB>value` lines for CSV, array of pairs for JSON.
std::string emit(const Figure2Report& report, Format format);

/// Executes one configured command, writing the report to `out` (or the
/// configured output path) and diagnostics to `diag`. Library errors map to
/// the exit codes above instead of escaping.
int run(const RunConfig& config, std::ostream& out, std::ostream& diag);

}  // namespace qstaff
