#include "qstaff/report.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "qstaff/errors.hpp"

namespace qstaff {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr const char* kTableHeader =
    "epsilon,lambda_opt,lambda_star,lambda_bullet,r_bullet,"
    "constraint_at_star,constraint_at_bullet";

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::vector<double> default_eps_grid() {
  std::vector<double> eps;
  for (int i = 1; i <= 10; ++i) eps.push_back(i / 100.0);
  return eps;
}

}  // namespace

const char* command_name(Command c) {
  switch (c) {
    case Command::measure: return "measure";
    case Command::staff: return "staff";
    case Command::retrial: return "retrial";
    case Command::bistability: return "bistability";
    case Command::table: return "table";
    case Command::figure2: return "figure2";
  }
  return "?";
}

const char* variant_name(Variant v) {
  return v == Variant::all_busy ? "df" : "dfr";
}

const char* format_name(Format f) { return f == Format::csv ? "csv" : "json"; }

Command parse_command(const std::string& name) {
  for (Command c : {Command::measure, Command::staff, Command::retrial,
                    Command::bistability, Command::table, Command::figure2})
    if (name == command_name(c)) return c;
  throw SpecError("unknown command '" + name + "'");
}

Variant parse_variant(const std::string& name) {
  if (name == "df") return Variant::all_busy;
  if (name == "dfr") return Variant::rejection;
  throw SpecError("unknown variant '" + name + "' (expected df or dfr)");
}

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw SpecError("unknown format '" + name + "' (expected csv or json)");
}

std::string config_to_json(const RunConfig& c) {
  ordered_json j;
  j["command"] = command_name(c.command);
  j["servers"] = c.servers;
  j["lambda"] = c.lambda;
  j["epsilon"] = c.epsilon;
  j["policy"] = c.policy_spec;
  j["variant"] = variant_name(c.variant);
  j["retrials"] = c.retrials;
  j["format"] = format_name(c.format);
  j["tol"] = c.tol;
  j["output"] = c.output_path;
  j["eps_list"] = c.eps_list;
  j["grid"] = c.grid_size;
  return j.dump();
}

RunConfig config_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw SpecError(std::string("bad config json: ") + e.what());
  }
  RunConfig c;
  c.command = parse_command(j.at("command").get<std::string>());
  c.servers = j.at("servers").get<int>();
  c.lambda = j.at("lambda").get<double>();
  c.epsilon = j.at("epsilon").get<double>();
  c.policy_spec = j.at("policy").get<std::string>();
  c.variant = parse_variant(j.at("variant").get<std::string>());
  c.retrials = j.at("retrials").get<bool>();
  c.format = parse_format(j.at("format").get<std::string>());
  c.tol = j.at("tol").get<double>();
  c.output_path = j.at("output").get<std::string>();
  c.eps_list = j.at("eps_list").get<std::vector<double>>();
  c.grid_size = j.at("grid").get<int>();
  return c;
}

TableReport make_table(int servers, const Policy& policy, Variant variant,
                       bool retrials, const std::vector<double>& eps_list) {
  TableReport report;
  const std::vector<double>& grid =
      eps_list.empty() ? default_eps_grid() : eps_list;
  report.rows.reserve(grid.size());
  for (double eps : grid) {
    StaffingProblem problem{servers, eps, policy, variant, retrials};
    const StaffingSolution sol = staff_refined(problem);
    report.rows.push_back({eps, sol.lambda_opt, sol.lambda_star,
                           sol.lambda_bullet, sol.r_bullet, sol.achieved_star,
                           sol.achieved_bullet});
  }
  return report;
}

std::string emit(const TableReport& report, Format format) {
  if (format == Format::csv) {
    std::string out = kTableHeader;
    out += '\n';
    for (const TableRow& r : report.rows) {
      out += fixed6(r.epsilon) + ',' + fixed6(r.lambda_opt) + ',' +
             fixed6(r.lambda_star) + ',' + fixed6(r.lambda_bullet) + ',' +
             fixed6(r.r_bullet) + ',' + fixed6(r.constraint_at_star) + ',' +
             fixed6(r.constraint_at_bullet) + '\n';
    }
    return out;
  }
  ordered_json rows = ordered_json::array();
  for (const TableRow& r : report.rows) {
    ordered_json row;
    row["epsilon"] = r.epsilon;
    row["lambda_opt"] = r.lambda_opt;
    row["lambda_star"] = r.lambda_star;
    row["lambda_bullet"] = r.lambda_bullet;
    row["r_bullet"] = r.r_bullet;
    row["constraint_at_star"] = r.constraint_at_star;
    row["constraint_at_bullet"] = r.constraint_at_bullet;
    rows.push_back(std::move(row));
  }
  ordered_json j;
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

TableReport parse_table_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kTableHeader)
    throw SpecError("table csv: missing or wrong header");
  TableReport report;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    TableRow r;
    std::istringstream cells(line);
    std::string cell;
    double* fields[] = {&r.epsilon,  &r.lambda_opt,         &r.lambda_star,
                        &r.lambda_bullet, &r.r_bullet,      &r.constraint_at_star,
                        &r.constraint_at_bullet};
    for (double* field : fields) {
      if (!std::getline(cells, cell, ','))
        throw SpecError("table csv: short row '" + line + "'");
      *field = std::stod(cell);
    }
    report.rows.push_back(r);
  }
  return report;
}

TableReport parse_table_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw SpecError(std::string("table json: ") + e.what());
  }
  TableReport report;
  for (const auto& row : j.at("rows")) {
    TableRow r;
    r.epsilon = row.at("epsilon").get<double>();
    r.lambda_opt = row.at("lambda_opt").get<double>();
    r.lambda_star = row.at("lambda_star").get<double>();
    r.lambda_bullet = row.at("lambda_bullet").get<double>();
    r.r_bullet = row.at("r_bullet").get<double>();
    r.constraint_at_star = row.at("constraint_at_star").get<double>();
    r.constraint_at_bullet = row.at("constraint_at_bullet").get<double>();
    report.rows.push_back(r);
  }
  return report;
}

std::string emit(const Figure2Report& report, Format format) {
  if (format == Format::csv) {
    std::string out;
    for (const auto& [delta, value] : report.rows)
      out += fixed6(delta) + '\t' + fixed6(value) + '\n';
    return out;
  }
  ordered_json rows = ordered_json::array();
  for (const auto& [delta, value] : report.rows) {
    ordered_json row;
    row["delta"] = delta;
    row["value"] = value;
    rows.push_back(std::move(row));
  }
  ordered_json j;
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

namespace {

std::string emit_measure(const RunConfig& config, const Policy& policy,
                         std::ostream& diag) {
  MeasureSet m;
  CohenSolution cohen;
  if (config.retrials) {
    const RetrialMeasures rm =
        retrial_measures(config.servers, config.lambda, policy);
    cohen = rm.cohen;
    m = rm.measures;
    if (cohen.residual > config.tol)
      diag << "warning: retrial solve residual " << cohen.residual
           << " above tol\n";
  } else {
    m = decomposed_measures(config.servers, config.lambda, policy);
  }
  if (config.format == Format::csv) {
    std::string header = "b,c,d_f,d_f_r,q_lambda";
    std::string row = fixed6(m.blocking) + ',' + fixed6(m.delay) + ',' +
                      fixed6(m.all_busy) + ',' + fixed6(m.rejection) + ',' +
                      fixed6(m.mix_weight);
    if (config.retrials) {
      header += ",omega,a,residual,iterations";
      char buf[64];
      std::snprintf(buf, sizeof buf, ",%.6f,%.6f,%.3e,%d", cohen.omega,
                    cohen.a, cohen.residual, cohen.iterations);
      row += buf;
    }
    return header + '\n' + row + '\n';
  }
  ordered_json j;
  j["b"] = m.blocking;
  j["c"] = m.delay;
  j["d_f"] = m.all_busy;
  j["d_f_r"] = m.rejection;
  j["q_lambda"] = m.mix_weight;
  if (config.retrials) {
    j["omega"] = cohen.omega;
    j["a"] = cohen.a;
    j["residual"] = cohen.residual;
    j["iterations"] = cohen.iterations;
  }
  return j.dump(2) + "\n";
}

std::string emit_staff(const RunConfig& config, const Policy& policy) {
  StaffingProblem problem{config.servers, config.epsilon, policy,
                          config.variant, config.retrials};
  const StaffingSolution sol = staff_refined(problem);
  if (config.format == Format::csv) {
    return std::string(
               "epsilon,lambda_opt,gamma_star,lambda_star,gamma_bullet,"
               "lambda_bullet,r_bullet,constraint_at_star,constraint_at_"
               "bullet\n") +
           fixed6(config.epsilon) + ',' + fixed6(sol.lambda_opt) + ',' +
           fixed6(sol.gamma_star) + ',' + fixed6(sol.lambda_star) + ',' +
           fixed6(sol.gamma_bullet) + ',' + fixed6(sol.lambda_bullet) + ',' +
           fixed6(sol.r_bullet) + ',' + fixed6(sol.achieved_star) + ',' +
           fixed6(sol.achieved_bullet) + '\n';
  }
  ordered_json j;
  j["epsilon"] = config.epsilon;
  j["lambda_opt"] = sol.lambda_opt;
  j["gamma_star"] = sol.gamma_star;
  j["lambda_star"] = sol.lambda_star;
  j["gamma_bullet"] = sol.gamma_bullet;
  j["lambda_bullet"] = sol.lambda_bullet;
  j["r_bullet"] = sol.r_bullet;
  j["constraint_at_star"] = sol.achieved_star;
  j["constraint_at_bullet"] = sol.achieved_bullet;
  return j.dump(2) + "\n";
}

std::string emit_retrial(const RunConfig& config, const Policy& policy,
                         std::ostream& diag) {
  const CohenSolution sol =
      solve_cohen(config.servers, config.lambda, policy);
  if (sol.residual > config.tol)
    diag << "warning: retrial solve residual " << sol.residual
         << " above tol\n";
  double a_limit = 0.0;
  if (sol.gamma > 0.0) a_limit = solve_cohen_limit(sol.gamma);
  if (config.format == Format::csv) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%.6f,%.6f,%.6f,%.6f,%.3e,%d,%.6f\n",
                  config.lambda, sol.gamma, sol.omega, sol.a, sol.residual,
                  sol.iterations, a_limit);
    return std::string("lambda,gamma,omega,a,residual,iterations,a_limit\n") +
           buf;
  }
  ordered_json j;
  j["lambda"] = config.lambda;
  j["gamma"] = sol.gamma;
  j["omega"] = sol.omega;
  j["a"] = sol.a;
  j["residual"] = sol.residual;
  j["iterations"] = sol.iterations;
  j["a_limit"] = a_limit;
  return j.dump(2) + "\n";
}

std::string emit_bistability(const RunConfig& config, const Policy& policy,
                             std::ostream& diag) {
  CarriedTrafficResult res;
  if (config.retrials) {
    if (policy.kind() == PolicyKind::loss)
      res = solve_throughput_retrial(config.servers, config.epsilon);
    else
      res = scan_throughput_retrial(config.servers, config.epsilon, policy,
                                    config.grid_size);
  } else {
    res = solve_throughput(config.servers, config.epsilon, policy,
                           config.variant);
  }
  for (const std::string& w : res.warnings) diag << "warning: " << w << "\n";
  if (config.format == Format::csv) {
    std::string roots;
    for (std::size_t i = 0; i < res.solutions.size(); ++i) {
      if (i) roots += ';';
      roots += fixed6(res.solutions[i]);
    }
    return std::string("solution_count,threshold,gamma_hat,solutions\n") +
           std::to_string(res.solution_count) + ',' + fixed6(res.threshold) +
           ',' + fixed6(res.gamma_hat) + ',' + roots + '\n';
  }
  ordered_json j;
  j["solution_count"] = res.solution_count;
  j["threshold"] = res.threshold;
  j["gamma_hat"] = res.gamma_hat;
  j["solutions"] = res.solutions;
  return j.dump(2) + "\n";
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& diag) {
  std::string payload;
  try {
    const Policy policy = Policy::parse(config.policy_spec);
    switch (config.command) {
      case Command::measure:
        payload = emit_measure(config, policy, diag);
        break;
      case Command::staff:
        payload = emit_staff(config, policy);
        break;
      case Command::retrial:
        payload = emit_retrial(config, policy, diag);
        break;
      case Command::bistability:
        payload = emit_bistability(config, policy, diag);
        break;
      case Command::table: {
        const TableReport report =
            make_table(config.servers, policy, config.variant, config.retrials,
                       config.eps_list);
        payload = emit(report, config.format);
        break;
      }
      case Command::figure2: {
        Figure2Report report;
        report.rows = carried_traffic_profile(config.servers, config.grid_size);
        payload = emit(report, config.format);
        break;
      }
    }
  } catch (const SpecError& e) {
    diag << "usage error: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const MultiRootError& e) {
    diag << "error: " << e.what() << "\n";
    for (double root : e.roots()) diag << "  root: " << root << "\n";
    return exit_code::convergence;
  } catch (const DomainError& e) {
    diag << "error: " << e.what() << "\n";
    return exit_code::domain;
  } catch (const Error& e) {
    diag << "error: " << e.what() << "\n";
    return exit_code::convergence;
  }

  if (config.output_path.empty()) {
    out << payload;
    if (!out) {
      diag << "error: failed writing report stream\n";
      return exit_code::io;
    }
    return exit_code::ok;
  }
  std::ofstream file(config.output_path);
  if (!file) {
    diag << "error: cannot open '" << config.output_path << "' for writing\n";
    return exit_code::io;
  }
  file << payload;
  file.flush();
  if (!file) {
    diag << "error: failed writing '" << config.output_path << "'\n";
    return exit_code::io;
  }
  return exit_code::ok;
}

}  // namespace qstaff
