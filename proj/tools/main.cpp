// Command-line front end: evaluates stationary measures, solves the load
// dimensioning problems with conventional and refined square-root rules,
// solves carried-traffic (throughput) targets, and emits the staffing table
// and throughput-profile data as CSV or JSON.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qstaff/report.hpp"

namespace {

void add_common(CLI::App* cmd, qstaff::RunConfig& config, std::string& format,
                bool with_policy = true) {
  cmd->add_option("-s,--servers", config.servers, "number of servers")
      ->check(CLI::PositiveNumber);
  if (with_policy)
    cmd->add_option("-p,--policy", config.policy_spec,
                    "admission policy: loss, delay, bernoulli:<p>, "
                    "threshold:<m>, series:<path>");
  cmd->add_option("-f,--format", format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("-o,--output", config.output_path,
                  "write the report to this file instead of stdout");
  cmd->add_option("--tol", config.tol,
                  "residual level above which results are flagged");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Performance and staffing calculations for Markovian many-server "
      "systems with admission control and retrials"};
  app.require_subcommand(1);

  qstaff::RunConfig config;
  std::string format = "csv";
  std::string variant = "dfr";

  auto* measure = app.add_subcommand(
      "measure", "stationary measures at one (servers, load) point");
  add_common(measure, config, format);
  measure->add_option("-l,--lambda", config.lambda, "offered load")->required();
  measure->add_flag("-r,--retrials", config.retrials,
                    "evaluate at the retrial-inflated load");

  auto* staff = app.add_subcommand(
      "staff", "solve one load-dimensioning target exactly and by the "
               "square-root rules");
  add_common(staff, config, format);
  staff->add_option("-e,--epsilon", config.epsilon, "scaled target value")
      ->required();
  staff->add_option("-v,--variant", variant, "measure: df or dfr")
      ->check(CLI::IsMember({"df", "dfr"}));
  staff->add_flag("-r,--retrials", config.retrials,
                  "dimension the system with retrials");

  auto* retrial = app.add_subcommand(
      "retrial", "solve the retrial balance equation at one load");
  add_common(retrial, config, format);
  retrial->add_option("-l,--lambda", config.lambda, "offered load")->required();

  auto* bist = app.add_subcommand(
      "bistability", "solve a carried-traffic target; such targets can have "
                     "two, one or zero solutions");
  add_common(bist, config, format);
  bist->add_option("-e,--epsilon", config.epsilon, "carried-traffic target")
      ->required();
  bist->add_option("-v,--variant", variant, "measure: df or dfr")
      ->check(CLI::IsMember({"df", "dfr"}));
  bist->add_flag("-r,--retrials", config.retrials,
                 "include the retrial stream");
  bist->add_option("-g,--grid", config.grid_size,
                   "scan resolution for general-policy retrial targets");

  auto* table = app.add_subcommand(
      "table", "staffing table over a grid of targets");
  add_common(table, config, format);
  table->add_option("-v,--variant", variant, "measure: df or dfr")
      ->check(CLI::IsMember({"df", "dfr"}));
  table->add_flag("-r,--retrials", config.retrials,
                  "dimension the system with retrials");
  table->add_option("--eps-list", config.eps_list,
                    "explicit comma-separated target grid")
      ->delimiter(',');

  auto* figure2 = app.add_subcommand(
      "figure2", "normalized retrial throughput profile over the load range");
  add_common(figure2, config, format, /*with_policy=*/false);
  figure2->add_option("-g,--grid", config.grid_size, "number of grid points")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return qstaff::exit_code::usage;
  }

  config.format = qstaff::parse_format(format);
  config.variant = qstaff::parse_variant(variant);
  if (measure->parsed()) config.command = qstaff::Command::measure;
  if (staff->parsed()) config.command = qstaff::Command::staff;
  if (retrial->parsed()) config.command = qstaff::Command::retrial;
  if (bist->parsed()) config.command = qstaff::Command::bistability;
  if (table->parsed()) config.command = qstaff::Command::table;
  if (figure2->parsed()) config.command = qstaff::Command::figure2;

  return qstaff::run(config, std::cout, std::cerr);
}
