#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "ddflow/cli.hpp"

namespace {

void report_run(const ddflow::RunResult& r, const std::string& dir) {
  std::cout << "steps=" << r.records.size() << " t=" << ddflow::format_double(r.final_state.t())
            << " out=" << dir << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semi-implicit upwind solver for periodic dislocation-density flows"};
  app.require_subcommand(1);

  std::string config_path;
  std::string preset_name;
  std::string out_dir;
  std::string audit_dir;
  int levels = 3;

  auto* run = app.add_subcommand("run", "Run a configuration file");
  run->add_option("config", config_path, "Config file")->required();

  auto* pre = app.add_subcommand("preset", "Run a named preset");
  pre->add_option("name", preset_name, "case1, case2, stationary or pure-transport")->required();
  pre->add_option("--out", out_dir, "Output directory");

  auto* refine = app.add_subcommand("refine", "Grid refinement study");
  refine->add_option("config", config_path, "Config file")->required();
  refine->add_option("--levels", levels, "Number of levels")->check(CLI::Range(2, 12));

  auto* audit = app.add_subcommand("audit", "Re-verify bounds of a run directory");
  audit->add_option("dir", audit_dir, "Run directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : ddflow::kExitConfig;
  }

  try {
    if (*run) {
      const ddflow::RunConfig cfg = ddflow::load_config(config_path);
      report_run(ddflow::cmd_run(cfg), cfg.output_dir);
    } else if (*pre) {
      const std::string dir = out_dir.empty() ? "out/" + preset_name : out_dir;
      report_run(ddflow::cmd_preset(preset_name, dir), dir);
    } else if (*refine) {
      const ddflow::RunConfig cfg = ddflow::load_config(config_path);
      const auto report = ddflow::cmd_refine(cfg, levels);
      ddflow::write_refinement_csv(std::cout, report);
    } else if (*audit) {
      const ddflow::AuditResult r = ddflow::cmd_audit(audit_dir);
      if (!r.ok) {
        std::cerr << "audit violation=\"" << r.violation << "\" detail=\"" << r.detail
                  << "\"\n";
        return ddflow::kExitAudit;
      }
      std::cout << "audit ok\n";
    }
  } catch (const ddflow::Error& e) {
    std::cerr << ddflow::error_line(e) << '\n';
    return ddflow::exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error kind=Internal message=\"" << e.what() << "\"\n";
    return ddflow::kExitNumerical;
  }
  return ddflow::kExitOk;
}
