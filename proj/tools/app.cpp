#include <CLI11.hpp>
#include <ostream>

#include "commands.hpp"

namespace cspace::cli {

int app_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Eigenstates as coherent-state superpositions along classical orbits"};
  app.set_config("--config", "", "key = value file with option defaults; command-line flags take precedence");
  RunConfig cfg;
  app.add_option("command", cfg.command,
                 "fock-circle | ellipse-naive | scaled-ellipse | su2-latitudes | su11 | phases")
      ->required();
  app.add_option("--system", cfg.system, "phases: restrict to h4, su2 or su11");
  app.add_option("--j", cfg.j, "SU(2) spin")->capture_default_str();
  app.add_option("--k", cfg.k, "SU(1,1) Bargmann index")->capture_default_str();
  app.add_option("--s", cfg.s, "scaled-oscillator squeeze")->capture_default_str();
  app.add_option("--t0", cfg.t0, "target eigenvalue (fock-circle: target of the unquantized null probe)");
  app.add_option("--m", cfg.m, "quantum number");
  app.add_option("--r0", cfg.r0, "fock-circle: circle radius (default: in-phase radius)");
  app.add_option("--case", cfg.su11_case, "su11: k0, k2 or parabolic")->capture_default_str();
  app.add_option("--nodes", cfg.nodes, "quadrature nodes (0: command default)")->capture_default_str();
  app.add_option("--cutoff", cfg.cutoff, "basis truncation (0: command default)")->capture_default_str();
  app.add_option("--grid", cfg.grid, "heatmap nodes per axis")->capture_default_str();
  app.add_option("--points", cfg.points, "ellipse-naive: number of coherent states")->capture_default_str();
  app.add_option("--out", cfg.out, "output directory")->capture_default_str();
  app.add_option("--format", cfg.formats, "csv, json, pgm (comma separated or repeated)")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--threads", cfg.threads, "heatmap worker threads")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    const Report report = run_command(cfg);
    out << report.command << '\n' << format_checks(report);
    for (const auto& path : write_report(report, cfg)) out << "wrote " << path << '\n';
    return report.ok() ? 0 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace cspace::cli
