#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "cspace/qscope.hpp"

namespace cspace::cli {

struct RunConfig {
  std::string command;
  std::string system;  // phases: restrict presets to one system
  double j = 2.0;
  double k = 3.0;
  double s = 0.70710678118654752;
  std::optional<double> t0;
  std::optional<int> m;
  std::optional<double> r0;
  std::string su11_case = "k0";
  int nodes = 0;   // 0: command default
  int cutoff = 0;  // 0: command default
  int grid = 400;
  int points = 300;  // ellipse states
  std::string out = "out";
  std::vector<std::string> formats{"csv", "json"};
  int threads = 1;

  /// Throws cspace::Error(InvalidArgument) on out-of-range values.
  void validate() const;
  bool wants(const std::string& format) const;
};

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Check {
  std::string name;
  double value;
  double target;
  double tolerance;
  bool passed;
};

struct Heatmap {
  std::string name;
  QField field;
  std::string note;
};

struct Report {
  std::string command;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  std::vector<Check> checks;
  std::vector<Table> tables;
  std::vector<Heatmap> heatmaps;

  bool ok() const;
  /// Records |value - target| <= tolerance.
  void expect_near(const std::string& name, double value, double target, double tolerance);
  /// Records value <= bound.
  void expect_below(const std::string& name, double value, double bound);
  /// Records value >= bound.
  void expect_above(const std::string& name, double value, double bound);
};

Report cmd_fock_circle(const RunConfig& cfg);
Report cmd_ellipse_naive(const RunConfig& cfg);
Report cmd_scaled_ellipse(const RunConfig& cfg);
Report cmd_su2_latitudes(const RunConfig& cfg);
Report cmd_su11(const RunConfig& cfg);
Report cmd_phases(const RunConfig& cfg);

/// Dispatches on cfg.command.
Report run_command(const RunConfig& cfg);

/// Writes <out>/<command>/<name>.{csv,json,pgm} for the requested formats
/// and returns the paths written.
std::vector<std::string> write_report(const Report& report, const RunConfig& cfg);

/// Fixed-width text summary of the checks.
std::string format_checks(const Report& report);

/// Parses flags (and an optional --config file), runs the command and writes
/// its outputs.  Returns 0 when every check passed, 1 when a check failed and
/// 2 on a usage or runtime error.
int app_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cspace::cli
