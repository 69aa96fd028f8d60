#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "commands.hpp"

namespace cspace::cli {

namespace fs = std::filesystem;

namespace {

std::string cell_text(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  const double d = std::get<double>(c);
  if (std::isnan(d)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", d);
  return buf;
}

nlohmann::ordered_json cell_json(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* i = std::get_if<long long>(&c)) return *i;
  const double d = std::get<double>(c);
  if (!std::isfinite(d)) return nullptr;
  return d;
}

void write_csv(const fs::path& path, const Table& t) {
  std::ofstream os(path);
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
    os << '\n';
  }
}

void write_pgm(const fs::path& path, const QField& f) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (Eigen::Index j = 0; j < f.values.rows(); ++j)
    for (Eigen::Index i = 0; i < f.values.cols(); ++i)
      if (f.mask(j, i)) {
        lo = std::min(lo, f.values(j, i));
        hi = std::max(hi, f.values(j, i));
      }
  const double span = hi > lo ? hi - lo : 1.0;
  std::ofstream os(path);
  os << "P2\n" << f.values.cols() << ' ' << f.values.rows() << "\n255\n";
  // Top image row is the largest y.
  for (Eigen::Index j = f.values.rows() - 1; j >= 0; --j) {
    for (Eigen::Index i = 0; i < f.values.cols(); ++i) {
      const int v = f.mask(j, i) ? static_cast<int>(std::lround(255.0 * (f.values(j, i) - lo) / span)) : 0;
      os << v << (i + 1 < f.values.cols() ? ' ' : '\n');
    }
  }
}

nlohmann::ordered_json heatmap_sidecar(const Heatmap& h) {
  const GridSpec& g = h.field.grid;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (Eigen::Index j = 0; j < h.field.values.rows(); ++j)
    for (Eigen::Index i = 0; i < h.field.values.cols(); ++i)
      if (h.field.mask(j, i)) {
        lo = std::min(lo, h.field.values(j, i));
        hi = std::max(hi, h.field.values(j, i));
      }
  return {{"name", h.name},
          {"manifold", to_string(g.manifold)},
          {"x_range", {g.x_min, g.x_max}},
          {"y_range", {g.y_min, g.y_max}},
          {"nx", g.nx},
          {"ny", g.ny},
          {"convention", h.field.convention == MeasureConvention::Raw ? "raw" : "divided by 2pi"},
          {"scaling", "min-max over unmasked nodes"},
          {"min", lo},
          {"max", hi},
          {"note", h.note}};
}

}  // namespace

std::vector<std::string> write_report(const Report& report, const RunConfig& cfg) {
  const fs::path dir = fs::path(cfg.out) / report.command;
  fs::create_directories(dir);
  std::vector<std::string> written;
  if (cfg.wants("csv")) {
    for (const auto& t : report.tables) {
      const fs::path p = dir / (t.name + ".csv");
      write_csv(p, t);
      written.push_back(p.string());
    }
  }
  if (cfg.wants("json")) {
    nlohmann::ordered_json j;
    j["command"] = report.command;
    j["passed"] = report.ok();
    j["summary"] = report.summary;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : report.checks)
      j["checks"].push_back(
          {{"name", c.name}, {"value", c.value}, {"target", c.target}, {"tolerance", c.tolerance}, {"passed", c.passed}});
    j["tables"] = nlohmann::ordered_json::object();
    for (const auto& t : report.tables) {
      nlohmann::ordered_json rows = nlohmann::ordered_json::array();
      for (const auto& row : t.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = cell_json(row[i]);
        rows.push_back(std::move(obj));
      }
      j["tables"][t.name] = std::move(rows);
    }
    const fs::path p = dir / "report.json";
    std::ofstream(p) << j.dump(2) << '\n';
    written.push_back(p.string());
  }
  if (cfg.wants("pgm")) {
    for (const auto& h : report.heatmaps) {
      const fs::path p = dir / (h.name + ".pgm");
      write_pgm(p, h.field);
      const fs::path side = dir / (h.name + ".json");
      std::ofstream(side) << heatmap_sidecar(h).dump(2) << '\n';
      written.push_back(p.string());
      written.push_back(side.string());
    }
  }
  return written;
}

std::string format_checks(const Report& report) {
  std::ostringstream os;
  for (const auto& c : report.checks) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%-5s ", c.passed ? "PASS" : "FAIL");
    os << buf << c.name << ": " << cell_text(c.value);
    if (c.tolerance > 0.0)
      os << " (target " << cell_text(c.target) << " +/- " << cell_text(c.tolerance) << ")";
    else
      os << " (bound " << cell_text(c.target) << ")";
    os << '\n';
  }
  return os.str();
}

}  // namespace cspace::cli
