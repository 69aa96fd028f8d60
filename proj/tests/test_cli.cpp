#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"

namespace fs = std::filesystem;
using cspace::cli::RunConfig;

namespace {

fs::path scratch_dir() {
  const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
  const fs::path dir = fs::temp_directory_path() / "cspace_cli_tests" / (std::string(info->test_suite_name()) + "." + info->name());
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct CliRun {
  int status;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "cspace_cli");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = cspace::cli::app_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

RunConfig config(const std::string& command) {
  RunConfig c;
  c.command = command;
  return c;
}

void expect_invalid(const RunConfig& c) {
  try {
    c.validate();
    ADD_FAILURE() << "accepted invalid config";
  } catch (const cspace::Error& e) {
    EXPECT_EQ(e.code(), cspace::ErrorCode::InvalidArgument);
  }
}

}  // namespace

TEST(RunConfigValidation, RejectsOutOfRangeValues) {
  EXPECT_NO_THROW(config("phases").validate());
  expect_invalid(config("no-such-command"));
  auto with = [](auto&& edit) {
    RunConfig c = config("fock-circle");
    edit(c);
    return c;
  };
  expect_invalid(with([](RunConfig& c) { c.j = 1.3; }));
  expect_invalid(with([](RunConfig& c) { c.j = 0; }));
  expect_invalid(with([](RunConfig& c) { c.k = -1; }));
  expect_invalid(with([](RunConfig& c) { c.s = 0; }));
  expect_invalid(with([](RunConfig& c) { c.m = -1; }));
  expect_invalid(with([](RunConfig& c) { c.r0 = -0.5; }));
  expect_invalid(with([](RunConfig& c) { c.nodes = 4; }));
  expect_invalid(with([](RunConfig& c) { c.cutoff = 100000; }));
  expect_invalid(with([](RunConfig& c) { c.grid = 1; }));
  expect_invalid(with([](RunConfig& c) { c.threads = 0; }));
  expect_invalid(with([](RunConfig& c) { c.su11_case = "k1"; }));
  expect_invalid(with([](RunConfig& c) { c.system = "su3"; }));
  expect_invalid(with([](RunConfig& c) { c.formats = {"png"}; }));
}

TEST(CliApp, UsageErrorsExitWithTwo) {
  const fs::path dir = scratch_dir();
  EXPECT_EQ(run({"bogus", "--out", dir.string()}).status, 2);
  EXPECT_EQ(run({"su2-latitudes", "--j", "1.25", "--out", dir.string()}).status, 2);
  EXPECT_EQ(run({"su2-latitudes", "--j", "abc"}).status, 2);
  EXPECT_EQ(run({}).status, 2);
  const CliRun r = run({"su2-latitudes", "--grid", "1"});
  EXPECT_NE(r.err.find("--grid"), std::string::npos);
  EXPECT_TRUE(fs::is_empty(dir));
}

TEST(CliApp, ExitStatusFollowsChecks) {
  const fs::path dir = scratch_dir();
  const CliRun ok = run({"su2-latitudes", "--grid", "20", "--out", dir.string()});
  EXPECT_EQ(ok.status, 0) << ok.out;
  EXPECT_EQ(ok.out.find("FAIL"), std::string::npos);
  // Eight nodes cannot resolve the m = 2 Fock state.
  const CliRun bad = run({"fock-circle", "--nodes", "8", "--grid", "20", "--out", dir.string()});
  EXPECT_EQ(bad.status, 1);
  EXPECT_NE(bad.out.find("FAIL"), std::string::npos);
}

TEST(CliApp, WritesRequestedFormats) {
  const fs::path dir = scratch_dir();
  ASSERT_EQ(run({"ellipse-naive", "--grid", "24", "--out", dir.string(), "--format", "csv,json,pgm"}).status, 0);
  const fs::path cmd = dir / "ellipse-naive";
  for (const char* f : {"report.json", "section_p0.csv", "ellipse_points.csv", "q_field.pgm", "q_field.json"})
    EXPECT_TRUE(fs::exists(cmd / f)) << f;

  const auto report = nlohmann::json::parse(slurp(cmd / "report.json"));
  EXPECT_EQ(report["command"], "ellipse-naive");
  EXPECT_TRUE(report["passed"].get<bool>());
  EXPECT_FALSE(report["checks"].empty());

  std::istringstream csv(slurp(cmd / "ellipse_points.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "index,q,p,ellipse_residual");
  int rows = 0;
  while (std::getline(csv, line)) {
    double index = 0, q = 0, p = 0;
    char comma = 0;
    std::istringstream(line) >> index >> comma >> q >> comma >> p;
    EXPECT_EQ(index, rows);
    EXPECT_NEAR(q * q / 4 + p * p, 1.0, 1e-12);
    ++rows;
  }
  EXPECT_EQ(rows, 300);

  std::istringstream pgm(slurp(cmd / "q_field.pgm"));
  std::string magic;
  int nx = 0, ny = 0, maxval = 0, lo = 255, hi = 0, v = 0, count = 0;
  pgm >> magic >> nx >> ny >> maxval;
  EXPECT_EQ(magic, "P2");
  EXPECT_EQ(nx, 24);
  EXPECT_EQ(ny, 24);
  EXPECT_EQ(maxval, 255);
  while (pgm >> v) lo = std::min(lo, v), hi = std::max(hi, v), ++count;
  EXPECT_EQ(count, nx * ny);
  EXPECT_EQ(lo, 0);
  EXPECT_EQ(hi, 255);

  const auto side = nlohmann::json::parse(slurp(cmd / "q_field.json"));
  EXPECT_EQ(side["nx"], 24);
  EXPECT_LT(side["min"].get<double>(), side["max"].get<double>());
  EXPECT_EQ(side["x_range"][0], -4.0);

  const fs::path only = dir / "only_json";
  ASSERT_EQ(run({"ellipse-naive", "--grid", "8", "--out", only.string(), "--format", "json"}).status, 0);
  for (const auto& e : fs::directory_iterator(only / "ellipse-naive")) EXPECT_EQ(e.path().extension(), ".json");
}

TEST(CliApp, DiskHeatmapMasksOutsideCells) {
  const fs::path dir = scratch_dir();
  ASSERT_EQ(run({"su11", "--case", "k0", "--grid", "16", "--out", dir.string(), "--format", "pgm,json"}).status, 0);
  fs::path pgm_path;
  for (const auto& e : fs::directory_iterator(dir / "su11"))
    if (e.path().extension() == ".pgm") pgm_path = e.path();
  ASSERT_FALSE(pgm_path.empty());
  std::istringstream pgm(slurp(pgm_path));
  std::string magic;
  int nx = 0, ny = 0, maxval = 0;
  pgm >> magic >> nx >> ny >> maxval;
  std::vector<int> px(nx * ny);
  for (auto& v : px) pgm >> v;
  // Corners of the square chart lie outside the unit disk.
  EXPECT_EQ(px.front(), 0);
  EXPECT_EQ(px.back(), 0);
}

TEST(CliApp, RerunsAreByteIdentical) {
  const fs::path dir = scratch_dir();
  for (const char* sub : {"a", "b"}) {
    ASSERT_EQ(run({"fock-circle", "--grid", "20", "--out", (dir / sub).string()}).status, 0);
    ASSERT_EQ(run({"scaled-ellipse", "--grid", "20", "--threads", sub[0] == 'a' ? "1" : "4", "--out", (dir / sub).string(),
                   "--format", "csv,json,pgm"})
                  .status,
              0);
  }
  int compared = 0;
  for (const auto& e : fs::recursive_directory_iterator(dir / "a")) {
    if (!e.is_regular_file()) continue;
    const fs::path other = dir / "b" / fs::relative(e.path(), dir / "a");
    ASSERT_TRUE(fs::exists(other)) << other;
    EXPECT_EQ(slurp(e.path()), slurp(other)) << e.path();
    ++compared;
  }
  EXPECT_GE(compared, 8);
}

TEST(CliApp, ConfigPrecedence) {
  const fs::path dir = scratch_dir();
  const fs::path cfg = dir / "run.ini";
  std::ofstream(cfg) << "j = 1.5\ngrid = 12\nformat = json\n";
  auto j_of = [&](std::vector<std::string> extra) {
    fs::remove_all(dir / "out");
    std::vector<std::string> args{"su2-latitudes", "--out", (dir / "out").string()};
    args.insert(args.end(), extra.begin(), extra.end());
    const CliRun r = run(args);
    EXPECT_EQ(r.status, 0) << r.err;
    return nlohmann::json::parse(slurp(dir / "out" / "su2-latitudes" / "report.json"))["summary"]["j"].get<double>();
  };
  EXPECT_EQ(j_of({}), 2.0);
  EXPECT_EQ(j_of({"--config", cfg.string()}), 1.5);
  EXPECT_EQ(j_of({"--config", cfg.string(), "--j", "2.5"}), 2.5);
  EXPECT_FALSE(fs::exists(dir / "out" / "su2-latitudes" / "latitudes.csv"));  // format taken from the file
}

TEST(CliApp, FockCircleFixedPointRefusal) {
  const fs::path dir = scratch_dir();
  const CliRun r = run({"fock-circle", "--m", "0", "--grid", "12", "--out", dir.string(), "--format", "json"});
  EXPECT_EQ(r.status, 0) << r.out;
  const auto report = nlohmann::json::parse(slurp(dir / "fock-circle" / "report.json"));
  EXPECT_TRUE(report["summary"].contains("fixed_point_refusal"));
}
