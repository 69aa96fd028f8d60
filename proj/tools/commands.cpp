#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "cspace/oracle.hpp"

namespace cspace::cli {

using std::numbers::pi;

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
  return out;
}

std::vector<double> arange(double lo, double hi, double step) {
  std::vector<double> out;
  for (long i = 0;; ++i) {
    const double x = lo + step * static_cast<double>(i);
    if (x > hi + 1e-12) break;
    out.push_back(x);
  }
  return out;
}

GridSpec square_grid(Manifold manifold, double half, int n) {
  GridSpec g;
  g.manifold = manifold;
  g.x_min = g.y_min = -half;
  g.x_max = g.y_max = half;
  g.nx = g.ny = n;
  return g;
}

double fidelity(const StateVector& psi, int index) { return std::norm(psi.coeffs[index]); }

void add_null_law(Report& r, const CSSystem& h4, double t0) {
  const double frac = std::abs(t0 - std::round(t0));
  r.summary["null_probe_t0"] = t0;
  if (frac < 1e-3) {
    r.summary["null_probe"] = "skipped: target is quantized";
    return;
  }
  const OrbitSpec orbit = OrbitSpec::closed(h4, GeneratorSpec::n(), PhasePoint::plane(std::sqrt(2.0 * t0), 0.0));
  Table t{"null_superposition", {"nodes", "raw_norm", "ratio_to_previous"}, {}};
  double prev = NAN;
  bool decreasing = true;
  double last = NAN;
  for (int nodes : {128, 256, 512, 1024}) {
    const EigenstateResult res = build_eigenstate(make_plan(orbit, t0, nodes));
    const double ratio = std::isnan(prev) ? NAN : prev / res.raw_norm;
    if (!std::isnan(ratio) && ratio < 10.0) decreasing = false;
    t.rows.push_back({static_cast<long long>(nodes), res.raw_norm, ratio});
    prev = last = res.raw_norm;
  }
  r.tables.push_back(t);
  r.summary["null_superposition"] = last < 1e-8;
  r.expect_below("null raw_norm at 1024 nodes", last, 1e-8);
  r.expect_above("null raw_norm shrinks x10 per doubling", decreasing ? 1.0 : 0.0, 1.0);
}

}  // namespace

void RunConfig::validate() const {
  static const std::set<std::string> commands{"fock-circle",   "ellipse-naive", "scaled-ellipse",
                                              "su2-latitudes", "su11",          "phases"};
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); };
  if (!commands.count(command)) fail("unknown command '" + command + "'");
  if (!(j > 0.0) || std::abs(2.0 * j - std::round(2.0 * j)) > 1e-12) fail("--j must be a positive half-integer");
  if (!(k > 0.0)) fail("--k must be positive");
  if (!(s > 0.0)) fail("--s must be positive");
  if (m && *m < 0) fail("--m must be non-negative");
  if (r0 && !(*r0 >= 0.0)) fail("--r0 must be non-negative");
  if (t0 && !std::isfinite(*t0)) fail("--t0 must be finite");
  if (nodes < 0 || (nodes > 0 && nodes < 8)) fail("--nodes must be 0 (default) or at least 8");
  if (cutoff < 0 || cutoff > 4096) fail("--cutoff must lie in [0, 4096]");
  if (grid < 2) fail("--grid must be at least 2");
  if (points < 3) fail("--points must be at least 3");
  if (threads < 1) fail("--threads must be at least 1");
  if (su11_case != "k0" && su11_case != "k2" && su11_case != "parabolic") fail("--case must be k0, k2 or parabolic");
  if (!system.empty() && system != "h4" && system != "su2" && system != "su11") fail("--system must be h4, su2 or su11");
  for (const auto& f : formats)
    if (f != "csv" && f != "json" && f != "pgm") fail("--format accepts csv, json, pgm");
  if (command == "scaled-ellipse" && m && *m == 0) fail("scaled-ellipse needs --m >= 1");
}

bool RunConfig::wants(const std::string& format) const {
  return std::find(formats.begin(), formats.end(), format) != formats.end();
}

bool Report::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

void Report::expect_near(const std::string& name, double value, double target, double tolerance) {
  checks.push_back({name, value, target, tolerance, std::abs(value - target) <= tolerance});
}

void Report::expect_below(const std::string& name, double value, double bound) {
  checks.push_back({name, value, bound, 0.0, value <= bound});
}

void Report::expect_above(const std::string& name, double value, double bound) {
  checks.push_back({name, value, bound, 0.0, value >= bound});
}

// ---------------------------------------------------------------------------

Report cmd_fock_circle(const RunConfig& cfg) {
  Report r;
  r.command = "fock-circle";
  const int m = cfg.m.value_or(2);
  const double in_phase = std::sqrt(2.0 * m);
  double r0 = cfg.r0.value_or(in_phase);
  const int nodes = cfg.nodes > 0 ? cfg.nodes : 512;
  const int cutoff = cfg.cutoff > 0 ? cfg.cutoff : default_h4_cutoff(std::max<double>(m, r0 * r0 / 2.0));
  const CSSystem h4 = CSSystem::h4(cutoff);
  r.summary["m"] = m;
  r.summary["nodes"] = nodes;
  r.summary["cutoff"] = cutoff;

  std::optional<OrbitSpec> orbit;
  try {
    orbit = OrbitSpec::closed(h4, GeneratorSpec::n(), PhasePoint::plane(r0, 0.0));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::FixedPoint) throw;
    r.summary["fixed_point_refusal"] = e.what();
    // Any circle carries the eigenstate; fall back to the unit circle.
    r0 = 1.0;
    orbit = OrbitSpec::closed(h4, GeneratorSpec::n(), PhasePoint::plane(r0, 0.0));
  }
  r.summary["r0"] = r0;
  r.summary["in_phase_r0"] = in_phase;

  const EigenstateResult res = build_eigenstate(make_plan(*orbit, m, nodes));
  const double fid = res.null_state ? 0.0 : fidelity(res.state, m);
  r.summary["fidelity"] = fid;
  r.summary["residual"] = res.residual;
  r.summary["raw_norm"] = res.raw_norm;
  r.expect_above("fidelity to Fock state", fid, 1.0 - 1e-8);
  r.expect_below("quantization defect", res.quantization->defect, 1e-8);
  r.expect_near("Pancharatnam total / 2pi", res.quantization->pancharatnam_total / (2.0 * pi), m, 1e-8);

  if (m > 0) {
    const double step = 1e-3;
    const auto grid = arange(0.05, 2.0 * in_phase + 2.0, step);
    const NormalizationScan scan = normalization_scan(h4, GeneratorSpec::n(), m, grid);
    Table t{"normalization", {"r0", "N"}, {}};
    for (std::size_t i = 0; i < grid.size(); i += 10) t.rows.push_back({scan.parameter[i], scan.normalization[i]});
    r.tables.push_back(t);
    r.summary["normalization_argmin"] = scan.argmin;
    r.expect_near("normalization argmin r0", scan.argmin, in_phase, step);
  }

  Table q{"quantization", {"t0", "pancharatnam_total", "nearest_2pi_multiple", "defect"}, {}};
  for (double t0 : arange(0.0, m + 2.0, 0.25)) {
    const Quantization qc = quantization_check(*orbit, t0);
    q.rows.push_back({t0, qc.pancharatnam_total, qc.nearest_2pi_multiple, qc.defect});
  }
  r.tables.push_back(q);

  if (!res.null_state) {
    const double hi = 2.0 * in_phase + 2.0;
    auto profile = [&](double rho) { return q_value(h4, res.state, PhasePoint::plane(rho, 0.0)); };
    Table rad{"radial_q", {"r", "Q_raw"}, {}};
    for (double rho : linspace(0.0, hi, 201)) rad.rows.push_back({rho, profile(rho)});
    r.tables.push_back(rad);
    const Maximum mx = locate_q_max_1d(profile, {0.0, hi}, 1e-8);
    r.summary["q_argmax_r"] = mx.arg;
    r.expect_near("radial Q argmax", mx.arg, in_phase, 1e-3);
  }

  add_null_law(r, h4, cfg.t0.value_or(1.3));
  return r;
}

Report cmd_ellipse_naive(const RunConfig& cfg) {
  Report r;
  r.command = "ellipse-naive";
  const double a = 2.0, b = 1.0;
  const int n = cfg.points;
  const CSSystem h4 = CSSystem::h4(cfg.cutoff > 0 ? cfg.cutoff : 64);
  r.summary["a"] = a;
  r.summary["b"] = b;
  r.summary["states"] = n;
  r.summary["enclosed_area"] = pi * a * b;
  r.summary["spacing"] = "equal arc length";

  const EllipseSuperposition e = ellipse_in_phase_superposition(h4, a, b, n);
  auto profile = [&](const StateVector& st) {
    return [&h4, &st](double q) { return q_value(h4, st, PhasePoint::plane(q, 0.0)); };
  };
  const Maximum right = locate_q_max_1d(profile(e.state), {0.05, 3.9}, 1e-8);
  const Maximum left = locate_q_max_1d(profile(e.state), {-3.9, -0.05}, 1e-8);
  r.summary["section_maxima"] = {left.arg, right.arg};
  r.expect_near("right maximum |q|", std::abs(right.arg), 1.613, 0.005);
  r.expect_near("left maximum |q|", std::abs(left.arg), 1.613, 0.005);
  r.expect_below("right maximum inside ellipse", std::abs(right.arg), a - 1e-6);
  r.expect_below("left maximum inside ellipse", std::abs(left.arg), a - 1e-6);

  const EllipseSuperposition fine = ellipse_in_phase_superposition(h4, a, b, 2 * n);
  const Maximum right2 = locate_q_max_1d(profile(fine.state), {0.05, 3.9}, 1e-8);
  r.summary["refined_maximum"] = right2.arg;
  r.expect_near("maximum stable under doubling", right2.arg, right.arg, 1e-3);

  Table section{"section_p0", {"q", "Q"}, {}};
  for (double q : linspace(-4.0, 4.0, 801)) section.rows.push_back({q, profile(e.state)(q) / (2.0 * pi)});
  r.tables.push_back(section);
  Table markers{"ellipse_points", {"index", "q", "p", "ellipse_residual"}, {}};
  for (std::size_t i = 0; i < e.points.size(); ++i) {
    const auto& c = e.points[i].as_plane();
    markers.rows.push_back({static_cast<long long>(i), c.q, c.p, c.q * c.q / (a * a) + c.p * c.p / (b * b) - 1.0});
  }
  r.tables.push_back(markers);
  r.heatmaps.push_back({"q_field", q_grid(h4, e.state, square_grid(Manifold::Plane, 4.0, cfg.grid),
                                          MeasureConvention::H4Normalized, cfg.threads),
                        "grid [-4,4]^2 and min-max scaling are a fixed choice"});
  return r;
}

Report cmd_scaled_ellipse(const RunConfig& cfg) {
  Report r;
  r.command = "scaled-ellipse";
  const int n = cfg.m.value_or(1);
  const double s = cfg.s;
  const CSSystem sys = CSSystem::h4_scaled(s, cfg.cutoff > 0 ? cfg.cutoff : 64);
  r.summary["n"] = n;
  r.summary["s"] = s;
  const OrbitSpec orbit = in_phase_orbit(sys, GeneratorSpec::ns(), n);
  const EigenstateResult res = build_eigenstate(make_plan(orbit, n, cfg.nodes));
  r.summary["seed_q"] = orbit.seed().as_plane().q;
  r.expect_above("fidelity to scaled Fock state", fidelity(res.state, n), 1.0 - 1e-8);
  r.expect_below("Q invariance along the orbit", orbit_q_invariance(sys, res.state, orbit, 64), 1e-10);

  Table rays{"ray_maxima", {"angle", "rho_max", "rho_ellipse", "error"}, {}};
  for (int i = 0; i < 12; ++i) {
    const double al = pi * i / 12.0;
    const double c = std::cos(al), sn = std::sin(al);
    const double expected = std::sqrt(2.0 * n / (s * s * c * c + sn * sn / (s * s)));
    auto profile = [&](double rho) { return q_value(sys, res.state, PhasePoint::plane(rho * c, rho * sn)); };
    const Maximum mx = locate_q_max_1d(profile, {0.05, 3.0 * expected}, 1e-8);
    rays.rows.push_back({al, mx.arg, expected, mx.arg - expected});
    r.expect_near("ray maximum on ellipse, angle " + std::to_string(i) + "pi/12", mx.arg, expected, 1e-3);
  }
  r.tables.push_back(rays);
  r.heatmaps.push_back({"q_field", q_grid(sys, res.state, square_grid(Manifold::Plane, 4.0, cfg.grid),
                                          MeasureConvention::H4Normalized, cfg.threads),
                        "grid [-4,4]^2 and min-max scaling are a fixed choice"});
  return r;
}

Report cmd_su2_latitudes(const RunConfig& cfg) {
  Report r;
  r.command = "su2-latitudes";
  const double j = cfg.j;
  const CSSystem sys = CSSystem::su2(j);
  r.summary["j"] = j;
  Table t{"latitudes", {"m", "theta0", "degenerate", "fidelity", "q_argmax_theta", "defect", "offset_probe_defect"}, {}};
  Table poly{"latitude_polylines", {"m", "phi", "x", "y", "z"}, {}};
  const int dim = sys.dimension();
  for (int p = 0; p < dim; ++p) {
    const double m = j - p;
    const double theta0 = std::acos(std::clamp(m / j, -1.0, 1.0));
    const InPhaseSeed seed = in_phase_seed(sys, GeneratorSpec::jz(), m);
    if (seed.fixed_point) {
      // The pole coherent state is already the extremal eigenstate.
      const double fid = fidelity(cs_coefficients(sys, seed.point), p);
      t.rows.push_back({m, theta0, 1LL, fid, theta0, 0.0, NAN});
      r.expect_above("pole state fidelity, m=" + std::to_string(m), fid, 1.0 - 1e-12);
      continue;
    }
    const OrbitSpec orbit = in_phase_orbit(sys, GeneratorSpec::jz(), m);
    const EigenstateResult res = build_eigenstate(make_plan(orbit, m, cfg.nodes));
    const double fid = fidelity(res.state, p);
    auto profile = [&](double th) { return q_value(sys, res.state, PhasePoint::sphere(th, 0.0)); };
    const Maximum mx = locate_q_max_1d(profile, {1e-9, pi - 1e-9}, 1e-9);
    const double probe = quantization_check(orbit, m + 0.5).defect;
    t.rows.push_back({m, theta0, 0LL, fid, mx.arg, res.quantization->defect, probe});
    const std::string tag = ", m=" + std::to_string(m);
    r.expect_above("fidelity" + tag, fid, 1.0 - 1e-8);
    r.expect_near("Q theta argmax" + tag, mx.arg, theta0, 1e-3);
    r.expect_below("quantization defect" + tag, res.quantization->defect, 1e-8);
    r.expect_above("off-integer probe defect" + tag, probe, 0.1);
    for (const auto& node : orbit_points(orbit, 64)) {
      const auto v = node.point.bloch();
      poly.rows.push_back({m, node.point.as_sphere().phi, v[0], v[1], v[2]});
    }
  }
  r.tables.push_back(t);
  r.tables.push_back(poly);
  return r;
}

Report cmd_su11(const RunConfig& cfg) {
  Report r;
  r.command = "su11";
  const double k = cfg.k;
  r.summary["k"] = k;
  r.summary["case"] = cfg.su11_case;
  GridSpec grid = square_grid(Manifold::Disk, 1.0, cfg.grid);

  if (cfg.su11_case == "k0") {
    int m = cfg.m.value_or(2);
    if (cfg.t0) {
      const double level = *cfg.t0 - k;
      if (level < 0.0 || std::abs(level - std::round(level)) > 1e-12)
        throw Error(ErrorCode::OutOfRange, "K0 eigenvalues are k + m with integer m >= 0");
      m = static_cast<int>(std::lround(level));
    }
    const double t0 = k + m;
    const double r_in = std::acosh(t0 / k);
    const int cutoff = cfg.cutoff > 0 ? cfg.cutoff : std::max(256, default_su11_cutoff(k, std::tanh(r_in / 2.0)));
    const CSSystem sys = CSSystem::su11(k, cutoff);
    r.summary["m"] = m;
    r.summary["t0"] = t0;
    r.summary["cutoff"] = cutoff;
    r.summary["in_phase_R"] = r_in;
    StateVector state{sys, {}, false};
    if (m == 0) {
      r.summary["degenerate"] = "in-phase orbit is the fixed point at the origin";
      state = cs_coefficients(sys, PhasePoint::disk(0.0));
    } else {
      const EigenstateResult res = build_eigenstate(make_plan(in_phase_orbit(sys, GeneratorSpec::k0(), t0), t0, cfg.nodes));
      r.summary["residual"] = res.residual;
      r.expect_below("quantization defect", res.quantization->defect, 1e-8);
      state = res.state;
    }
    r.expect_above("fidelity to |k,m>", fidelity(state, m), 1.0 - 1e-8);
    auto profile = [&](double R) { return q_value(sys, state, PhasePoint::disk_polar(R, 0.0)); };
    const double hi = std::max(3.0, 2.0 * r_in + 2.0);
    Table prof{"radial_q", {"R", "Q"}, {}};
    for (double R : linspace(0.0, hi, 201)) prof.rows.push_back({R, profile(R)});
    r.tables.push_back(prof);
    const Maximum mx = locate_q_max_1d(profile, {0.0, hi}, 1e-9);
    r.summary["q_argmax_R"] = mx.arg;
    r.expect_near("Q argmax R", mx.arg, r_in, 1e-3);
    if (m > 0) {
      const double step = 1e-3;
      const NormalizationScan scan = normalization_scan(sys, GeneratorSpec::k0(), m, arange(step, hi, step));
      r.summary["normalization_argmin"] = scan.argmin;
      r.expect_near("normalization argmin R", scan.argmin, r_in, step);
    }
    r.heatmaps.push_back({"q_field", q_grid(sys, state, grid, MeasureConvention::Raw, cfg.threads),
                          "Cartesian disk coordinates, |zeta| >= 1 masked"});
    return r;
  }

  const bool hyperbolic = cfg.su11_case == "k2";
  const GeneratorSpec gen = hyperbolic ? GeneratorSpec::k2() : GeneratorSpec::k0_plus_k1();
  const double t0 = cfg.t0.value_or(2.0);
  const CSSystem sys = CSSystem::su11(k, cfg.cutoff > 0 ? cfg.cutoff : 512);
  const OrbitSpec orbit = in_phase_orbit(sys, gen, t0);
  const SuperpositionPlan plan = make_plan(orbit, t0, cfg.nodes);
  const EigenstateResult res = build_eigenstate(plan);
  const double tau0 = hyperbolic ? std::asinh(-t0 / k) : std::log(t0 / k);
  const double expected = std::tanh(tau0 / 2.0);
  r.summary["t0"] = t0;
  r.summary["cutoff"] = sys.cutoff();
  r.summary["window"] = orbit.chi_max();
  r.summary["nodes"] = plan.nodes;
  r.summary["tau0"] = tau0;
  r.summary["residual"] = res.residual;
  r.expect_below("eigen-residual", res.residual, 1e-4);

  auto profile = [&](double u) {
    return q_value(sys, res.state, PhasePoint::disk(hyperbolic ? cplx(0.0, u) : cplx(u, 0.0)));
  };
  Table sec{hyperbolic ? "section_y" : "section_x", {"coordinate", "Q"}, {}};
  for (double u : linspace(-0.99, 0.99, 397)) sec.rows.push_back({u, profile(u)});
  r.tables.push_back(sec);
  const Maximum mx = locate_q_max_1d(profile, {-0.95, 0.95}, 1e-9);
  r.summary["section_argmax"] = mx.arg;
  r.summary["expected_argmax"] = expected;
  r.expect_near(hyperbolic ? "y-axis Q argmax" : "x-axis Q argmax", mx.arg, expected, 1e-2);

  const OrbitSpec core = OrbitSpec::open(sys, gen, orbit.seed(), -2.0, 2.0);
  const double dev = orbit_q_invariance(sys, res.state, core, 41);
  r.summary["q_invariance_central_orbit"] = dev;
  r.expect_below("Q invariance on the central orbit", dev, 1e-6);
  r.heatmaps.push_back({"q_field", q_grid(sys, res.state, grid, MeasureConvention::Raw, cfg.threads),
                        "Cartesian disk coordinates, |zeta| >= 1 masked"});
  return r;
}

Report cmd_phases(const RunConfig& cfg) {
  Report r;
  r.command = "phases";
  const int n = cfg.nodes > 0 ? cfg.nodes : 256;
  struct Preset {
    std::string name;
    std::string system;
    std::function<StateCurve(int)> curve;
    double analytic;
  };
  std::vector<Preset> presets;
  // Clockwise oscillator circle of radius 2.
  presets.push_back({"h4-circle-clockwise", "h4",
                     [](int samples) {
                       const CSSystem sys = CSSystem::h4(64);
                       StateCurve c;
                       c.closed = true;
                       for (int i = 0; i <= samples; ++i) {
                         const double th = 2.0 * pi * i / samples;
                         c.samples.push_back({th, cs_coefficients(sys, PhasePoint::plane(2.0 * std::cos(th), -2.0 * std::sin(th)))});
                       }
                       return c;
                     },
                     4.0 * pi});
  presets.push_back({"su2-latitude-anticlockwise", "su2",
                     [](int samples) {
                       const CSSystem sys = CSSystem::su2(2.0);
                       StateCurve c;
                       c.closed = true;
                       for (int i = 0; i <= samples; ++i) {
                         const double ph = 2.0 * pi * i / samples;
                         c.samples.push_back({ph, cs_coefficients(sys, PhasePoint::sphere(pi / 3.0, ph))});
                       }
                       return c;
                     },
                     -2.0 * pi});
  presets.push_back({"su11-circle-anticlockwise", "su11",
                     [](int samples) {
                       const CSSystem sys = CSSystem::su11(3.0, 128);
                       StateCurve c;
                       c.closed = true;
                       for (int i = 0; i <= samples; ++i) {
                         const double ph = 2.0 * pi * i / samples;
                         c.samples.push_back({ph, cs_coefficients(sys, PhasePoint::disk_polar(1.0, ph))});
                       }
                       return c;
                     },
                     -3.0 * 2.0 * pi * (std::cosh(1.0) - 1.0)});

  Table t{"phases",
          {"preset", "samples", "pancharatnam", "dynamical", "geometric", "analytic", "error", "refined", "refined_error"},
          {}};
  for (const auto& p : presets) {
    if (!cfg.system.empty() && cfg.system != p.system) continue;
    const PhaseReport rep = geometric_phase(p.curve(n));
    const RefinedPhase ref = refined_geometric_phase(p.curve, {n, 2 * n, 4 * n, 8 * n});
    t.rows.push_back({p.name, static_cast<long long>(n), rep.pancharatnam, rep.dynamical, rep.geometric, p.analytic,
                      rep.geometric - p.analytic, ref.value, ref.value - p.analytic});
    const double h = 2.0 * pi / n;
    r.expect_near(p.name + " geometric phase, O(h^2)", rep.geometric, p.analytic, 4.0 * h * h * std::max(1.0, std::abs(p.analytic)));
    r.expect_near(p.name + " refined geometric phase", ref.value, p.analytic, 1e-8);
  }
  r.tables.push_back(t);
  return r;
}

Report run_command(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.command == "fock-circle") return cmd_fock_circle(cfg);
  if (cfg.command == "ellipse-naive") return cmd_ellipse_naive(cfg);
  if (cfg.command == "scaled-ellipse") return cmd_scaled_ellipse(cfg);
  if (cfg.command == "su2-latitudes") return cmd_su2_latitudes(cfg);
  if (cfg.command == "su11") return cmd_su11(cfg);
  return cmd_phases(cfg);
}

}  // namespace cspace::cli
