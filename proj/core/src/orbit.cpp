#include "cspace/orbit.hpp"

#include <algorithm>
#include <cmath>

#include "cspace/phase.hpp"

namespace cspace {

using std::numbers::pi;

namespace {

constexpr double kClosureTol = 1e-10;
constexpr int kDefaultClosedNodes = 512;
constexpr int kMinOpenNodes = 2001;
constexpr double kOpenSpacing = 0.1;

bool moves(const CSSystem& system, const GeneratorSpec& gen, const PhasePoint& seed, double chi) {
  return point_distance(group_action(system, gen, chi, seed).point, seed) > 1e-12;
}

// Eigenvalue of each basis vector when `gen` is diagonal in the basis.
std::optional<Eigen::VectorXd> diagonal_spectrum(const CSSystem& system, const GeneratorSpec& gen) {
  const int dim = system.dimension();
  Eigen::VectorXd ev(dim);
  switch (gen.kind()) {
    case GeneratorKind::N:
    case GeneratorKind::Ns:
      for (int n = 0; n < dim; ++n) ev[n] = n;
      return ev;
    case GeneratorKind::Ntotal:
      for (int n = 0; n < dim; ++n) ev[n] = n / system.cutoff() + n % system.cutoff();
      return ev;
    case GeneratorKind::Jz:
      for (int p = 0; p < dim; ++p) ev[p] = system.spin() - p;
      return ev;
    case GeneratorKind::K0:
      for (int m = 0; m < dim; ++m) ev[m] = system.bargmann_index() + m;
      return ev;
    default: return std::nullopt;
  }
}

// Nodes per period.  A component of the seed is aliased onto t0 only when
// (lambda - t0) is close to a multiple of the sampling frequency; components
// with non-integer detuning are suppressed by the winding average instead.
// The node count is doubled until every near-integer detuned component with
// weight above 1e-20 of the peak lies inside one sampling band.
int nodes_per_period(const OrbitSpec& orbit, double t0) {
  const auto& sys = orbit.system();
  const double freq = orbit.period() / (2.0 * pi);
  double reach = 0.0;
  if (auto ev = diagonal_spectrum(sys, orbit.generator())) {
    const Eigen::VectorXd w = cs_coefficients(sys, orbit.seed()).coeffs.cwiseAbs2();
    const double peak = w.maxCoeff();
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      const double d = ((*ev)[i] - t0) * freq;
      if (w[i] >= 1e-20 * peak && std::abs(d - std::round(d)) < 0.05) reach = std::max(reach, std::abs(d));
    }
  } else {
    reach = (2.0 * sys.spin() + std::abs(t0)) * freq;
  }
  int m = 16;
  while (m <= reach) m *= 2;
  return m;
}

bool couples_neighbours(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::Q:
    case GeneratorKind::P:
    case GeneratorKind::K1:
    case GeneratorKind::K2:
    case GeneratorKind::K0plusK1:
    case GeneratorKind::K0plusK2: return true;
    default: return false;
  }
}

double residual_of(const CSSystem& system, const GeneratorSpec& gen, double t0, const Eigen::VectorXcd& psi) {
  const double n = psi.norm();
  if (!(n > 0.0)) return 0.0;
  Eigen::VectorXcd r = generator_matrix(system, gen) * psi - t0 * psi;
  // The last row of a tridiagonal generator needs the first dropped coefficient.
  const Eigen::Index rows = couples_neighbours(gen.kind()) && system.kind() != SystemKind::SU2 ? r.size() - 1 : r.size();
  return r.head(rows).norm() / n;
}

std::array<double, 3> unit_perpendicular(const std::array<double, 3>& n) {
  // Cross with the coordinate axis least aligned with n.
  std::array<double, 3> e{0.0, 0.0, 0.0};
  const int i = std::abs(n[0]) <= std::abs(n[1]) && std::abs(n[0]) <= std::abs(n[2]) ? 0 : (std::abs(n[1]) <= std::abs(n[2]) ? 1 : 2);
  e[i] = 1.0;
  std::array<double, 3> c{n[1] * e[2] - n[2] * e[1], n[2] * e[0] - n[0] * e[2], n[0] * e[1] - n[1] * e[0]};
  const double len = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
  for (auto& x : c) x /= len;
  return c;
}

void require_range(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::OutOfRange, what);
}

}  // namespace

OrbitSpec OrbitSpec::closed(const CSSystem& system, const GeneratorSpec& gen, const PhasePoint& seed, double period) {
  require_compatible(system, gen);
  require_manifold(system, seed);
  if (!(period > 0.0)) throw Error(ErrorCode::InvalidArgument, "period must be positive");
  if (!moves(system, gen, seed, 0.381966 * period) && !moves(system, gen, seed, 0.5 * period))
    throw Error(ErrorCode::FixedPoint, "seed is a fixed point of the generator");
  if (point_distance(group_action(system, gen, period, seed).point, seed) > kClosureTol)
    throw Error(ErrorCode::InvalidArgument, "orbit does not close after the given period");
  return OrbitSpec(system, gen, seed, Topology::Closed, 0.0, period);
}

OrbitSpec OrbitSpec::open(const CSSystem& system, const GeneratorSpec& gen, const PhasePoint& seed, double chi_min,
                          double chi_max) {
  require_compatible(system, gen);
  require_manifold(system, seed);
  if (!(chi_max > chi_min)) throw Error(ErrorCode::InvalidArgument, "empty orbit window");
  if (!moves(system, gen, seed, 0.5 * (chi_max - chi_min)))
    throw Error(ErrorCode::FixedPoint, "seed is a fixed point of the generator");
  return OrbitSpec(system, gen, seed, Topology::Open, chi_min, chi_max);
}

OrbitSpec OrbitSpec::with_system(const CSSystem& system) const {
  if (system.kind() != system_.kind()) throw Error(ErrorCode::InvalidArgument, "system kind differs");
  OrbitSpec out = *this;
  out.system_ = system;
  return out;
}

std::vector<OrbitNode> orbit_points(const OrbitSpec& spec, int n) {
  if (n < 3) throw Error(ErrorCode::TooFewSamples, "orbit_points needs n >= 3");
  std::vector<OrbitNode> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double chi = spec.is_closed() ? spec.chi_min() + spec.period() * i / n
                                        : spec.chi_min() + (spec.chi_max() - spec.chi_min()) * i / (n - 1);
    const GroupAction g = group_action(spec.system(), spec.generator(), chi, spec.seed());
    out.push_back({chi, g.point, g.phase});
  }
  return out;
}

InPhaseSeed in_phase_seed(const CSSystem& system, const GeneratorSpec& gen, double t0) {
  require_compatible(system, gen);
  if (!std::isfinite(t0)) throw Error(ErrorCode::OutOfRange, "target must be finite");
  InPhaseSeed s{PhasePoint::plane(0.0, 0.0)};
  switch (gen.kind()) {
    case GeneratorKind::Q: s.point = PhasePoint::plane(t0, 0.0); break;
    case GeneratorKind::P: s.point = PhasePoint::plane(0.0, t0); break;
    case GeneratorKind::N:
      require_range(t0 >= 0.0, "number eigenvalue must lie in [0, inf)");
      s.point = PhasePoint::plane(std::sqrt(2.0 * t0), 0.0);
      s.fixed_point = t0 == 0.0;
      break;
    case GeneratorKind::Ns:
      require_range(t0 >= 0.0, "number eigenvalue must lie in [0, inf)");
      s.point = PhasePoint::plane(std::sqrt(2.0 * t0) / system.scale(), 0.0);
      s.fixed_point = t0 == 0.0;
      break;
    case GeneratorKind::Ntotal:
      require_range(t0 >= 0.0, "number eigenvalue must lie in [0, inf)");
      s.point = PhasePoint::two_mode(std::sqrt(2.0 * t0), 0.0, 0.0, 0.0);
      s.fixed_point = t0 == 0.0;
      s.degenerate_family = t0 > 0.0;
      break;
    case GeneratorKind::Jz:
    case GeneratorKind::Jn: {
      const double j = system.spin();
      require_range(std::abs(t0) <= j, "spin projection must lie in [-j, j]");
      const double th = std::acos(std::clamp(t0 / j, -1.0, 1.0));
      s.fixed_point = std::abs(std::abs(t0) - j) < 1e-15;
      if (gen.kind() == GeneratorKind::Jz) {
        s.point = PhasePoint::sphere(th, 0.0);
      } else {
        const auto& n = gen.axis();
        const auto e = unit_perpendicular(n);
        std::array<double, 3> v;
        for (int i = 0; i < 3; ++i) v[i] = std::cos(th) * n[i] + std::sin(th) * e[i];
        s.point = PhasePoint::sphere(std::acos(std::clamp(v[2], -1.0, 1.0)), std::atan2(v[1], v[0]));
      }
      break;
    }
    case GeneratorKind::K0: {
      const double k = system.bargmann_index();
      require_range(t0 >= k, "K0 expectation must lie in [k, inf)");
      const double r = std::acosh(t0 / k);
      s.point = PhasePoint::disk(std::tanh(r / 2.0));
      s.fixed_point = t0 == k;
      break;
    }
    case GeneratorKind::K1: s.point = PhasePoint::disk(std::tanh(std::asinh(t0 / system.bargmann_index()) / 2.0)); break;
    case GeneratorKind::K2:
      s.point = PhasePoint::disk(cplx(0.0, std::tanh(std::asinh(-t0 / system.bargmann_index()) / 2.0)));
      break;
    case GeneratorKind::K0plusK1:
    case GeneratorKind::K0plusK2: {
      require_range(t0 > 0.0, "parabolic expectation must lie in (0, inf)");
      const double t = std::tanh(std::log(t0 / system.bargmann_index()) / 2.0);
      s.point = PhasePoint::disk(gen.kind() == GeneratorKind::K0plusK1 ? cplx(t, 0.0) : cplx(0.0, -t));
      break;
    }
  }
  return s;
}

double open_window_half_width(const CSSystem& system, const GeneratorSpec& gen, const PhasePoint& seed) {
  for (double w = 8.0; w <= 4096.0; w *= 2.0) {
    const double lo = cs_coefficients(system, group_action(system, gen, -w, seed).point).norm();
    const double hi = cs_coefficients(system, group_action(system, gen, w, seed).point).norm();
    if (lo <= 1e-10 && hi <= 1e-10) return w;
  }
  throw Error(ErrorCode::TruncationInadequate, "orbit does not leave the truncated basis within |chi| <= 4096");
}

OrbitSpec in_phase_orbit(const CSSystem& system, const GeneratorSpec& gen, double t0) {
  const InPhaseSeed s = in_phase_seed(system, gen, t0);
  if (s.fixed_point) throw Error(ErrorCode::FixedPoint, "in-phase orbit degenerates to a fixed point");
  if (gen.has_closed_orbits()) return OrbitSpec::closed(system, gen, s.point);
  const double w = open_window_half_width(system, gen, s.point);
  return OrbitSpec::open(system, gen, s.point, -w, w);
}

SuperpositionPlan make_plan(const OrbitSpec& orbit, double t0, int nodes, double offset) {
  SuperpositionPlan plan{orbit, t0, 0, 0, {}, {}};
  if (orbit.is_closed()) {
    if (nodes <= 0) nodes = kDefaultClosedNodes;
    if (nodes < 3) throw Error(ErrorCode::TooFewSamples, "closed plan needs at least 3 nodes");
    const int m = std::min(nodes_per_period(orbit, t0), nodes);
    const int windings = std::max(1, nodes / m);
    const int total = m * windings;
    const double h = orbit.period() / m;
    const double span = windings * orbit.period();
    const double centre = offset + 0.5 * span;
    // Edge weight exp(-windings/2) keeps shrinking as windings grow.
    const double sigma = span / (2.0 * std::sqrt(static_cast<double>(windings)));
    std::vector<double> g(total, 1.0);
    if (windings > 1)
      for (int i = 0; i < total; ++i) {
        const double x = (offset + i * h + 0.5 * h - centre) / sigma;
        g[i] = std::exp(-0.5 * x * x);
      }
    std::vector<double> class_sum(m, 0.0);
    for (int i = 0; i < total; ++i) class_sum[i % m] += g[i];
    plan.nodes = total;
    plan.nodes_per_period = m;
    plan.chi.resize(total);
    plan.weights.resize(total);
    for (int i = 0; i < total; ++i) {
      plan.chi[i] = offset + i * h;
      plan.weights[i] = (h * g[i] / class_sum[i % m]) * std::polar(1.0, t0 * plan.chi[i]);
    }
    return plan;
  }
  const double width = orbit.chi_max() - orbit.chi_min();
  if (nodes <= 0) {
    nodes = std::max(kMinOpenNodes, static_cast<int>(std::ceil(width / kOpenSpacing)) + 1);
    if (nodes % 2 == 0) ++nodes;
  }
  if (nodes < 3) throw Error(ErrorCode::TooFewSamples, "open plan needs at least 3 nodes");
  const double h = width / (nodes - 1);
  plan.nodes = nodes;
  plan.chi.resize(nodes);
  plan.weights.resize(nodes);
  for (int i = 0; i < nodes; ++i) {
    plan.chi[i] = orbit.chi_min() + i * h;
    const double w = (i == 0 || i == nodes - 1) ? 0.5 * h : h;
    plan.weights[i] = w * std::polar(1.0, t0 * plan.chi[i]);
  }
  return plan;
}

EigenstateResult build_eigenstate(const SuperpositionPlan& plan) {
  const OrbitSpec& orbit = plan.orbit;
  const CSSystem& sys = orbit.system();
  Eigen::VectorXcd raw = Eigen::VectorXcd::Zero(sys.dimension());
  bool truncated = false;
  double node_norm = 0.0;
  for (std::size_t i = 0; i < plan.chi.size(); ++i) {
    const GroupAction g = group_action(sys, orbit.generator(), plan.chi[i], orbit.seed());
    const StateVector v = cs_coefficients(sys, g.point);
    truncated = truncated || v.truncated;
    node_norm += v.norm();
    raw += (plan.weights[i] * std::polar(1.0, g.phase)) * v.coeffs;
  }
  node_norm /= static_cast<double>(plan.chi.size());

  EigenstateResult out{StateVector{sys, raw, truncated}, 0.0, 0.0, std::nullopt, false};
  const double length = orbit.is_closed() ? orbit.period() : orbit.chi_max() - orbit.chi_min();
  const double n = raw.norm();
  out.raw_norm = n / length;
  out.null_state = !(out.raw_norm > 1e-6 * node_norm);
  if (!out.null_state) {
    out.state.coeffs /= n;
    const double peak = out.state.coeffs.cwiseAbs().maxCoeff();
    if (sys.kind() != SystemKind::SU2 && std::abs(out.state.coeffs[out.state.coeffs.size() - 1]) >= 1e-10 * peak)
      out.state.truncated = true;
  }
  out.residual = residual_of(sys, orbit.generator(), plan.t0, raw);
  if (orbit.is_closed()) out.quantization = quantization_check(orbit, plan.t0, std::max(256, plan.nodes_per_period));
  return out;
}

Quantization quantization_check(const OrbitSpec& orbit, double t0, int nodes) {
  if (!orbit.is_closed()) throw Error(ErrorCode::OpenOrbit, "quantization needs a closed orbit");
  const CSSystem& sys = orbit.system();
  const double period = orbit.period();
  // Exact value modulo 2pi from the endpoint overlap.
  const GroupAction end = group_action(sys, orbit.generator(), period, orbit.seed());
  const double p_mod =
      wrap_phase(t0 * period + end.phase + std::arg(overlap_cs(sys, orbit.seed(), end.point)));
  // The winding comes from the area law: -w * area + period * (t0 - <T>).
  std::vector<PhasePoint> pts;
  for (const auto& node : orbit_points(orbit, std::max(nodes, 16))) pts.push_back(node.point);
  pts.push_back(pts.front());
  const double area = symplectic_area(pts, sys.manifold());
  const double estimate =
      -sys.area_weight() * area + period * (t0 - expectation_generator(sys, orbit.generator(), orbit.seed()));
  const double total = p_mod + 2.0 * pi * std::round((estimate - p_mod) / (2.0 * pi));
  const double nearest = 2.0 * pi * std::round(total / (2.0 * pi));
  return {total, nearest, std::abs(p_mod)};
}

NormalizationScan normalization_scan(const CSSystem& system, const GeneratorSpec& gen, double m,
                                     const std::vector<double>& grid) {
  require_compatible(system, gen);
  if (grid.empty()) throw Error(ErrorCode::InvalidArgument, "empty parameter grid");
  NormalizationScan out{grid, std::vector<double>(grid.size()), grid.front()};
  auto log_n = [&](double x) -> double {
    switch (gen.kind()) {
      case GeneratorKind::N:
      case GeneratorKind::Ns: {
        require_range(m >= 0.0 && m == std::round(m), "Fock index must be a non-negative integer");
        const double s = gen.kind() == GeneratorKind::Ns ? system.scale() : 1.0;
        // |z|^2 = x^2 s^2 / 2 on the orbit through (x, 0).
        const double z = x * s / std::sqrt(2.0);
        return 0.5 * std::lgamma(m + 1.0) - std::log(2.0 * pi) - m * std::log(z) + 0.5 * z * z;
      }
      case GeneratorKind::Jz: {
        const double j = system.spin();
        require_range(std::abs(m) <= j && std::abs(j - m - std::round(j - m)) < 1e-12, "m must be one of -j..j");
        const double lb = std::lgamma(2.0 * j + 1.0) - std::lgamma(j + m + 1.0) - std::lgamma(j - m + 1.0);
        return -(std::log(2.0 * pi) + (j - m) * std::log(std::sin(x / 2.0)) + (j + m) * std::log(std::cos(x / 2.0)) +
                 0.5 * lb);
      }
      case GeneratorKind::K0: {
        const double k = system.bargmann_index();
        require_range(m >= 0.0 && m == std::round(m), "level must be a non-negative integer");
        const double lg = std::lgamma(2.0 * k + m) - std::lgamma(m + 1.0) - std::lgamma(2.0 * k);
        return -(std::log(2.0 * pi) + 0.5 * lg + m * std::log(std::tanh(x / 2.0)) -
                 2.0 * k * std::log(std::cosh(x / 2.0)));
      }
      default: throw Error(ErrorCode::UnsupportedGenerator, "normalization scan needs N, Ns, Jz or K0");
    }
  };
  double best = INFINITY;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double l = log_n(grid[i]);
    out.normalization[i] = std::exp(l);
    if (l < best) {
      best = l;
      out.argmin = grid[i];
    }
  }
  return out;
}

EllipseSuperposition ellipse_in_phase_superposition(const CSSystem& system, double a, double b, int n) {
  if (system.manifold() != Manifold::Plane) throw Error(ErrorCode::ManifoldMismatch, "ellipse lives on the plane");
  if (!(a > 0.0 && b > 0.0)) throw Error(ErrorCode::InvalidArgument, "semi-axes must be positive");
  if (n < 3) throw Error(ErrorCode::TooFewSamples, "ellipse needs at least 3 points");
  // Cumulative arc length on a fine parameter grid, inverted by interpolation.
  const int fine = 4096 * n;
  std::vector<double> s(fine + 1, 0.0);
  auto speed = [&](double t) { return std::hypot(a * std::sin(t), b * std::cos(t)); };
  const double dt = 2.0 * pi / fine;
  for (int i = 0; i < fine; ++i) s[i + 1] = s[i] + dt * (speed(i * dt) + 4.0 * speed((i + 0.5) * dt) + speed((i + 1) * dt)) / 6.0;
  const double length = s.back();

  EllipseSuperposition out{{}, StateVector{system, Eigen::VectorXcd::Zero(system.dimension()), false}};
  double phi = 0.0;
  Eigen::VectorXcd prev;
  for (int i = 0; i < n; ++i) {
    const double target = length * i / n;
    const auto it = std::lower_bound(s.begin(), s.end(), target);
    const std::size_t hi = std::max<std::size_t>(1, static_cast<std::size_t>(it - s.begin()));
    const double f = (target - s[hi - 1]) / (s[hi] - s[hi - 1]);
    const double t = (hi - 1 + f) * dt;
    const PhasePoint p = PhasePoint::plane(a * std::cos(t), b * std::sin(t));
    const StateVector v = cs_coefficients(system, p);
    out.state.truncated = out.state.truncated || v.truncated;
    if (i > 0) phi -= std::arg(prev.dot(v.coeffs));
    out.state.coeffs += std::polar(1.0, phi) * v.coeffs;
    out.points.push_back(p);
    prev = v.coeffs;
  }
  out.state.coeffs.normalize();
  return out;
}

}  // namespace cspace
