#include "cspace/qscope.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

namespace cspace {

std::optional<PhasePoint> GridSpec::point(int i, int j) const {
  const double x = this->x(i);
  const double y = this->y(j);
  switch (manifold) {
    case Manifold::Plane: return PhasePoint::plane(x, y);
    case Manifold::Sphere: return PhasePoint::sphere(x, y);
    case Manifold::Disk:
      if (std::hypot(x, y) >= 1.0 - 1e-9) return std::nullopt;
      return PhasePoint::disk(cplx(x, y));
    default: throw Error(ErrorCode::ManifoldMismatch, "grids cover the plane, sphere or disk");
  }
}

void GridSpec::validate() const {
  if (nx < 2 || ny < 2) throw Error(ErrorCode::InvalidArgument, "grid needs at least 2 nodes per axis");
  if (!(x_max > x_min) || !(y_max > y_min)) throw Error(ErrorCode::InvalidArgument, "empty grid range");
}

double q_value(const CSSystem& system, const StateVector& state, const PhasePoint& point) {
  if (!(state.system == system)) throw Error(ErrorCode::ManifoldMismatch, "state belongs to another system");
  if (!state.is_normalized(1e-9)) throw Error(ErrorCode::InvalidArgument, "Q function needs a normalized state");
  return std::norm(cs_coefficients(system, point).coeffs.dot(state.coeffs));
}

QField q_grid(const CSSystem& system, const StateVector& state, const GridSpec& grid, MeasureConvention convention,
              int threads) {
  grid.validate();
  if (grid.manifold != system.manifold()) throw Error(ErrorCode::ManifoldMismatch, "grid and system manifolds differ");
  if (convention == MeasureConvention::H4Normalized && system.manifold() != Manifold::Plane)
    throw Error(ErrorCode::InvalidArgument, "the 1/2pi convention applies to oscillator fields only");
  if (!state.is_normalized(1e-9)) throw Error(ErrorCode::InvalidArgument, "Q function needs a normalized state");
  QField field{grid, Eigen::MatrixXd::Zero(grid.ny, grid.nx),
               Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(grid.ny, grid.nx, true), convention};
  const double scale = convention == MeasureConvention::H4Normalized ? 0.5 / std::numbers::pi : 1.0;

  auto rows = [&](int first, int stride) {
    for (int j = first; j < grid.ny; j += stride)
      for (int i = 0; i < grid.nx; ++i) {
        const auto p = grid.point(i, j);
        if (!p) {
          field.mask(j, i) = false;
          continue;
        }
        field.values(j, i) = scale * std::norm(cs_coefficients(system, *p).coeffs.dot(state.coeffs));
      }
  };
  const int n = std::clamp(threads, 1, grid.ny);
  if (n == 1) {
    rows(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n; ++t) pool.emplace_back(rows, t, n);
    for (auto& th : pool) th.join();
  }
  return field;
}

Maximum locate_q_max_1d(const std::function<double(double)>& profile, std::pair<double, double> bracket, double tol) {
  auto [lo, hi] = bracket;
  if (!(hi > lo)) throw Error(ErrorCode::InvalidArgument, "empty bracket");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");

  constexpr int kScan = 64;
  std::vector<double> xs(kScan), fs(kScan);
  for (int i = 0; i < kScan; ++i) {
    xs[i] = lo + (hi - lo) * i / (kScan - 1);
    fs[i] = profile(xs[i]);
  }
  // Local maxima of the scan with their topographic prominence: the drop to
  // the highest col separating them from higher ground.
  std::vector<int> peaks;
  for (int i = 0; i < kScan; ++i) {
    const bool left = i == 0 || fs[i] > fs[i - 1];
    const bool right = i == kScan - 1 || fs[i] >= fs[i + 1];
    if (!(left && right)) continue;
    double lmin = fs[i], rmin = fs[i];
    int k = i - 1;
    for (; k >= 0 && fs[k] <= fs[i]; --k) lmin = std::min(lmin, fs[k]);
    const bool higher_left = k >= 0;
    k = i + 1;
    for (; k < kScan && fs[k] <= fs[i]; ++k) rmin = std::min(rmin, fs[k]);
    const bool higher_right = k < kScan;
    double col;
    if (!higher_left && !higher_right) {
      col = std::min(lmin, rmin);
    } else {
      col = -INFINITY;
      if (higher_left) col = std::max(col, lmin);
      if (higher_right) col = std::max(col, rmin);
    }
    if (fs[i] - col > 1e-9) peaks.push_back(i);
  }
  if (peaks.size() >= 2) {
    std::vector<Maximum> found;
    for (int i : peaks) found.push_back({xs[i], fs[i]});
    throw NotUnimodalError(std::move(found));
  }
  const int best = peaks.empty() ? static_cast<int>(std::max_element(fs.begin(), fs.end()) - fs.begin()) : peaks[0];
  double a = xs[std::max(0, best - 1)];
  double b = xs[std::min(kScan - 1, best + 1)];

  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = profile(c), fd = profile(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = profile(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = profile(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, profile(x)};
}

double orbit_q_invariance(const CSSystem& system, const StateVector& state, const OrbitSpec& orbit, int n) {
  const auto nodes = orbit_points(orbit, n);
  const double q0 = q_value(system, state, nodes.front().point);
  double dev = 0.0;
  for (const auto& node : nodes) dev = std::max(dev, std::abs(q_value(system, state, node.point) - q0));
  return dev;
}

}  // namespace cspace
