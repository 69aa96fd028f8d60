#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "cspace/orbit.hpp"

namespace cspace {

/// Rectangular sampling grid.  Plane: (q, p).  Sphere: (theta, phi).  Disk:
/// Cartesian (x, y) of zeta, cells with |zeta| >= 1 - 1e-9 are masked.
struct GridSpec {
  Manifold manifold = Manifold::Plane;
  double x_min = -4.0, x_max = 4.0;
  double y_min = -4.0, y_max = 4.0;
  int nx = 400, ny = 400;

  double x(int i) const { return x_min + (x_max - x_min) * i / (nx - 1); }
  double y(int j) const { return y_min + (y_max - y_min) * j / (ny - 1); }
  /// Point at grid node (i, j), or nullopt for masked disk nodes.
  std::optional<PhasePoint> point(int i, int j) const;
  void validate() const;
};

enum class MeasureConvention { Raw, H4Normalized };

struct QField {
  GridSpec grid;
  /// values(j, i) at (x(i), y(j)); masked nodes hold 0 and mask(j, i) = false.
  Eigen::MatrixXd values;
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> mask;
  MeasureConvention convention = MeasureConvention::Raw;
};

/// |<point|state>|^2 for a normalized state.
double q_value(const CSSystem& system, const StateVector& state, const PhasePoint& point);

/// Elementwise q_value over the grid, rows split across `threads` workers.
QField q_grid(const CSSystem& system, const StateVector& state, const GridSpec& grid,
              MeasureConvention convention = MeasureConvention::Raw, int threads = 1);

struct Maximum {
  double arg;
  double value;
};

/// Golden-section maximum of a unimodal profile on [lo, hi].  A 64-sample
/// pre-scan rejects profiles with two or more separated maxima of prominence
/// above 1e-9; the thrown NotUnimodalError lists them.
Maximum locate_q_max_1d(const std::function<double(double)>& profile, std::pair<double, double> bracket,
                        double tol = 1e-6);

class NotUnimodalError : public Error {
 public:
  NotUnimodalError(std::vector<Maximum> maxima)
      : Error(ErrorCode::NotUnimodal, "profile has several separated maxima"), maxima_(std::move(maxima)) {}
  const std::vector<Maximum>& maxima() const { return maxima_; }

 private:
  std::vector<Maximum> maxima_;
};

/// max_i |Q(point_i) - Q(point_0)| over n points of the orbit.
double orbit_q_invariance(const CSSystem& system, const StateVector& state, const OrbitSpec& orbit, int n);

}  // namespace cspace
