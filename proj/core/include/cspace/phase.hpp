#pragma once

#include <vector>

#include "cspace/system.hpp"

namespace cspace {

struct CurveSample {
  double chi;
  StateVector state;
};

/// A discretized curve in Hilbert space.  Samples must have strictly
/// increasing chi; a closed curve ends on the ray it started from.
struct StateCurve {
  std::vector<CurveSample> samples;
  bool closed = false;

  /// Throws InvalidArgument when the invariants above are violated.
  void validate() const;
};

struct PhaseReport {
  double pancharatnam;
  double dynamical;
  double geometric;
};

/// Overlaps below this magnitude have no meaningful argument.
inline constexpr double kOrthogonalityThreshold = 1e-12;

/// arg<psi1|psi2> in (-pi, pi].
double pancharatnam_phase(const StateVector& psi1, const StateVector& psi2);

/// Quadrature of Im<psi|psi'>/<psi|psi> over the curve.
double dynamical_phase(const StateCurve& curve);

/// arg<psi_0|psi_i> followed continuously from i = 0 to the last sample, so
/// windings beyond (-pi, pi] are kept.
double total_pancharatnam_phase(const StateCurve& curve);

/// Pancharatnam (accumulated), dynamical and geometric phase of the curve.
PhaseReport geometric_phase(const StateCurve& curve);

/// Rephases every sample so that neighbouring samples are in phase.
StateCurve horizontal_lift(const StateCurve& curve);

/// arg(<a|b><b|c><c|a>).
double bargmann_triangle(const StateVector& a, const StateVector& b, const StateVector& c);

/// Signed area enclosed by a closed polyline (first point repeated at the
/// end), positive when anticlockwise in (q, p) or with increasing phi.
/// Sphere: solid angle.  Disk: hyperbolic area.  Two-mode: sum over modes.
double symplectic_area(const std::vector<PhasePoint>& points, Manifold manifold);

}  // namespace cspace
