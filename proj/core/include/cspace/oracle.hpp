#pragma once

#include <functional>
#include <vector>

#include "cspace/phase.hpp"

namespace cspace {

struct MatrixEigenpair {
  double eigenvalue;
  StateVector state;
  /// The generator has continuous spectrum; the truncated eigenpair is only a
  /// proxy and is good for residual checks, not for fidelities.
  bool continuum_proxy;
};

/// Eigenpair of the truncated generator matrix closest to `target`.  For
/// discrete spectra, throws NotConverged when doubling the cutoff moves the
/// eigenvalue by 1e-10 or more.  Cutoffs above 2048 are rejected.
MatrixEigenpair matrix_eigenstate(const CSSystem& system, const GeneratorSpec& gen, double target);

struct TwoSourceDecomposition {
  double direct;
  double reconstructed;
};

/// Intensity of |g1> + e^{i theta}|g2> at `probe`, directly and from the
/// Pancharatnam and Bargmann phases of the three states.
TwoSourceDecomposition two_source_decomposition(const CSSystem& system, const PhasePoint& g1, const PhasePoint& g2,
                                                double theta, const PhasePoint& probe);

/// n points along the minimal geodesic from a to b, endpoints included.
/// Plane: straight segment.  Sphere: great-circle arc.  Disk: hyperbolic geodesic.
std::vector<PhasePoint> geodesic_polyline(Manifold manifold, const PhasePoint& a, const PhasePoint& b, int n);

struct RefinedPhase {
  double value;
  double error_estimate;
};

/// Richardson extrapolation of values computed at resolutions n_sequence
/// (increasing), assuming an error series in h^2, h^3, h^4.  Throws
/// NonConvergent when successive differences do not shrink by at least 2.
RefinedPhase richardson_extrapolate(const std::vector<double>& values, const std::vector<int>& n_sequence);

/// Geometric phase of curvegen(n) for each n, extrapolated to h -> 0.
RefinedPhase refined_geometric_phase(const std::function<StateCurve(int)>& curvegen, const std::vector<int>& n_sequence);

}  // namespace cspace
