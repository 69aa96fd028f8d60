#pragma once

#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "cspace/kernels.hpp"

namespace cspace {

enum class Topology { Closed, Open };

/// A one-parameter group orbit through `seed`.
class OrbitSpec {
 public:
  /// Throws FixedPoint if the seed does not move and InvalidArgument if the
  /// orbit does not close after `period`.
  static OrbitSpec closed(const CSSystem& system, const GeneratorSpec& gen, const PhasePoint& seed,
                          double period = 2.0 * std::numbers::pi);
  static OrbitSpec open(const CSSystem& system, const GeneratorSpec& gen, const PhasePoint& seed, double chi_min,
                        double chi_max);

  const CSSystem& system() const { return system_; }
  const GeneratorSpec& generator() const { return gen_; }
  const PhasePoint& seed() const { return seed_; }
  Topology topology() const { return topology_; }
  bool is_closed() const { return topology_ == Topology::Closed; }
  double period() const { return chi_max_ - chi_min_; }
  double chi_min() const { return chi_min_; }
  double chi_max() const { return chi_max_; }

  OrbitSpec with_system(const CSSystem& system) const;

 private:
  OrbitSpec(CSSystem system, GeneratorSpec gen, PhasePoint seed, Topology topology, double lo, double hi)
      : system_(system), gen_(gen), seed_(seed), topology_(topology), chi_min_(lo), chi_max_(hi) {}
  CSSystem system_;
  GeneratorSpec gen_;
  PhasePoint seed_;
  Topology topology_;
  double chi_min_;
  double chi_max_;
};

struct OrbitNode {
  double chi;
  PhasePoint point;
  /// exp(-i chi T)|seed> = exp(i phase)|point>
  double phase;
};

/// Closed orbits: n nodes uniformly over [0, period).  Open orbits: n nodes
/// over [chi_min, chi_max] including both ends.
std::vector<OrbitNode> orbit_points(const OrbitSpec& spec, int n);

struct InPhaseSeed {
  PhasePoint point;
  /// The seed is a fixed point of the generator; the orbit is a single point.
  bool fixed_point = false;
  /// Other orbits with the same expectation exist and give different eigenstates.
  bool degenerate_family = false;
};

/// Point on the canonical meridian or axis where <T> = t0.
InPhaseSeed in_phase_seed(const CSSystem& system, const GeneratorSpec& gen, double t0);

/// Half-width of the default open window: the smallest power of two >= 8
/// at which both endpoint coherent states have truncated norm <= 1e-10.
double open_window_half_width(const CSSystem& system, const GeneratorSpec& gen, const PhasePoint& seed);

/// Orbit through the in-phase seed: closed with period 2pi, or open over the
/// default window.
OrbitSpec in_phase_orbit(const CSSystem& system, const GeneratorSpec& gen, double t0);

/// Nodes and complex weights of exp(i chi (t0 - T)) integrated over the orbit.
///
/// Closed orbits are averaged over several windings under a Gaussian window
/// whose weights are renormalized per node residue class, so that for a
/// quantized t0 the sum equals the one-period trapezoid exactly while for
/// other t0 it decays to zero as the node count grows.
struct SuperpositionPlan {
  OrbitSpec orbit;
  double t0;
  int nodes;
  int nodes_per_period;  // closed orbits only
  std::vector<double> chi;
  std::vector<cplx> weights;
};

/// `nodes` <= 0 selects the default (512 closed; open: odd, spacing <= 0.1, at
/// least 2001).  `offset` shifts every closed-orbit node.
SuperpositionPlan make_plan(const OrbitSpec& orbit, double t0, int nodes = 0, double offset = 0.0);

struct Quantization {
  double pancharatnam_total;
  double nearest_2pi_multiple;
  double defect;
};

struct EigenstateResult {
  StateVector state;
  /// Norm of the unnormalized sum divided by the parameter length.
  double raw_norm;
  /// ||(T - t0) psi|| / ||psi||, over rows exactly represented in the basis.
  double residual;
  std::optional<Quantization> quantization;
  /// True when raw_norm is too small to normalize; `state` is then the raw sum.
  bool null_state = false;
};

EigenstateResult build_eigenstate(const SuperpositionPlan& plan);

/// Pancharatnam phase accumulated over one period of the in-phase-weighted
/// curve, and its distance to the nearest multiple of 2pi.  `nodes` points
/// are used for the area estimate that fixes the winding number.
Quantization quantization_check(const OrbitSpec& orbit, double t0, int nodes = 512);

struct NormalizationScan {
  std::vector<double> parameter;
  std::vector<double> normalization;
  double argmin;
};

/// Analytic normalization of the eigenstate with index m (Fock number, J_z
/// value, or K0 level) expanded over the orbit labelled by each parameter:
/// r0 (oscillator), a (scaled oscillator), theta (spin), R (SU(1,1)).
NormalizationScan normalization_scan(const CSSystem& system, const GeneratorSpec& gen, double m,
                                     const std::vector<double>& parameter_grid);

/// Coherent states placed at equal arc length on q^2/a^2 + p^2/b^2 = 1 (n
/// points, anticlockwise from (a, 0)), made pairwise in phase and summed.
struct EllipseSuperposition {
  std::vector<PhasePoint> points;
  StateVector state;  // normalized
};
EllipseSuperposition ellipse_in_phase_superposition(const CSSystem& system, double a, double b, int n);

}  // namespace cspace
