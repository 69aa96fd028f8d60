#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <variant>

#include <Eigen/Dense>

namespace cspace {

using cplx = std::complex<double>;

enum class ErrorCode {
  InvalidArgument,
  ManifoldMismatch,
  OutsideDisk,
  IncompatibleGenerator,
  OrthogonalStates,
  TooFewSamples,
  OpenPolyline,
  OutOfRange,
  FixedPoint,
  OpenOrbit,
  TruncationInadequate,
  UnsupportedGenerator,
  NotUnimodal,
  NotConverged,
  NonConvergent,
  DegenerateEndpoints,
};

const char* to_string(ErrorCode code);

/// Exception type carried by every failing precondition in the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

enum class SystemKind { H4, H4Scaled, H4TwoMode, SU2, SU11 };
enum class Manifold { Plane, TwoModePlane, Sphere, Disk };

const char* to_string(SystemKind kind);
const char* to_string(Manifold manifold);

/// A coherent-state system together with its basis truncation.
///
/// For SU(2) the basis is exact and has dimension 2j+1.  For the two-mode
/// oscillator the cutoff is per mode and the flattened index is n1*cutoff+n2.
class CSSystem {
 public:
  static CSSystem h4(int cutoff = 64);
  static CSSystem h4_scaled(double s, int cutoff = 64);
  static CSSystem h4_two_mode(int cutoff_per_mode = 16);
  static CSSystem su2(double j);
  static CSSystem su11(double k, int cutoff = 64);

  SystemKind kind() const { return kind_; }
  Manifold manifold() const;
  int cutoff() const { return cutoff_; }
  int dimension() const;

  double scale() const { return param_; }           // H4Scaled
  double spin() const { return param_; }            // SU2
  double bargmann_index() const { return param_; }  // SU11
  /// Weight multiplying the symplectic area in the geometric phase: 1, j or k.
  double area_weight() const;

  CSSystem with_cutoff(int cutoff) const;

  bool operator==(const CSSystem&) const = default;

 private:
  CSSystem(SystemKind kind, double param, int cutoff) : kind_(kind), param_(param), cutoff_(cutoff) {}

  SystemKind kind_;
  double param_;
  int cutoff_;
};

struct PlaneCoords {
  double q;
  double p;
};
struct TwoModeCoords {
  double q1, p1, q2, p2;
};
struct SphereCoords {
  double theta;
  double phi;
};
struct DiskCoords {
  cplx zeta;
};

/// A point on one of the coherent-state manifolds.
class PhasePoint {
 public:
  static PhasePoint plane(double q, double p);
  static PhasePoint two_mode(double q1, double p1, double q2, double p2);
  /// Canonicalizes to theta in [0, pi], phi in [0, 2pi).
  static PhasePoint sphere(double theta, double phi);
  /// Throws OutsideDisk when |zeta| >= 1.
  static PhasePoint disk(cplx zeta);
  /// zeta = tanh(tau/2) e^{i phi}; tau may be negative.
  static PhasePoint disk_polar(double tau, double phi);

  Manifold manifold() const;
  const PlaneCoords& as_plane() const;
  const TwoModeCoords& as_two_mode() const;
  const SphereCoords& as_sphere() const;
  const DiskCoords& as_disk() const;

  /// Complex oscillator label z = (q + i p)/sqrt(2) of a plane point.
  cplx z() const;
  /// Unit vector (sin t cos f, sin t sin f, cos t) of a sphere point.
  std::array<double, 3> bloch() const;

 private:
  using Storage = std::variant<PlaneCoords, TwoModeCoords, SphereCoords, DiskCoords>;
  explicit PhasePoint(Storage s) : data_(s) {}
  Storage data_;
};

/// Distance used to compare manifold points: Euclidean in (q,p), chordal on
/// the sphere, Euclidean in the disk chart.
double point_distance(const PhasePoint& a, const PhasePoint& b);

/// Complex coefficient vector in the basis of `system`.
struct StateVector {
  CSSystem system;
  Eigen::VectorXcd coeffs;
  /// Set by builders when the basis tail test failed.
  bool truncated = false;

  double norm() const { return coeffs.norm(); }
  bool is_normalized(double tol = 1e-12) const { return std::abs(norm() - 1.0) <= tol; }
  StateVector normalized() const;
  /// <this|other>
  cplx inner(const StateVector& other) const;
};

enum class GeneratorKind { Q, P, N, Ns, Ntotal, Jz, Jn, K0, K1, K2, K0plusK1, K0plusK2 };

const char* to_string(GeneratorKind kind);

class GeneratorSpec {
 public:
  static GeneratorSpec q() { return GeneratorSpec(GeneratorKind::Q); }
  static GeneratorSpec p() { return GeneratorSpec(GeneratorKind::P); }
  static GeneratorSpec n() { return GeneratorSpec(GeneratorKind::N); }
  static GeneratorSpec ns() { return GeneratorSpec(GeneratorKind::Ns); }
  static GeneratorSpec ntotal() { return GeneratorSpec(GeneratorKind::Ntotal); }
  static GeneratorSpec jz() { return GeneratorSpec(GeneratorKind::Jz); }
  /// Throws unless the axis has unit length within 1e-12.
  static GeneratorSpec jn(const std::array<double, 3>& axis);
  static GeneratorSpec k0() { return GeneratorSpec(GeneratorKind::K0); }
  static GeneratorSpec k1() { return GeneratorSpec(GeneratorKind::K1); }
  static GeneratorSpec k2() { return GeneratorSpec(GeneratorKind::K2); }
  static GeneratorSpec k0_plus_k1() { return GeneratorSpec(GeneratorKind::K0plusK1); }
  static GeneratorSpec k0_plus_k2() { return GeneratorSpec(GeneratorKind::K0plusK2); }

  GeneratorKind kind() const { return kind_; }
  const std::array<double, 3>& axis() const { return axis_; }

  bool compatible_with(const CSSystem& system) const;
  /// True for generators whose orbits close (period 2pi).
  bool has_closed_orbits() const;
  /// Coefficients (a0, a1, a2) of K0, K1, K2; SU(1,1) generators only.
  std::array<double, 3> su11_components() const;

 private:
  explicit GeneratorSpec(GeneratorKind kind, std::array<double, 3> axis = {0.0, 0.0, 1.0})
      : kind_(kind), axis_(axis) {}
  GeneratorKind kind_;
  std::array<double, 3> axis_;
};

void require_compatible(const CSSystem& system, const GeneratorSpec& gen);
void require_manifold(const CSSystem& system, const PhasePoint& point);

/// Reduce an angle to (-pi, pi].
double wrap_phase(double angle);

}  // namespace cspace
