#include "cspace/system.hpp"

#include <cmath>
#include <numbers>

namespace cspace {

using std::numbers::pi;

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ManifoldMismatch: return "ManifoldMismatch";
    case ErrorCode::OutsideDisk: return "OutsideDisk";
    case ErrorCode::IncompatibleGenerator: return "IncompatibleGenerator";
    case ErrorCode::OrthogonalStates: return "OrthogonalStates";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::OpenPolyline: return "OpenPolyline";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::FixedPoint: return "FixedPoint";
    case ErrorCode::OpenOrbit: return "OpenOrbit";
    case ErrorCode::TruncationInadequate: return "TruncationInadequate";
    case ErrorCode::UnsupportedGenerator: return "UnsupportedGenerator";
    case ErrorCode::NotUnimodal: return "NotUnimodal";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::NonConvergent: return "NonConvergent";
    case ErrorCode::DegenerateEndpoints: return "DegenerateEndpoints";
  }
  return "Unknown";
}

const char* to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::H4: return "h4";
    case SystemKind::H4Scaled: return "h4-scaled";
    case SystemKind::H4TwoMode: return "h4-two-mode";
    case SystemKind::SU2: return "su2";
    case SystemKind::SU11: return "su11";
  }
  return "?";
}

const char* to_string(Manifold manifold) {
  switch (manifold) {
    case Manifold::Plane: return "plane";
    case Manifold::TwoModePlane: return "two-mode-plane";
    case Manifold::Sphere: return "sphere";
    case Manifold::Disk: return "disk";
  }
  return "?";
}

const char* to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::Q: return "Q";
    case GeneratorKind::P: return "P";
    case GeneratorKind::N: return "N";
    case GeneratorKind::Ns: return "Ns";
    case GeneratorKind::Ntotal: return "Ntotal";
    case GeneratorKind::Jz: return "Jz";
    case GeneratorKind::Jn: return "Jn";
    case GeneratorKind::K0: return "K0";
    case GeneratorKind::K1: return "K1";
    case GeneratorKind::K2: return "K2";
    case GeneratorKind::K0plusK1: return "K0+K1";
    case GeneratorKind::K0plusK2: return "K0+K2";
  }
  return "?";
}

// ---------------------------------------------------------------------------

namespace {
void require_cutoff(int cutoff) {
  if (cutoff < 1) throw Error(ErrorCode::InvalidArgument, "cutoff must be >= 1");
}
}  // namespace

CSSystem CSSystem::h4(int cutoff) {
  require_cutoff(cutoff);
  return CSSystem(SystemKind::H4, 1.0, cutoff);
}

CSSystem CSSystem::h4_scaled(double s, int cutoff) {
  require_cutoff(cutoff);
  if (!(s > 0.0) || !std::isfinite(s)) throw Error(ErrorCode::InvalidArgument, "scale s must be positive");
  return CSSystem(SystemKind::H4Scaled, s, cutoff);
}

CSSystem CSSystem::h4_two_mode(int cutoff_per_mode) {
  require_cutoff(cutoff_per_mode);
  return CSSystem(SystemKind::H4TwoMode, 1.0, cutoff_per_mode);
}

CSSystem CSSystem::su2(double j) {
  const double twice = 2.0 * j;
  if (!(j > 0.0) || std::abs(twice - std::round(twice)) > 1e-12)
    throw Error(ErrorCode::InvalidArgument, "spin j must be a positive half-integer");
  const double jj = std::round(twice) / 2.0;
  return CSSystem(SystemKind::SU2, jj, static_cast<int>(std::round(twice)) + 1);
}

CSSystem CSSystem::su11(double k, int cutoff) {
  require_cutoff(cutoff);
  if (!(k > 0.0) || !std::isfinite(k)) throw Error(ErrorCode::InvalidArgument, "Bargmann index k must be positive");
  return CSSystem(SystemKind::SU11, k, cutoff);
}

Manifold CSSystem::manifold() const {
  switch (kind_) {
    case SystemKind::H4:
    case SystemKind::H4Scaled: return Manifold::Plane;
    case SystemKind::H4TwoMode: return Manifold::TwoModePlane;
    case SystemKind::SU2: return Manifold::Sphere;
    case SystemKind::SU11: return Manifold::Disk;
  }
  return Manifold::Plane;
}

int CSSystem::dimension() const {
  if (kind_ == SystemKind::H4TwoMode) return cutoff_ * cutoff_;
  return cutoff_;
}

double CSSystem::area_weight() const {
  switch (kind_) {
    case SystemKind::SU2:
    case SystemKind::SU11: return param_;
    default: return 1.0;
  }
}

CSSystem CSSystem::with_cutoff(int cutoff) const {
  if (kind_ == SystemKind::SU2) return *this;
  require_cutoff(cutoff);
  return CSSystem(kind_, param_, cutoff);
}

// ---------------------------------------------------------------------------

PhasePoint PhasePoint::plane(double q, double p) {
  if (!std::isfinite(q) || !std::isfinite(p)) throw Error(ErrorCode::InvalidArgument, "non-finite plane point");
  return PhasePoint(PlaneCoords{q, p});
}

PhasePoint PhasePoint::two_mode(double q1, double p1, double q2, double p2) {
  return PhasePoint(TwoModeCoords{q1, p1, q2, p2});
}

PhasePoint PhasePoint::sphere(double theta, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi)) throw Error(ErrorCode::InvalidArgument, "non-finite sphere point");
  double t = std::fmod(theta, 2.0 * pi);
  if (t < 0.0) t += 2.0 * pi;
  double f = phi;
  if (t > pi) {
    t = 2.0 * pi - t;
    f += pi;
  }
  f = std::fmod(f, 2.0 * pi);
  if (f < 0.0) f += 2.0 * pi;
  if (f >= 2.0 * pi) f = 0.0;
  return PhasePoint(SphereCoords{t, f});
}

PhasePoint PhasePoint::disk(cplx zeta) {
  if (!std::isfinite(zeta.real()) || !std::isfinite(zeta.imag()) || std::norm(zeta) >= 1.0)
    throw Error(ErrorCode::OutsideDisk, "Poincare disk point requires |zeta| < 1");
  return PhasePoint(DiskCoords{zeta});
}

PhasePoint PhasePoint::disk_polar(double tau, double phi) {
  return disk(std::tanh(tau / 2.0) * std::polar(1.0, phi));
}

Manifold PhasePoint::manifold() const {
  switch (data_.index()) {
    case 0: return Manifold::Plane;
    case 1: return Manifold::TwoModePlane;
    case 2: return Manifold::Sphere;
    default: return Manifold::Disk;
  }
}

const PlaneCoords& PhasePoint::as_plane() const {
  if (auto* v = std::get_if<PlaneCoords>(&data_)) return *v;
  throw Error(ErrorCode::ManifoldMismatch, "point is not on the plane");
}
const TwoModeCoords& PhasePoint::as_two_mode() const {
  if (auto* v = std::get_if<TwoModeCoords>(&data_)) return *v;
  throw Error(ErrorCode::ManifoldMismatch, "point is not on the two-mode plane");
}
const SphereCoords& PhasePoint::as_sphere() const {
  if (auto* v = std::get_if<SphereCoords>(&data_)) return *v;
  throw Error(ErrorCode::ManifoldMismatch, "point is not on the sphere");
}
const DiskCoords& PhasePoint::as_disk() const {
  if (auto* v = std::get_if<DiskCoords>(&data_)) return *v;
  throw Error(ErrorCode::ManifoldMismatch, "point is not on the disk");
}

cplx PhasePoint::z() const {
  const auto& c = as_plane();
  return cplx(c.q, c.p) / std::sqrt(2.0);
}

std::array<double, 3> PhasePoint::bloch() const {
  const auto& c = as_sphere();
  return {std::sin(c.theta) * std::cos(c.phi), std::sin(c.theta) * std::sin(c.phi), std::cos(c.theta)};
}

double point_distance(const PhasePoint& a, const PhasePoint& b) {
  if (a.manifold() != b.manifold()) throw Error(ErrorCode::ManifoldMismatch, "points on different manifolds");
  switch (a.manifold()) {
    case Manifold::Plane: return std::hypot(a.as_plane().q - b.as_plane().q, a.as_plane().p - b.as_plane().p);
    case Manifold::TwoModePlane: {
      const auto& x = a.as_two_mode();
      const auto& y = b.as_two_mode();
      return std::sqrt((x.q1 - y.q1) * (x.q1 - y.q1) + (x.p1 - y.p1) * (x.p1 - y.p1) + (x.q2 - y.q2) * (x.q2 - y.q2) +
                       (x.p2 - y.p2) * (x.p2 - y.p2));
    }
    case Manifold::Sphere: {
      const auto u = a.bloch();
      const auto v = b.bloch();
      return std::sqrt((u[0] - v[0]) * (u[0] - v[0]) + (u[1] - v[1]) * (u[1] - v[1]) + (u[2] - v[2]) * (u[2] - v[2]));
    }
    case Manifold::Disk: return std::abs(a.as_disk().zeta - b.as_disk().zeta);
  }
  return 0.0;
}

// ---------------------------------------------------------------------------

StateVector StateVector::normalized() const {
  const double n = norm();
  if (!(n > 0.0)) throw Error(ErrorCode::InvalidArgument, "cannot normalize a null state");
  StateVector out = *this;
  out.coeffs /= n;
  return out;
}

cplx StateVector::inner(const StateVector& other) const {
  if (!(system == other.system)) throw Error(ErrorCode::ManifoldMismatch, "states belong to different systems");
  return coeffs.dot(other.coeffs);
}

// ---------------------------------------------------------------------------

GeneratorSpec GeneratorSpec::jn(const std::array<double, 3>& axis) {
  const double len = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (std::abs(len - 1.0) > 1e-12) throw Error(ErrorCode::InvalidArgument, "rotation axis must be a unit vector");
  return GeneratorSpec(GeneratorKind::Jn, axis);
}

bool GeneratorSpec::compatible_with(const CSSystem& system) const {
  switch (system.kind()) {
    case SystemKind::H4: return kind_ == GeneratorKind::Q || kind_ == GeneratorKind::P || kind_ == GeneratorKind::N;
    case SystemKind::H4Scaled: return kind_ == GeneratorKind::Ns;
    case SystemKind::H4TwoMode: return kind_ == GeneratorKind::Ntotal;
    case SystemKind::SU2: return kind_ == GeneratorKind::Jz || kind_ == GeneratorKind::Jn;
    case SystemKind::SU11:
      return kind_ == GeneratorKind::K0 || kind_ == GeneratorKind::K1 || kind_ == GeneratorKind::K2 ||
             kind_ == GeneratorKind::K0plusK1 || kind_ == GeneratorKind::K0plusK2;
  }
  return false;
}

bool GeneratorSpec::has_closed_orbits() const {
  switch (kind_) {
    case GeneratorKind::N:
    case GeneratorKind::Ns:
    case GeneratorKind::Ntotal:
    case GeneratorKind::Jz:
    case GeneratorKind::Jn:
    case GeneratorKind::K0: return true;
    default: return false;
  }
}

std::array<double, 3> GeneratorSpec::su11_components() const {
  switch (kind_) {
    case GeneratorKind::K0: return {1.0, 0.0, 0.0};
    case GeneratorKind::K1: return {0.0, 1.0, 0.0};
    case GeneratorKind::K2: return {0.0, 0.0, 1.0};
    case GeneratorKind::K0plusK1: return {1.0, 1.0, 0.0};
    case GeneratorKind::K0plusK2: return {1.0, 0.0, 1.0};
    default: throw Error(ErrorCode::IncompatibleGenerator, "not an su(1,1) generator");
  }
}

void require_compatible(const CSSystem& system, const GeneratorSpec& gen) {
  if (!gen.compatible_with(system))
    throw Error(ErrorCode::IncompatibleGenerator,
                std::string("generator ") + to_string(gen.kind()) + " does not act on system " + to_string(system.kind()));
}

void require_manifold(const CSSystem& system, const PhasePoint& point) {
  if (system.manifold() != point.manifold())
    throw Error(ErrorCode::ManifoldMismatch, std::string("point on ") + to_string(point.manifold()) +
                                                 " but system lives on " + to_string(system.manifold()));
}

double wrap_phase(double angle) {
  double r = std::remainder(angle, 2.0 * pi);
  if (r <= -pi) r += 2.0 * pi;
  return r;
}

}  // namespace cspace
