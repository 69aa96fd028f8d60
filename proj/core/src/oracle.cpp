#include "cspace/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "cspace/kernels.hpp"

namespace cspace {

namespace {

constexpr int kMaxDenseCutoff = 2048;

bool continuum(GeneratorKind kind) {
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

std::pair<double, Eigen::VectorXcd> nearest_eigenpair(const CSSystem& system, const GeneratorSpec& gen, double target) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(generator_matrix(system, gen));
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NotConverged, "dense eigensolver failed");
  Eigen::Index best = 0;
  (es.eigenvalues().array() - target).abs().minCoeff(&best);
  Eigen::VectorXcd v = es.eigenvectors().col(best);
  // Fix the phase: largest component real and positive.
  Eigen::Index peak = 0;
  v.cwiseAbs().maxCoeff(&peak);
  v *= std::polar(1.0, -std::arg(v[peak]));
  return {es.eigenvalues()[best], v};
}

std::array<double, 3> slerp(const std::array<double, 3>& u, const std::array<double, 3>& v, double t) {
  const double dot = std::clamp(u[0] * v[0] + u[1] * v[1] + u[2] * v[2], -1.0, 1.0);
  const double om = std::acos(dot);
  std::array<double, 3> out;
  if (om < 1e-12) {
    for (int i = 0; i < 3; ++i) out[i] = u[i] + t * (v[i] - u[i]);
  } else {
    const double a = std::sin((1.0 - t) * om) / std::sin(om);
    const double b = std::sin(t * om) / std::sin(om);
    for (int i = 0; i < 3; ++i) out[i] = a * u[i] + b * v[i];
  }
  const double len = std::sqrt(out[0] * out[0] + out[1] * out[1] + out[2] * out[2]);
  for (auto& x : out) x /= len;
  return out;
}

}  // namespace

MatrixEigenpair matrix_eigenstate(const CSSystem& system, const GeneratorSpec& gen, double target) {
  require_compatible(system, gen);
  if (system.cutoff() > kMaxDenseCutoff) throw Error(ErrorCode::InvalidArgument, "dense oracle limited to cutoff 2048");
  auto [value, vec] = nearest_eigenpair(system, gen, target);
  const bool proxy = continuum(gen.kind());
  if (!proxy && system.kind() != SystemKind::SU2) {
    const auto [value2, vec2] = nearest_eigenpair(system.with_cutoff(2 * system.cutoff()), gen, target);
    if (std::abs(value2 - value) >= 1e-10)
      throw Error(ErrorCode::NotConverged, "eigenvalue moves when the cutoff is doubled");
  }
  return {value, StateVector{system, vec, false}, proxy};
}

TwoSourceDecomposition two_source_decomposition(const CSSystem& system, const PhasePoint& g1, const PhasePoint& g2,
                                                double theta, const PhasePoint& probe) {
  const cplx a1 = overlap_cs(system, probe, g1);
  const cplx a2 = overlap_cs(system, probe, g2);
  const cplx g12 = overlap_cs(system, g1, g2);
  for (const cplx o : {a1, a2, g12})
    if (std::abs(o) < kOrthogonalityThreshold) throw Error(ErrorCode::OrthogonalStates, "orthogonal pair");
  const double direct = std::norm(a1 + std::polar(1.0, theta) * a2);
  const double i1 = std::norm(a1);
  const double i2 = std::norm(a2);
  // Delta3(g1, probe, g2) = <g1|probe><probe|g2><g2|g1>.
  const cplx delta3 = std::conj(a1) * a2 * std::conj(g12);
  const double pancharatnam = std::arg(std::polar(1.0, theta) * g12);
  const double reconstructed = i1 + i2 + 2.0 * std::sqrt(i1 * i2) * std::cos(pancharatnam + std::arg(delta3));
  return {direct, reconstructed};
}

std::vector<PhasePoint> geodesic_polyline(Manifold manifold, const PhasePoint& a, const PhasePoint& b, int n) {
  if (a.manifold() != manifold || b.manifold() != manifold)
    throw Error(ErrorCode::ManifoldMismatch, "endpoints are not on the requested manifold");
  if (n < 2) throw Error(ErrorCode::TooFewSamples, "geodesic needs at least 2 points");
  if (point_distance(a, b) < 1e-14) throw Error(ErrorCode::DegenerateEndpoints, "coincident endpoints");
  std::vector<PhasePoint> out;
  out.reserve(n);
  out.push_back(a);
  for (int i = 1; i + 1 < n; ++i) {
    const double t = static_cast<double>(i) / (n - 1);
    switch (manifold) {
      case Manifold::Plane: {
        const auto& x = a.as_plane();
        const auto& y = b.as_plane();
        out.push_back(PhasePoint::plane(x.q + t * (y.q - x.q), x.p + t * (y.p - x.p)));
        break;
      }
      case Manifold::TwoModePlane: {
        const auto& x = a.as_two_mode();
        const auto& y = b.as_two_mode();
        out.push_back(PhasePoint::two_mode(x.q1 + t * (y.q1 - x.q1), x.p1 + t * (y.p1 - x.p1), x.q2 + t * (y.q2 - x.q2),
                                           x.p2 + t * (y.p2 - x.p2)));
        break;
      }
      case Manifold::Sphere: {
        const auto u = a.bloch();
        const auto v = b.bloch();
        if (u[0] * v[0] + u[1] * v[1] + u[2] * v[2] < -1.0 + 1e-12)
          throw Error(ErrorCode::DegenerateEndpoints, "antipodal endpoints have no unique geodesic");
        const auto w = slerp(u, v, t);
        out.push_back(PhasePoint::sphere(std::acos(std::clamp(w[2], -1.0, 1.0)), std::atan2(w[1], w[0])));
        break;
      }
      case Manifold::Disk: {
        const cplx za = a.as_disk().zeta;
        const cplx zb = b.as_disk().zeta;
        // Move a to the origin, follow the diameter, move back.
        const cplx w = (zb - za) / (1.0 - std::conj(za) * zb);
        const double r = std::tanh(t * std::atanh(std::abs(w)));
        const cplx u = std::polar(r, std::arg(w));
        out.push_back(PhasePoint::disk((u + za) / (1.0 + std::conj(za) * u)));
        break;
      }
    }
  }
  out.push_back(b);
  return out;
}

RefinedPhase richardson_extrapolate(const std::vector<double>& values, const std::vector<int>& ns) {
  if (values.size() != ns.size() || values.size() < 2)
    throw Error(ErrorCode::InvalidArgument, "need at least two resolutions");
  for (std::size_t i = 1; i < ns.size(); ++i)
    if (ns[i] <= ns[i - 1]) throw Error(ErrorCode::InvalidArgument, "resolutions must increase");

  const double scale = std::max(1.0, std::abs(values.back()));
  for (std::size_t i = 2; i < values.size(); ++i) {
    const double prev = std::abs(values[i - 1] - values[i - 2]);
    const double cur = std::abs(values[i] - values[i - 1]);
    if (cur > 1e-13 * scale && cur > 0.5 * prev)
      throw Error(ErrorCode::NonConvergent, "refinement differences do not shrink by 2");
  }

  std::vector<double> row = values;
  double error = std::abs(values.back() - values[values.size() - 2]);
  const int levels = std::min<int>(3, static_cast<int>(values.size()) - 1);
  for (int level = 0; level < levels; ++level) {
    const double p = 2.0 + level;
    std::vector<double> next;
    for (std::size_t i = 0; i + 1 < row.size(); ++i) {
      const double f = std::pow(static_cast<double>(ns[i + 1]) / ns[i], p);
      next.push_back((f * row[i + 1] - row[i]) / (f - 1.0));
    }
    error = std::abs(next.back() - row.back());
    row = std::move(next);
  }
  return {row.back(), error};
}

RefinedPhase refined_geometric_phase(const std::function<StateCurve(int)>& curvegen, const std::vector<int>& ns) {
  std::vector<double> values;
  values.reserve(ns.size());
  for (int n : ns) values.push_back(geometric_phase(curvegen(n)).geometric);
  return richardson_extrapolate(values, ns);
}

}  // namespace cspace
