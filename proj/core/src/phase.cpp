#include "cspace/phase.hpp"

#include <cmath>
#include <numbers>

namespace cspace {

namespace {

cplx checked_overlap(const StateVector& a, const StateVector& b, const char* what) {
  const cplx o = a.inner(b);
  if (std::abs(o) < kOrthogonalityThreshold) throw Error(ErrorCode::OrthogonalStates, what);
  return o;
}

// d psi / d chi at sample i: second-order on a non-uniform grid.
Eigen::VectorXcd derivative(const StateCurve& c, std::size_t i) {
  const auto& s = c.samples;
  const std::size_t n = s.size();
  auto x = [&](std::size_t k) { return s[k].chi; };
  auto y = [&](std::size_t k) -> const Eigen::VectorXcd& { return s[k].state.coeffs; };
  std::size_t i0, i1, i2;
  if (i == 0) {
    i0 = 0, i1 = 1, i2 = 2;
  } else if (i == n - 1) {
    i0 = n - 3, i1 = n - 2, i2 = n - 1;
  } else {
    i0 = i - 1, i1 = i, i2 = i + 1;
  }
  // Derivative of the Lagrange interpolant through (x0,x1,x2) at x(i).
  const double t = x(i);
  const double x0 = x(i0), x1 = x(i1), x2 = x(i2);
  const double w0 = ((t - x1) + (t - x2)) / ((x0 - x1) * (x0 - x2));
  const double w1 = ((t - x0) + (t - x2)) / ((x1 - x0) * (x1 - x2));
  const double w2 = ((t - x0) + (t - x1)) / ((x2 - x0) * (x2 - x1));
  return w0 * y(i0) + w1 * y(i1) + w2 * y(i2);
}

double shoelace(const std::vector<std::array<double, 2>>& pts) {
  double a = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) a += pts[i][0] * pts[i + 1][1] - pts[i + 1][0] * pts[i][1];
  return 0.5 * a;
}

}  // namespace

void StateCurve::validate() const {
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (!(samples[i].chi > samples[i - 1].chi))
      throw Error(ErrorCode::InvalidArgument, "curve parameter must be strictly increasing");
  if (closed && samples.size() >= 2) {
    const auto& a = samples.front().state;
    const auto& b = samples.back().state;
    const double fidelity = std::abs(a.inner(b)) / (a.norm() * b.norm());
    if (std::abs(fidelity - 1.0) > 1e-8) throw Error(ErrorCode::InvalidArgument, "closed curve does not return to its ray");
  }
}

double pancharatnam_phase(const StateVector& psi1, const StateVector& psi2) {
  return wrap_phase(std::arg(checked_overlap(psi1, psi2, "Pancharatnam phase of orthogonal states")));
}

double dynamical_phase(const StateCurve& curve) {
  const std::size_t n = curve.samples.size();
  if (n < 5) throw Error(ErrorCode::TooFewSamples, "dynamical phase needs at least 5 samples");
  curve.validate();
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& psi = curve.samples[i].state.coeffs;
    f[i] = psi.dot(derivative(curve, i)).imag() / psi.squaredNorm();
  }
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) sum += 0.5 * (f[i] + f[i + 1]) * (curve.samples[i + 1].chi - curve.samples[i].chi);
  return sum;
}

double total_pancharatnam_phase(const StateCurve& curve) {
  const auto& s = curve.samples;
  if (s.size() < 2) throw Error(ErrorCode::TooFewSamples, "Pancharatnam phase needs at least 2 samples");
  double total = 0.0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    const double a = std::arg(checked_overlap(s.front().state, s[i].state, "curve passes through a state orthogonal to its start"));
    total += wrap_phase(a - total);
  }
  return total;
}

PhaseReport geometric_phase(const StateCurve& curve) {
  const double dyn = dynamical_phase(curve);
  const double pan = total_pancharatnam_phase(curve);
  return {pan, dyn, pan - dyn};
}

StateCurve horizontal_lift(const StateCurve& curve) {
  if (curve.samples.size() < 2) throw Error(ErrorCode::TooFewSamples, "lift needs at least 2 samples");
  StateCurve out = curve;
  double phi = 0.0;
  for (std::size_t i = 1; i < curve.samples.size(); ++i) {
    const cplx o = checked_overlap(curve.samples[i - 1].state, curve.samples[i].state, "orthogonal neighbouring samples");
    phi -= std::arg(o);
    out.samples[i].state.coeffs *= std::polar(1.0, phi);
  }
  return out;
}

double bargmann_triangle(const StateVector& a, const StateVector& b, const StateVector& c) {
  const cplx ab = checked_overlap(a, b, "orthogonal pair in triangle");
  const cplx bc = checked_overlap(b, c, "orthogonal pair in triangle");
  const cplx ca = checked_overlap(c, a, "orthogonal pair in triangle");
  return wrap_phase(std::arg(ab * bc * ca));
}

double symplectic_area(const std::vector<PhasePoint>& points, Manifold manifold) {
  if (points.size() < 4) throw Error(ErrorCode::OpenPolyline, "a closed polyline needs at least 3 distinct points");
  for (const auto& p : points)
    if (p.manifold() != manifold) throw Error(ErrorCode::ManifoldMismatch, "polyline point on another manifold");
  if (point_distance(points.front(), points.back()) > 1e-12)
    throw Error(ErrorCode::OpenPolyline, "polyline must repeat its first point at the end");

  switch (manifold) {
    case Manifold::Plane: {
      std::vector<std::array<double, 2>> pts;
      pts.reserve(points.size());
      for (const auto& p : points) pts.push_back({p.as_plane().q, p.as_plane().p});
      return shoelace(pts);
    }
    case Manifold::TwoModePlane: {
      std::vector<std::array<double, 2>> m1, m2;
      for (const auto& p : points) {
        const auto& c = p.as_two_mode();
        m1.push_back({c.q1, c.p1});
        m2.push_back({c.q2, c.p2});
      }
      return shoelace(m1) + shoelace(m2);
    }
    case Manifold::Sphere: {
      // Sum of signed solid angles of the geodesic triangles (north pole, p_i, p_i+1).
      double area = 0.0;
      for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const auto a = points[i].bloch();
        const auto b = points[i + 1].bloch();
        const double triple = a[0] * b[1] - a[1] * b[0];
        const double denom = 1.0 + a[2] + b[2] + a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
        area += 2.0 * std::atan2(triple, denom);
      }
      return area;
    }
    case Manifold::Disk: {
      // Sum of signed hyperbolic areas of the geodesic triangles (0, z_i, z_i+1).
      double area = 0.0;
      for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const cplx a = points[i].as_disk().zeta;
        const cplx b = points[i + 1].as_disk().zeta;
        area -= 2.0 * std::arg(1.0 - std::conj(a) * b);
      }
      return area;
    }
  }
  return 0.0;
}

}  // namespace cspace
