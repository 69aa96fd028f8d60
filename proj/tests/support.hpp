#pragma once

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <random>

#include "cspace/kernels.hpp"

namespace cspace::testing {

using std::numbers::pi;

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20261019);
  return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

/// Random point well inside the basis truncation of the default systems.
inline PhasePoint random_point(Manifold m, double scale = 1.5) {
  switch (m) {
    case Manifold::Plane: return PhasePoint::plane(uniform(-scale, scale), uniform(-scale, scale));
    case Manifold::TwoModePlane:
      return PhasePoint::two_mode(uniform(-1, 1), uniform(-1, 1), uniform(-1, 1), uniform(-1, 1));
    case Manifold::Sphere: return PhasePoint::sphere(std::acos(uniform(-1.0, 1.0)), uniform(0.0, 2.0 * pi));
    case Manifold::Disk: return PhasePoint::disk(std::polar(std::sqrt(uniform(0.0, 0.36)), uniform(0.0, 2.0 * pi)));
  }
  return PhasePoint::plane(0, 0);
}

/// exp(-i chi M) from the eigendecomposition of a Hermitian M.
inline Eigen::MatrixXcd unitary_flow(const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>& es, double chi) {
  const Eigen::VectorXcd phases =
      es.eigenvalues().unaryExpr([chi](double x) { return std::polar(1.0, -chi * x); }).cast<cplx>();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/// 1 - |<a|b>|^2 / (|a|^2 |b|^2)
inline double ray_distance(const StateVector& a, const StateVector& b) {
  return 1.0 - std::norm(a.inner(b)) / (a.coeffs.squaredNorm() * b.coeffs.squaredNorm());
}

}  // namespace cspace::testing
