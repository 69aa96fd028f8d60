#include <gtest/gtest.h>

#include "cspace/oracle.hpp"
#include "cspace/orbit.hpp"
#include "support.hpp"

using namespace cspace;
using namespace cspace::testing;

namespace {

double fidelity(const StateVector& psi, int index) { return std::norm(psi.coeffs[index]) / psi.coeffs.squaredNorm(); }

EigenstateResult fock(int m, double r0, int nodes = 512, double offset = 0.0) {
  const OrbitSpec orbit = OrbitSpec::closed(CSSystem::h4(64), GeneratorSpec::n(), PhasePoint::plane(r0, 0));
  return build_eigenstate(make_plan(orbit, m, nodes, offset));
}

/// <q'|psi> from the oscillator expansion via the Hermite-function recurrence.
cplx position_amplitude(const StateVector& psi, double x) {
  double h0 = std::pow(pi, -0.25) * std::exp(-x * x / 2), h1 = std::sqrt(2.0) * x * h0;
  cplx sum = psi.coeffs[0] * h0 + psi.coeffs[1] * h1;
  for (int n = 2; n < psi.coeffs.size(); ++n) {
    const double h2 = std::sqrt(2.0 / n) * x * h1 - std::sqrt((n - 1.0) / n) * h0;
    sum += psi.coeffs[n] * h2;
    h0 = h1;
    h1 = h2;
  }
  return sum;
}

}  // namespace

TEST(InPhaseSeedExamples, Values) {
  const PhasePoint h = in_phase_seed(CSSystem::h4(), GeneratorSpec::n(), 3.0).point;
  EXPECT_NEAR(h.as_plane().q, std::sqrt(6.0), 1e-15);
  EXPECT_EQ(h.as_plane().p, 0.0);
  const PhasePoint s = in_phase_seed(CSSystem::su2(2), GeneratorSpec::jz(), 1.0).point;
  EXPECT_NEAR(s.as_sphere().theta, pi / 3, 1e-15);
  const CSSystem su11 = CSSystem::su11(3.0);
  const PhasePoint d = in_phase_seed(su11, GeneratorSpec::k2(), 2.0).point;
  const double tau0 = std::asinh(-2.0 / 3.0);
  EXPECT_NEAR(std::abs(d.as_disk().zeta - cplx(0, std::tanh(tau0 / 2))), 0.0, 1e-15);
  EXPECT_NEAR(expectation_generator(su11, GeneratorSpec::k2(), d), 2.0, 1e-12);
}

TEST(InPhaseSeedExamples, Degeneracies) {
  EXPECT_TRUE(in_phase_seed(CSSystem::su2(2), GeneratorSpec::jz(), 2.0).fixed_point);
  EXPECT_TRUE(in_phase_seed(CSSystem::su2(2), GeneratorSpec::jz(), -2.0).fixed_point);
  EXPECT_TRUE(in_phase_seed(CSSystem::h4(), GeneratorSpec::n(), 0.0).fixed_point);
  EXPECT_TRUE(in_phase_seed(CSSystem::su11(3), GeneratorSpec::k0(), 3.0).fixed_point);
  EXPECT_TRUE(in_phase_seed(CSSystem::h4_two_mode(), GeneratorSpec::ntotal(), 1.0).degenerate_family);
  EXPECT_THROW(in_phase_orbit(CSSystem::h4(), GeneratorSpec::n(), 0.0), Error);
}

TEST(InPhaseSeedExamples, OutOfRange) {
  auto code = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  EXPECT_EQ(code([] { in_phase_seed(CSSystem::su2(2), GeneratorSpec::jz(), 2.5); }), ErrorCode::OutOfRange);
  EXPECT_EQ(code([] { in_phase_seed(CSSystem::su11(3), GeneratorSpec::k0(), 2.0); }), ErrorCode::OutOfRange);
  EXPECT_EQ(code([] { in_phase_seed(CSSystem::su11(3), GeneratorSpec::k0_plus_k1(), 0.0); }), ErrorCode::OutOfRange);
  EXPECT_EQ(code([] { in_phase_seed(CSSystem::h4(), GeneratorSpec::n(), -1.0); }), ErrorCode::OutOfRange);
}

TEST(InPhaseSeedProperty, ExpectationMatchesTarget) {
  const double r = 1.0 / std::sqrt(2.0);
  struct C {
    CSSystem sys;
    GeneratorSpec gen;
    double lo, hi;
  };
  const std::vector<C> cases{
      {CSSystem::h4(), GeneratorSpec::q(), -3, 3},
      {CSSystem::h4(), GeneratorSpec::p(), -3, 3},
      {CSSystem::h4(), GeneratorSpec::n(), 0, 8},
      {CSSystem::h4_scaled(0.6), GeneratorSpec::ns(), 0, 8},
      {CSSystem::h4_two_mode(), GeneratorSpec::ntotal(), 0, 4},
      {CSSystem::su2(2.5), GeneratorSpec::jz(), -2.5, 2.5},
      {CSSystem::su2(2.5), GeneratorSpec::jn({r, 0, r}), -2.5, 2.5},
      {CSSystem::su11(0.75), GeneratorSpec::k0(), 0.75, 6},
      {CSSystem::su11(0.75), GeneratorSpec::k1(), -4, 4},
      {CSSystem::su11(0.75), GeneratorSpec::k2(), -4, 4},
      {CSSystem::su11(0.75), GeneratorSpec::k0_plus_k1(), 0.05, 6},
      {CSSystem::su11(0.75), GeneratorSpec::k0_plus_k2(), 0.05, 6},
  };
  for (const auto& c : cases)
    for (int i = 0; i < 20; ++i) {
      const double t0 = uniform(c.lo, c.hi);
      const PhasePoint p = in_phase_seed(c.sys, c.gen, t0).point;
      EXPECT_NEAR(expectation_generator(c.sys, c.gen, p), t0, 1e-12 * std::max(1.0, std::abs(t0)))
          << to_string(c.gen.kind());
    }
}

TEST(BuildEigenstateExamples, FockState) {
  const EigenstateResult r = fock(2, 2.0, 256);
  EXPECT_GE(fidelity(r.state, 2), 1 - 1e-10);
  EXPECT_LE(r.residual, 1e-6);
  EXPECT_NEAR(r.state.norm(), 1.0, 1e-12);
}

TEST(BuildEigenstateExamples, NullSuperposition) {
  const OrbitSpec orbit = OrbitSpec::closed(CSSystem::h4(64), GeneratorSpec::n(), PhasePoint::plane(std::sqrt(2.6), 0));
  const EigenstateResult null = build_eigenstate(make_plan(orbit, 1.3, 1024));
  EXPECT_LT(null.raw_norm, 1e-8);
  EXPECT_TRUE(null.null_state);
  EXPECT_GT(null.quantization->defect, 1e-3);
}

TEST(BuildEigenstateExamples, PositionEigenstate) {
  const CSSystem sys = CSSystem::h4(160);
  const double q1 = 0.7;
  const OrbitSpec orbit = in_phase_orbit(sys, GeneratorSpec::q(), q1);
  const EigenstateResult r = build_eigenstate(make_plan(orbit, q1));
  EXPECT_LE(r.residual, 1e-4);
  // Spectral projection on the truncated position operator: the weight sits on
  // the eigenvalues next to q1 (spacing about 0.17 at this cutoff).
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(generator_matrix(sys, GeneratorSpec::q()));
  const Eigen::VectorXcd w = es.eigenvectors().adjoint() * r.state.coeffs;
  double near = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i)
    if (std::abs(es.eigenvalues()[i] - q1) < 0.3) near += std::norm(w[i]);
  EXPECT_GT(near, 0.9);
  const MatrixEigenpair o = matrix_eigenstate(sys, GeneratorSpec::q(), q1);
  EXPECT_TRUE(o.continuum_proxy);
  EXPECT_GT(std::norm(o.state.inner(r.state)), 0.3);
  // The wavefunction peaks at q1.
  double best = -1, arg = 0;
  for (double x = -2; x <= 3; x += 0.01) {
    const double a = std::abs(position_amplitude(r.state, x));
    if (a > best) best = a, arg = x;
  }
  EXPECT_NEAR(arg, q1, 0.011);
  EXPECT_LT(std::abs(position_amplitude(r.state, q1 + 1.0)), 0.05 * best);
  const OrbitSpec porbit = in_phase_orbit(sys, GeneratorSpec::p(), 0.4);
  const EigenstateResult p = build_eigenstate(make_plan(porbit, 0.4));
  EXPECT_LE(p.residual, 1e-4);
}

TEST(BuildEigenstateExamples, TwoModeKets) {
  const CSSystem sys = CSSystem::h4_two_mode(16);
  const auto a = build_eigenstate(
      make_plan(OrbitSpec::closed(sys, GeneratorSpec::ntotal(), PhasePoint::two_mode(std::sqrt(2.0), 0, 0, 0)), 1.0));
  const auto b = build_eigenstate(
      make_plan(OrbitSpec::closed(sys, GeneratorSpec::ntotal(), PhasePoint::two_mode(0, 0, std::sqrt(2.0), 0)), 1.0));
  EXPECT_GE(fidelity(a.state, 1 * 16 + 0), 1 - 1e-10);
  EXPECT_GE(fidelity(b.state, 0 * 16 + 1), 1 - 1e-10);
  EXPECT_LT(std::abs(a.state.inner(b.state)), 1e-10);
}

TEST(QuantizationExamples, OscillatorCircles) {
  for (int m = 1; m <= 6; ++m) {
    const OrbitSpec orbit = in_phase_orbit(CSSystem::h4(64), GeneratorSpec::n(), m);
    const Quantization q = quantization_check(orbit, m);
    EXPECT_LT(q.defect, 1e-8);
    EXPECT_NEAR(q.pancharatnam_total, 2 * pi * m, 1e-8);
    EXPECT_NEAR(q.nearest_2pi_multiple, 2 * pi * m, 1e-12);
  }
}

TEST(QuantizationExamples, SpinArbitraryLatitude) {
  const CSSystem sys = CSSystem::su2(2.0);
  for (double th : {0.4, 1.0, 2.2}) {
    const OrbitSpec orbit = OrbitSpec::closed(sys, GeneratorSpec::jz(), PhasePoint::sphere(th, 0.3));
    for (double m = -2; m <= 2; m += 0.5) {
      const double defect = quantization_check(orbit, m).defect;
      if (std::abs(m - std::round(m)) < 1e-12)
        EXPECT_LT(defect, 1e-8) << "theta " << th << " m " << m;
      else
        EXPECT_GT(defect, 0.1) << "theta " << th << " m " << m;
    }
  }
}

TEST(QuantizationExamples, Su11AnyCircle) {
  const CSSystem sys = CSSystem::su11(3.0);
  for (double R : {0.3, 0.9, 1.6}) {
    const OrbitSpec orbit = OrbitSpec::closed(sys, GeneratorSpec::k0(), PhasePoint::disk_polar(R, 0.0));
    for (int m = 0; m <= 3; ++m) EXPECT_LT(quantization_check(orbit, 3.0 + m).defect, 1e-8) << "R " << R;
    EXPECT_GT(quantization_check(orbit, 3.4).defect, 0.1);
  }
}

TEST(QuantizationExamples, OpenOrbitRejected) {
  const OrbitSpec open = OrbitSpec::open(CSSystem::h4(), GeneratorSpec::q(), PhasePoint::plane(0, 0), -8, 8);
  try {
    quantization_check(open, 0.0);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OpenOrbit);
  }
}

TEST(NormalizationScanExamples, Argmins) {
  const double step = 1e-3;
  std::vector<double> r0;
  for (double x = 0.1; x < 4; x += step) r0.push_back(x);
  EXPECT_NEAR(normalization_scan(CSSystem::h4(), GeneratorSpec::n(), 2, r0).argmin, 2.0, step);

  std::vector<double> th;
  for (double x = 0.01; x < pi - 0.01; x += step) th.push_back(x);
  const double j = 2, m = 1;
  // Independent search: the m-th coefficient magnitude cos^{j+m}(t/2) sin^{j-m}(t/2) is maximal there.
  double best = -1e300, arg = 0;
  for (double x : th) {
    const double f = (j + m) * std::log(std::cos(x / 2)) + (j - m) * std::log(std::sin(x / 2));
    if (f > best) best = f, arg = x;
  }
  const double scan = normalization_scan(CSSystem::su2(j), GeneratorSpec::jz(), m, th).argmin;
  EXPECT_NEAR(scan, arg, step);
  EXPECT_NEAR(scan, pi / 3, step);

  std::vector<double> R;
  for (double x = 0.01; x < 3; x += step) R.push_back(x);
  EXPECT_NEAR(normalization_scan(CSSystem::su11(3), GeneratorSpec::k0(), 2, R).argmin, std::acosh(5.0 / 3.0), step);
}

TEST(NormalizationScanExamples, UnsupportedGenerator) {
  try {
    normalization_scan(CSSystem::h4(), GeneratorSpec::q(), 1, {0.5, 1.0});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedGenerator);
  }
}

TEST(OrbitPointsExamples, Circle) {
  const OrbitSpec orbit = OrbitSpec::closed(CSSystem::h4(), GeneratorSpec::n(), PhasePoint::plane(2, 0));
  const auto pts = orbit_points(orbit, 4);
  const std::array<std::array<double, 2>, 4> expect{{{2, 0}, {0, -2}, {-2, 0}, {0, 2}}};
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(pts[i].point.as_plane().q, expect[i][0], 1e-14);
    EXPECT_NEAR(pts[i].point.as_plane().p, expect[i][1], 1e-14);
    EXPECT_NEAR(pts[i].chi, i * pi / 2, 1e-15);
  }
}

TEST(OrbitPointsExamples, HyperbolicAndParabolicCurves) {
  const CSSystem sys = CSSystem::su11(3.0);
  for (double tau0 : {-0.6, 0.4}) {
    const OrbitSpec k2 =
        OrbitSpec::open(sys, GeneratorSpec::k2(), PhasePoint::disk(cplx(0, std::tanh(tau0 / 2))), -10, 10);
    for (const auto& n : orbit_points(k2, 101)) {
      const cplx z = n.point.as_disk().zeta;
      const double tau = 2 * std::atanh(std::abs(z));
      EXPECT_NEAR(std::sinh(tau) * std::sin(std::arg(z)), std::sinh(tau0), 1e-10);
    }
    const OrbitSpec par =
        OrbitSpec::open(sys, GeneratorSpec::k0_plus_k1(), PhasePoint::disk(std::tanh(tau0 / 2)), -10, 10);
    for (const auto& n : orbit_points(par, 101)) {
      const cplx z = n.point.as_disk().zeta;
      const double tau = 2 * std::atanh(std::abs(z));
      EXPECT_NEAR(std::cosh(tau) * (1 + std::tanh(tau) * std::cos(std::arg(z))), std::exp(tau0), 1e-10);
    }
  }
}

TEST(OrbitPointsProperty, PhasesFollowTheFlow) {
  const CSSystem sys = CSSystem::su11(0.75);
  const PhasePoint seed = PhasePoint::disk(cplx(0.2, -0.1));
  const OrbitSpec orbit = OrbitSpec::open(sys, GeneratorSpec::k0_plus_k2(), seed, -12, 12);
  for (const auto& n : orbit_points(orbit, 41)) {
    const GroupAction g = group_action(sys, GeneratorSpec::k0_plus_k2(), n.chi, seed);
    EXPECT_LT(point_distance(g.point, n.point), 1e-12);
    EXPECT_NEAR(wrap_phase(g.phase - n.phase), 0.0, 1e-10);
  }
}

TEST(OrbitSpecErrors, Preconditions) {
  try {
    OrbitSpec::closed(CSSystem::su2(1), GeneratorSpec::jz(), PhasePoint::sphere(0, 0));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FixedPoint);
  }
  EXPECT_THROW(OrbitSpec::closed(CSSystem::h4(), GeneratorSpec::q(), PhasePoint::plane(1, 0)), Error);
  EXPECT_THROW(OrbitSpec::closed(CSSystem::h4(), GeneratorSpec::n(), PhasePoint::plane(1, 0), 1.0), Error);
}

TEST(EigenstateProperty, ClosedResidualContract) {
  const double r = 1.0 / std::sqrt(3.0);
  struct C {
    CSSystem sys;
    GeneratorSpec gen;
    std::vector<double> targets;
  };
  const std::vector<C> cases{
      {CSSystem::h4(64), GeneratorSpec::n(), {1, 2, 5, 10}},
      {CSSystem::h4_scaled(0.7, 96), GeneratorSpec::ns(), {1, 3}},
      {CSSystem::h4_two_mode(16), GeneratorSpec::ntotal(), {1, 2, 3}},
      {CSSystem::su2(2.5), GeneratorSpec::jz(), {-1.5, 0.5, 1.5}},
      {CSSystem::su2(2.5), GeneratorSpec::jn({r, r, r}), {-0.5, 1.5}},
      {CSSystem::su11(0.75, 256), GeneratorSpec::k0(), {1.75, 3.75}},
      {CSSystem::su11(3, 256), GeneratorSpec::k0(), {4, 6}},
  };
  for (const auto& c : cases)
    for (double t0 : c.targets) {
      const EigenstateResult res = build_eigenstate(make_plan(in_phase_orbit(c.sys, c.gen, t0), t0));
      EXPECT_LE(res.residual, 1e-6) << to_string(c.gen.kind()) << " t0 " << t0;
      EXPECT_LT(res.quantization->defect, 1e-8) << to_string(c.gen.kind()) << " t0 " << t0;
    }
}

TEST(EigenstateProperty, OpenResidualContract) {
  struct C {
    CSSystem sys;
    GeneratorSpec gen;
    double t0;
  };
  const std::vector<C> cases{
      {CSSystem::h4(160), GeneratorSpec::q(), -0.5},
      {CSSystem::h4(160), GeneratorSpec::p(), 1.0},
      {CSSystem::su11(3, 512), GeneratorSpec::k1(), 1.5},
      {CSSystem::su11(3, 512), GeneratorSpec::k2(), 2.0},
      {CSSystem::su11(3, 512), GeneratorSpec::k0_plus_k1(), 2.0},
      {CSSystem::su11(3, 512), GeneratorSpec::k0_plus_k2(), 4.0},
  };
  for (const auto& c : cases) {
    const EigenstateResult res = build_eigenstate(make_plan(in_phase_orbit(c.sys, c.gen, c.t0), c.t0));
    EXPECT_LE(res.residual, 1e-4) << to_string(c.gen.kind());
    EXPECT_FALSE(res.quantization.has_value());
  }
}

TEST(EigenstateProperty, NullStateLaw) {
  struct C {
    OrbitSpec orbit;
    double t0;
  };
  const std::vector<C> cases{
      {OrbitSpec::closed(CSSystem::h4(64), GeneratorSpec::n(), PhasePoint::plane(std::sqrt(2.6), 0)), 1.3},
      {OrbitSpec::closed(CSSystem::h4(64), GeneratorSpec::n(), PhasePoint::plane(std::sqrt(5.0), 0)), 2.5},
      {OrbitSpec::closed(CSSystem::su2(2), GeneratorSpec::jz(), PhasePoint::sphere(std::acos(0.25), 0)), 0.5},
      {OrbitSpec::closed(CSSystem::su11(3, 128), GeneratorSpec::k0(), PhasePoint::disk(0.4)), 4.5},
  };
  for (const auto& c : cases) {
    ASSERT_GE(quantization_check(c.orbit, c.t0).defect, 0.1);
    double prev = build_eigenstate(make_plan(c.orbit, c.t0, 128)).raw_norm;
    for (int nodes : {256, 512, 1024}) {
      const double cur = build_eigenstate(make_plan(c.orbit, c.t0, nodes)).raw_norm;
      EXPECT_LE(cur, prev / 10) << to_string(c.orbit.generator().kind()) << " nodes " << nodes;
      prev = cur;
    }
    EXPECT_LT(prev, 1e-6);
  }
}

TEST(EigenstateProperty, StartPointIndependence) {
  for (int m : {1, 3, 6}) {
    const EigenstateResult base = fock(m, std::sqrt(2.0 * m));
    for (int i = 0; i < 5; ++i) {
      const EigenstateResult shifted = fock(m, std::sqrt(2.0 * m), 512, uniform(0, 2 * pi));
      EXPECT_LT(ray_distance(base.state, shifted.state), 1e-8);
    }
  }
  const CSSystem sys = CSSystem::su2(2);
  const OrbitSpec orbit = in_phase_orbit(sys, GeneratorSpec::jz(), 1.0);
  const StateVector a = build_eigenstate(make_plan(orbit, 1.0)).state;
  const StateVector b = build_eigenstate(make_plan(orbit, 1.0, 0, 1.234)).state;
  EXPECT_LT(ray_distance(a, b), 1e-8);
}

TEST(EigenstateProperty, OrbitChoiceIndependence) {
  for (int m : {1, 2, 4}) {
    std::vector<StateVector> states;
    for (double f : {0.8, 1.0, 1.25}) states.push_back(fock(m, f * std::sqrt(2.0 * m)).state);
    for (std::size_t i = 0; i < states.size(); ++i)
      for (std::size_t j = i + 1; j < states.size(); ++j) EXPECT_GE(1 - ray_distance(states[i], states[j]), 1 - 1e-8);
  }
}

TEST(EigenstateProperty, DegenerateTwoModeFamily) {
  const CSSystem sys = CSSystem::h4_two_mode(16);
  for (int i = 0; i < 8; ++i) {
    const double alpha = uniform(0, pi / 2);
    const double beta = uniform(0, 2 * pi);
    // |z1|^2 + |z2|^2 = 1 with z1 = cos(alpha), z2 = sin(alpha) e^{i beta}.
    const PhasePoint seed = PhasePoint::two_mode(std::sqrt(2.0) * std::cos(alpha), 0, std::sqrt(2.0) * std::sin(alpha) * std::cos(beta),
                                                 std::sqrt(2.0) * std::sin(alpha) * std::sin(beta));
    const EigenstateResult r = build_eigenstate(make_plan(OrbitSpec::closed(sys, GeneratorSpec::ntotal(), seed), 1.0));
    EXPECT_LE(r.residual, 1e-8);
    const cplx c10 = r.state.coeffs[16], c01 = r.state.coeffs[1];
    EXPECT_NEAR(std::norm(c10) + std::norm(c01), 1.0, 1e-10);
    EXPECT_NEAR(std::abs(c01 / c10), std::tan(alpha), 1e-8);
  }
}

TEST(EigenstateProperty, AgreesWithMatrixOracle) {
  const CSSystem sys = CSSystem::su11(3.0, 128);
  for (int m : {1, 2, 4}) {
    const MatrixEigenpair o = matrix_eigenstate(sys, GeneratorSpec::k0(), 3.0 + m);
    const StateVector built = build_eigenstate(make_plan(in_phase_orbit(sys, GeneratorSpec::k0(), 3.0 + m), 3.0 + m)).state;
    EXPECT_NEAR(o.eigenvalue, 3.0 + m, 1e-12);
    EXPECT_LT(ray_distance(o.state, built), 1e-10);
  }
  const CSSystem spin = CSSystem::su2(1.5);
  const GeneratorSpec jn = GeneratorSpec::jn({0.6, 0.8, 0.0});
  const MatrixEigenpair o = matrix_eigenstate(spin, jn, 0.5);
  const StateVector built = build_eigenstate(make_plan(in_phase_orbit(spin, jn, 0.5), 0.5)).state;
  EXPECT_LT(ray_distance(o.state, built), 1e-10);
}

TEST(EllipseSuperposition, PointsOnEllipseAndInPhase) {
  const CSSystem sys = CSSystem::h4(64);
  const EllipseSuperposition e = ellipse_in_phase_superposition(sys, 2.0, 1.0, 300);
  ASSERT_EQ(e.points.size(), 300u);
  for (const auto& p : e.points) {
    const auto& c = p.as_plane();
    EXPECT_NEAR(c.q * c.q / 4 + c.p * c.p, 1.0, 1e-12);
  }
  // Equal arc length: neighbouring chords agree to O(h^2).
  double lo = 1e300, hi = 0;
  for (std::size_t i = 0; i < e.points.size(); ++i) {
    const double d = point_distance(e.points[i], e.points[(i + 1) % e.points.size()]);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  EXPECT_LT((hi - lo) / hi, 1e-3);
  EXPECT_NEAR(e.state.norm(), 1.0, 1e-12);
}
