#include "cspace/kernels.hpp"

#include <cmath>
#include <numbers>

namespace cspace {

using std::numbers::pi;

namespace {

constexpr double kTailRatio = 1e-10;

bool tail_fails(const Eigen::VectorXcd& v) {
  if (v.size() < 2) return false;
  const double peak = v.cwiseAbs().maxCoeff();
  return peak > 0.0 && std::abs(v[v.size() - 1]) >= kTailRatio * peak;
}

// <n|z> for n < cutoff.
Eigen::VectorXcd oscillator_coeffs(cplx z, int cutoff) {
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(cutoff);
  const double r = std::abs(z);
  if (r == 0.0) {
    c[0] = 1.0;
    return c;
  }
  const double log_r = std::log(r);
  const double arg = std::arg(z);
  double log_mag = -0.5 * r * r;
  for (int n = 0; n < cutoff; ++n) {
    if (n > 0) log_mag += log_r - 0.5 * std::log(static_cast<double>(n));
    c[n] = std::polar(std::exp(log_mag), n * arg);
  }
  return c;
}

struct HalfAngle {
  double c;
  double s;
  double phi;
};

HalfAngle half_angle(const SphereCoords& p) { return {std::cos(p.theta / 2.0), std::sin(p.theta / 2.0), p.phi}; }

// <j, j-p|theta, phi> for p = 0..2j.
Eigen::VectorXcd spin_coeffs(double j, const SphereCoords& point) {
  const int dim = static_cast<int>(std::lround(2.0 * j)) + 1;
  const int n = dim - 1;
  const HalfAngle h = half_angle(point);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
  const double log_c = h.c > 0.0 ? std::log(h.c) : -INFINITY;
  const double log_s = h.s > 0.0 ? std::log(h.s) : -INFINITY;
  for (int p = 0; p <= n; ++p) {
    const double log_binom = std::lgamma(n + 1.0) - std::lgamma(p + 1.0) - std::lgamma(n - p + 1.0);
    double log_mag = 0.5 * log_binom;
    if (n - p > 0) log_mag += (n - p) * log_c;
    if (p > 0) log_mag += p * log_s;
    out[p] = std::isfinite(log_mag) ? std::polar(std::exp(log_mag), p * h.phi) : cplx(0.0);
  }
  return out;
}

// <k, m|zeta> for m < cutoff.
Eigen::VectorXcd su11_coeffs(double k, cplx zeta, int cutoff) {
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(cutoff);
  const double r = std::abs(zeta);
  const double log_pref = k * std::log1p(-r * r);
  if (r == 0.0) {
    c[0] = 1.0;
    return c;
  }
  const double log_r = std::log(r);
  const double arg = std::arg(zeta);
  // log of Gamma(2k+m)/(m! Gamma(2k)), by recurrence in m.
  double log_g = 0.0;
  for (int m = 0; m < cutoff; ++m) {
    if (m > 0) log_g += std::log((2.0 * k + m - 1.0) / m);
    c[m] = std::polar(std::exp(log_pref + 0.5 * log_g + m * log_r), m * arg);
  }
  return c;
}

Eigen::MatrixXcd lowering(int cutoff) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(cutoff, cutoff);
  for (int n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

// Spin-1/2 rotation exp(-i chi n.sigma/2).
Eigen::Matrix2cd spin_half_rotation(const std::array<double, 3>& n, double chi) {
  const cplx i(0.0, 1.0);
  const double c = std::cos(chi / 2.0);
  const double s = std::sin(chi / 2.0);
  Eigen::Matrix2cd u;
  u(0, 0) = c - i * s * n[2];
  u(0, 1) = -i * s * cplx(n[0], -n[1]);
  u(1, 0) = -i * s * cplx(n[0], n[1]);
  u(1, 1) = c + i * s * n[2];
  return u;
}

// 2x2 realization A of -i (a0 K0 + a1 K1 + a2 K2).
Eigen::Matrix2cd su11_generator(const std::array<double, 3>& a) {
  const cplx i(0.0, 1.0);
  const cplx b = cplx(a[1], -a[2]) / 2.0;
  Eigen::Matrix2cd A;
  A << -i * a[0] / 2.0, i * b, -i * std::conj(b), i * a[0] / 2.0;
  return A;
}

// exp(chi A).
Eigen::Matrix2cd su11_element(const std::array<double, 3>& a, double chi) {
  const Eigen::Matrix2cd A = su11_generator(a);
  // A is traceless so A^2 = -det(A) I.
  const cplx s2 = -(A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0));
  const cplx s = std::sqrt(s2);
  Eigen::Matrix2cd g;
  if (std::abs(s) * std::abs(chi) < 1e-8) {
    g = Eigen::Matrix2cd::Identity() + chi * A + (chi * chi / 2.0) * s2 * Eigen::Matrix2cd::Identity();
  } else {
    g = std::cosh(chi * s) * Eigen::Matrix2cd::Identity() + (std::sinh(chi * s) / s) * A;
  }
  return g;
}

cplx su11_denominator(const std::array<double, 3>& a, double chi, cplx zeta) {
  const Eigen::Matrix2cd g = su11_element(a, chi);
  return std::conj(g(0, 0)) - zeta * std::conj(g(0, 1));
}

// Continuous branch of arg w(chi) on [lo, hi], given its value at lo.
double continue_arg(const std::array<double, 3>& a, cplx zeta, double lo, double arg_lo, double hi, int depth) {
  const double next = std::arg(su11_denominator(a, hi, zeta));
  const double step = wrap_phase(next - arg_lo);
  if (std::abs(step) < pi / 4.0 || depth > 60) return arg_lo + step;
  const double mid = 0.5 * (lo + hi);
  const double arg_mid = continue_arg(a, zeta, lo, arg_lo, mid, depth + 1);
  return continue_arg(a, zeta, mid, arg_mid, hi, depth + 1);
}

GroupAction su11_action(double k, const std::array<double, 3>& a, double chi, cplx zeta) {
  const Eigen::Matrix2cd g = su11_element(a, chi);
  const cplx alpha = g(0, 0);
  const cplx beta = g(0, 1);
  const cplx w = std::conj(alpha) - zeta * std::conj(beta);
  cplx z2 = (zeta * alpha - beta) / w;
  // Keep the image strictly inside the disk; 1 - |z'|^2 = (1 - |z|^2)/|w|^2.
  const double inside = (1.0 - std::norm(zeta)) / std::norm(w);
  if (!(inside > 0.0)) throw Error(ErrorCode::OutsideDisk, "group action left the disk in floating point");
  if (std::norm(z2) >= 1.0) z2 *= std::sqrt((1.0 - inside) / std::norm(z2));
  // Walk to chi in chunks short against the rotation rate |s| of the
  // one-parameter subgroup, so no chunk can hide a full turn of w.
  const double rate = std::max(0.25, su11_generator(a).cwiseAbs().maxCoeff());
  const int chunks = std::max(1, static_cast<int>(std::ceil(std::abs(chi) * rate / 0.5)));
  double arg_w = 0.0;
  for (int c = 0; c < chunks; ++c)
    arg_w = continue_arg(a, zeta, chi * c / chunks, arg_w, chi * (c + 1) / chunks, 0);
  return {PhasePoint::disk(z2), -2.0 * k * arg_w};
}

GroupAction spin_action(double j, const std::array<double, 3>& axis, double chi, const SphereCoords& p) {
  const Eigen::Matrix2cd u = spin_half_rotation(axis, chi);
  const HalfAngle h = half_angle(p);
  Eigen::Vector2cd v(h.c, std::polar(h.s, h.phi));
  const Eigen::Vector2cd w = u * v;
  const double theta = 2.0 * std::atan2(std::abs(w[1]), std::abs(w[0]));
  double phi = 0.0;
  if (std::abs(w[1]) > 0.0) phi = std::arg(w[1]) - (std::abs(w[0]) > 0.0 ? std::arg(w[0]) : 0.0);
  const PhasePoint out = PhasePoint::sphere(theta, phi);
  const HalfAngle h2 = half_angle(out.as_sphere());
  Eigen::Vector2cd v2(h2.c, std::polar(h2.s, h2.phi));
  // 2j is an integer, so the branch of gamma does not matter.
  const double gamma = std::arg(v2.dot(w));
  return {out, 2.0 * j * gamma};
}

}  // namespace

cplx oscillator_label(const CSSystem& system, const PhasePoint& a) {
  const auto& c = a.as_plane();
  if (system.kind() == SystemKind::H4Scaled) {
    const double s = system.scale();
    return cplx(c.q * s, c.p / s) / std::sqrt(2.0);
  }
  return cplx(c.q, c.p) / std::sqrt(2.0);
}

cplx overlap_cs(const CSSystem& system, const PhasePoint& a, const PhasePoint& b) {
  require_manifold(system, a);
  require_manifold(system, b);
  switch (system.kind()) {
    case SystemKind::H4:
    case SystemKind::H4Scaled: {
      const cplx za = oscillator_label(system, a);
      const cplx zb = oscillator_label(system, b);
      return std::exp(-0.5 * std::norm(za) - 0.5 * std::norm(zb) + std::conj(za) * zb);
    }
    case SystemKind::H4TwoMode: {
      const auto& x = a.as_two_mode();
      const auto& y = b.as_two_mode();
      const double r2 = std::sqrt(2.0);
      const cplx a1(x.q1 / r2, x.p1 / r2), a2(x.q2 / r2, x.p2 / r2);
      const cplx b1(y.q1 / r2, y.p1 / r2), b2(y.q2 / r2, y.p2 / r2);
      return std::exp(-0.5 * (std::norm(a1) + std::norm(a2) + std::norm(b1) + std::norm(b2)) + std::conj(a1) * b1 +
                      std::conj(a2) * b2);
    }
    case SystemKind::SU2: {
      const HalfAngle ha = half_angle(a.as_sphere());
      const HalfAngle hb = half_angle(b.as_sphere());
      const cplx base = ha.c * hb.c + ha.s * hb.s * std::polar(1.0, hb.phi - ha.phi);
      return std::pow(base, static_cast<int>(std::lround(2.0 * system.spin())));
    }
    case SystemKind::SU11: {
      const double k = system.bargmann_index();
      const cplx za = a.as_disk().zeta;
      const cplx zb = b.as_disk().zeta;
      const double log_mag = k * std::log1p(-std::norm(za)) + k * std::log1p(-std::norm(zb));
      return std::exp(log_mag - 2.0 * k * std::log(1.0 - std::conj(za) * zb));
    }
  }
  return 0.0;
}

StateVector cs_coefficients(const CSSystem& system, const PhasePoint& a) {
  require_manifold(system, a);
  StateVector out{system, {}, false};
  switch (system.kind()) {
    case SystemKind::H4:
    case SystemKind::H4Scaled:
      out.coeffs = oscillator_coeffs(oscillator_label(system, a), system.cutoff());
      out.truncated = tail_fails(out.coeffs);
      break;
    case SystemKind::H4TwoMode: {
      const auto& x = a.as_two_mode();
      const int c = system.cutoff();
      const Eigen::VectorXcd v1 = oscillator_coeffs(cplx(x.q1, x.p1) / std::sqrt(2.0), c);
      const Eigen::VectorXcd v2 = oscillator_coeffs(cplx(x.q2, x.p2) / std::sqrt(2.0), c);
      out.coeffs.resize(c * c);
      for (int n1 = 0; n1 < c; ++n1)
        for (int n2 = 0; n2 < c; ++n2) out.coeffs[n1 * c + n2] = v1[n1] * v2[n2];
      out.truncated = tail_fails(v1) || tail_fails(v2);
      break;
    }
    case SystemKind::SU2: out.coeffs = spin_coeffs(system.spin(), a.as_sphere()); break;
    case SystemKind::SU11:
      out.coeffs = su11_coeffs(system.bargmann_index(), a.as_disk().zeta, system.cutoff());
      out.truncated = tail_fails(out.coeffs);
      break;
  }
  return out;
}

cplx position_overlap_h4(double q_prime, const PlaneCoords& a) {
  const double d = q_prime - a.q;
  return std::pow(pi, -0.25) * std::exp(cplx(-0.5 * d * d, a.p * (q_prime - 0.5 * a.q)));
}

double expectation_generator(const CSSystem& system, const GeneratorSpec& gen, const PhasePoint& a) {
  require_compatible(system, gen);
  require_manifold(system, a);
  switch (gen.kind()) {
    case GeneratorKind::Q: return a.as_plane().q;
    case GeneratorKind::P: return a.as_plane().p;
    case GeneratorKind::N:
    case GeneratorKind::Ns: return std::norm(oscillator_label(system, a));
    case GeneratorKind::Ntotal: {
      const auto& x = a.as_two_mode();
      return 0.5 * (x.q1 * x.q1 + x.p1 * x.p1 + x.q2 * x.q2 + x.p2 * x.p2);
    }
    case GeneratorKind::Jz: return system.spin() * std::cos(a.as_sphere().theta);
    case GeneratorKind::Jn: {
      const auto n = a.bloch();
      const auto& ax = gen.axis();
      return system.spin() * (n[0] * ax[0] + n[1] * ax[1] + n[2] * ax[2]);
    }
    default: {
      const double k = system.bargmann_index();
      const cplx z = a.as_disk().zeta;
      const double r2 = std::norm(z);
      const double d = 1.0 - r2;
      const auto c = gen.su11_components();
      return c[0] * k * (1.0 + r2) / d + c[1] * 2.0 * k * z.real() / d - c[2] * 2.0 * k * z.imag() / d;
    }
  }
}

Eigen::MatrixXcd generator_matrix(const CSSystem& system, const GeneratorSpec& gen) {
  require_compatible(system, gen);
  const cplx i(0.0, 1.0);
  const int dim = system.dimension();
  switch (gen.kind()) {
    case GeneratorKind::Q: {
      const Eigen::MatrixXcd a = lowering(dim);
      return (a + a.adjoint()) / std::sqrt(2.0);
    }
    case GeneratorKind::P: {
      const Eigen::MatrixXcd a = lowering(dim);
      return i * (a.adjoint() - a) / std::sqrt(2.0);
    }
    case GeneratorKind::N:
    case GeneratorKind::Ns: {
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
      for (int n = 0; n < dim; ++n) m(n, n) = n;
      return m;
    }
    case GeneratorKind::Ntotal: {
      const int c = system.cutoff();
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
      for (int n1 = 0; n1 < c; ++n1)
        for (int n2 = 0; n2 < c; ++n2) m(n1 * c + n2, n1 * c + n2) = n1 + n2;
      return m;
    }
    case GeneratorKind::Jz:
    case GeneratorKind::Jn: {
      const double j = system.spin();
      Eigen::MatrixXcd jz = Eigen::MatrixXcd::Zero(dim, dim);
      Eigen::MatrixXcd jp = Eigen::MatrixXcd::Zero(dim, dim);
      for (int p = 0; p < dim; ++p) {
        const double m = j - p;
        jz(p, p) = m;
        if (p > 0) jp(p - 1, p) = std::sqrt((j - m) * (j + m + 1.0));
      }
      if (gen.kind() == GeneratorKind::Jz) return jz;
      const Eigen::MatrixXcd jx = (jp + jp.adjoint()) / 2.0;
      const Eigen::MatrixXcd jy = (jp - jp.adjoint()) / (2.0 * i);
      const auto& n = gen.axis();
      return n[0] * jx + n[1] * jy + n[2] * jz;
    }
    default: {
      const double k = system.bargmann_index();
      Eigen::MatrixXcd k0 = Eigen::MatrixXcd::Zero(dim, dim);
      Eigen::MatrixXcd kp = Eigen::MatrixXcd::Zero(dim, dim);
      for (int m = 0; m < dim; ++m) {
        k0(m, m) = k + m;
        if (m + 1 < dim) kp(m + 1, m) = std::sqrt((m + 1.0) * (m + 2.0 * k));
      }
      const Eigen::MatrixXcd k1 = (kp + kp.adjoint()) / 2.0;
      const Eigen::MatrixXcd k2 = (kp - kp.adjoint()) / (2.0 * i);
      const auto c = gen.su11_components();
      return c[0] * k0 + c[1] * k1 + c[2] * k2;
    }
  }
}

GroupAction group_action_unwrapped(const CSSystem& system, const GeneratorSpec& gen, double chi,
                                   const PhasePoint& a) {
  require_compatible(system, gen);
  require_manifold(system, a);
  switch (gen.kind()) {
    case GeneratorKind::Q: {
      const auto& c = a.as_plane();
      return {PhasePoint::plane(c.q, c.p - chi), -0.5 * chi * c.q};
    }
    case GeneratorKind::P: {
      const auto& c = a.as_plane();
      return {PhasePoint::plane(c.q + chi, c.p), -0.5 * chi * c.p};
    }
    case GeneratorKind::N: {
      const cplx z = a.z() * std::polar(1.0, -chi);
      return {PhasePoint::plane(std::sqrt(2.0) * z.real(), std::sqrt(2.0) * z.imag()), 0.0};
    }
    case GeneratorKind::Ns: {
      const double s = system.scale();
      const cplx z = oscillator_label(system, a) * std::polar(1.0, -chi);
      return {PhasePoint::plane(std::sqrt(2.0) * z.real() / s, std::sqrt(2.0) * z.imag() * s), 0.0};
    }
    case GeneratorKind::Ntotal: {
      const auto& x = a.as_two_mode();
      const double c = std::cos(chi), s = std::sin(chi);
      // z -> z e^{-i chi} in each mode.
      return {PhasePoint::two_mode(c * x.q1 + s * x.p1, c * x.p1 - s * x.q1, c * x.q2 + s * x.p2, c * x.p2 - s * x.q2),
              0.0};
    }
    case GeneratorKind::Jz: return spin_action(system.spin(), {0.0, 0.0, 1.0}, chi, a.as_sphere());
    case GeneratorKind::Jn: return spin_action(system.spin(), gen.axis(), chi, a.as_sphere());
    default: return su11_action(system.bargmann_index(), gen.su11_components(), chi, a.as_disk().zeta);
  }
}

GroupAction group_action(const CSSystem& system, const GeneratorSpec& gen, double chi, const PhasePoint& a) {
  GroupAction g = group_action_unwrapped(system, gen, chi, a);
  g.phase = wrap_phase(g.phase);
  return g;
}

int default_h4_cutoff(double max_abs_z2) {
  return std::max(64, static_cast<int>(std::ceil(4.0 * max_abs_z2 + 10.0)));
}

int default_su11_cutoff(double k, double r) {
  if (!(r < 1.0)) throw Error(ErrorCode::OutsideDisk, "radius must be below 1");
  if (r == 0.0) return 64;
  const double log_r = std::log(r);
  const double lg2k = std::lgamma(2.0 * k);
  double peak = -INFINITY;
  constexpr int kMax = 1 << 20;
  for (int m = 0; m < kMax; ++m) {
    const double lm = 0.5 * (std::lgamma(2.0 * k + m) - std::lgamma(m + 1.0) - lg2k) + m * log_r;
    peak = std::max(peak, lm);
    if (lm < peak && lm - peak < std::log(1e-16)) return std::max(64, m + 1);
  }
  return kMax;
}

}  // namespace cspace
