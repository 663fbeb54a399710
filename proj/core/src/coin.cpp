#include "qwalk/coin.hpp"

#include <algorithm>
#include <cmath>

#include "qwalk/error.hpp"

namespace qwalk {

double wrap_angle(double x) noexcept {
  double r = std::remainder(x, kTwoPi);  // [-pi, pi]
  if (r <= -kPi) r += kTwoPi;
  return r;
}

double Vec3::norm() const noexcept { return std::sqrt(dot(*this)); }

Vec3 Vec3::normalized() const {
  const double n = norm();
  if (n == 0.0) throw Error(ErrorKind::InvalidArgument, "cannot normalize the zero vector");
  return *this / n;
}

Mat2 Mat2::adjoint() const noexcept {
  return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
}

Mat2 Mat2::conj() const noexcept {
  return {std::conj(m[0]), std::conj(m[1]), std::conj(m[2]), std::conj(m[3])};
}

Mat2 Mat2::inverse() const {
  const cplx d = det();
  if (std::abs(d) == 0.0) throw Error(ErrorKind::InvalidArgument, "singular 2x2 matrix");
  return Mat2{m[3], -m[1], -m[2], m[0]} * (1.0 / d);
}

double Mat2::norm() const noexcept {
  // Largest eigenvalue of the Hermitian A^dagger A.
  const Mat2 g = adjoint() * (*this);
  const double tr = g.trace().real();
  const double d = g.det().real();
  const double disc = std::max(0.0, 0.25 * tr * tr - d);
  return std::sqrt(std::max(0.0, 0.5 * tr + std::sqrt(disc)));
}

double Mat2::max_abs() const noexcept {
  double r = 0.0;
  for (const auto& e : m) r = std::max(r, std::abs(e));
  return r;
}

bool Mat2::is_unitary(double tol) const noexcept {
  return ((*this) * adjoint() - identity()).max_abs() <= tol;
}

bool Mat2::is_special_unitary(double tol) const noexcept {
  return is_unitary(tol) && std::abs(det() - 1.0) <= tol;
}

bool Mat2::is_hermitian(double tol) const noexcept {
  return ((*this) - adjoint()).max_abs() <= tol;
}

std::array<double, 2> Mat2::hermitian_eigenvalues() const noexcept {
  const double mean = 0.5 * (m[0].real() + m[3].real());
  const double half = 0.5 * (m[0].real() - m[3].real());
  const double r = std::hypot(half, std::abs(m[1]));
  return {mean - r, mean + r};
}

Mat2 Mat2::operator+(const Mat2& o) const noexcept {
  return {m[0] + o.m[0], m[1] + o.m[1], m[2] + o.m[2], m[3] + o.m[3]};
}

Mat2 Mat2::operator-(const Mat2& o) const noexcept {
  return {m[0] - o.m[0], m[1] - o.m[1], m[2] - o.m[2], m[3] - o.m[3]};
}

Mat2 Mat2::operator*(const Mat2& o) const noexcept {
  return {m[0] * o.m[0] + m[1] * o.m[2], m[0] * o.m[1] + m[1] * o.m[3],
          m[2] * o.m[0] + m[3] * o.m[2], m[2] * o.m[1] + m[3] * o.m[3]};
}

Mat2 Mat2::operator*(cplx s) const noexcept {
  return {m[0] * s, m[1] * s, m[2] * s, m[3] * s};
}

Mat2 pauli_dot(const Vec3& v) noexcept {
  return {v.z, cplx(v.x, -v.y), cplx(v.x, v.y), -v.z};
}

Mat2 pauli_reconstruct(cplx c0, const CVec3& c) noexcept {
  return {c0 + c[2], c[0] - kI * c[1], c[0] + kI * c[1], c0 - c[2]};
}

PauliDecomposition pauli_decompose(const Mat2& m) noexcept {
  // c_j = tr(sigma_j m) / 2
  const cplx c0 = 0.5 * (m(0, 0) + m(1, 1));
  const cplx cx = 0.5 * (m(0, 1) + m(1, 0));
  const cplx cy = 0.5 * kI * (m(0, 1) - m(1, 0));
  const cplx cz = 0.5 * (m(0, 0) - m(1, 1));
  return {c0, {cx, cy, cz}};
}

Mat2 su2_exp(const Vec3& a) noexcept {
  const double angle = a.norm();
  if (angle == 0.0) return Mat2::identity();
  const Vec3 axis = a / angle;
  return Mat2::identity() * std::cos(angle) + pauli_dot(axis) * (kI * std::sin(angle));
}

Vec3 rotate_bloch(const Mat2& u, const Vec3& v) noexcept {
  const auto d = pauli_decompose(u * pauli_dot(v) * u.adjoint());
  return {d.c[0].real(), d.c[1].real(), d.c[2].real()};
}

CoinParams::CoinParams(double delta, double alpha, double beta, double theta) noexcept
    : delta_(wrap_angle(delta)),
      alpha_(wrap_angle(alpha)),
      beta_(wrap_angle(beta)),
      theta_(wrap_angle(theta)) {}

bool CoinParams::is_gapped() const noexcept { return std::abs(std::sin(theta_)) > kGaplessTol; }

bool CoinParams::same_family(const CoinParams& o, double tol) const noexcept {
  auto close = [tol](double a, double b) { return std::abs(wrap_angle(a - b)) <= tol; };
  return close(delta_, o.delta_) && close(alpha_, o.alpha_) && close(beta_, o.beta_);
}

Mat2 coin_matrix(const CoinParams& p) noexcept {
  const double c = std::cos(p.theta());
  const double s = std::sin(p.theta());
  const cplx ea = std::polar(1.0, p.alpha());
  const cplx eab = std::polar(1.0, p.alpha_prime());
  const Mat2 su2{c * ea, s * eab, -s * std::conj(eab), c * std::conj(ea)};
  return su2 * std::polar(1.0, -p.delta());
}

GaugeFactor gauge_unitary_w(double alpha, double beta, long x) noexcept {
  return {std::polar(1.0, alpha * static_cast<double>(x)),
          Mat2::diag(1.0, std::polar(1.0, -beta))};
}

GaugeFactor PhsOperator::unitary_part(long x) const noexcept {
  return {std::polar(1.0, 2.0 * alpha * static_cast<double>(x)),
          Mat2::diag(1.0, std::polar(1.0, -2.0 * beta))};
}

Spinor PhsOperator::apply(long x, const Spinor& s) const noexcept {
  const auto w2 = unitary_part(x);
  const Spinor k{std::conj(s.right), std::conj(s.left)};
  const Spinor r = w2.coin_part * k;
  return {w2.site_phase * r.right, w2.site_phase * r.left};
}

PhsOperator phs_operator(double alpha, double beta) noexcept { return {alpha, beta}; }

bool is_commensurate(double alpha, long n, double tol) noexcept {
  const double m = alpha * static_cast<double>(n) / kTwoPi;
  return std::abs(m - std::round(m)) <= tol;
}

}  // namespace qwalk
