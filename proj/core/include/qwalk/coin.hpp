#pragma once

// Coin-space algebra shared by every other module: angles, 2x2 complex
// matrices, Bloch vectors and the four-angle coin family
//
//   C = e^{-i delta} [[ cos(theta) e^{i alpha},            sin(theta) e^{i(alpha+beta)} ],
//                     [ -sin(theta) e^{-i(alpha+beta)},    cos(theta) e^{-i alpha}     ]]

#include <array>
#include <complex>
#include <numbers>

namespace qwalk {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

/// Tolerance for pure 2x2 algebra identities.
inline constexpr double kAlgebraTol = 1e-14;
/// Tolerance for operator identities on finite rings.
inline constexpr double kOperatorTol = 1e-12;
/// |sin(theta)| at or below this counts as a gap closing.
inline constexpr double kGaplessTol = 1e-12;

/// Reduces an angle to (-pi, pi].
double wrap_angle(double x) noexcept;

/// Sign with sgn(0) = 0.
inline int sgn(double x) noexcept { return (x > 0.0) - (x < 0.0); }

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double dot(const Vec3& o) const noexcept { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const noexcept {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const noexcept;
  Vec3 normalized() const;

  Vec3 operator-() const noexcept { return {-x, -y, -z}; }
  Vec3 operator+(const Vec3& o) const noexcept { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const noexcept { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const noexcept { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const noexcept { return {x / s, y / s, z / s}; }

  static constexpr Vec3 unit_x() noexcept { return {1.0, 0.0, 0.0}; }
  static constexpr Vec3 unit_y() noexcept { return {0.0, 1.0, 0.0}; }
  static constexpr Vec3 unit_z() noexcept { return {0.0, 0.0, 1.0}; }
};

inline Vec3 operator*(double s, const Vec3& v) noexcept { return v * s; }

/// Complex 3-vector, the coefficients of a Pauli expansion.
using CVec3 = std::array<cplx, 3>;

/// Row-major 2x2 complex matrix.
struct Mat2 {
  std::array<cplx, 4> m{};

  constexpr Mat2() = default;
  constexpr Mat2(cplx a, cplx b, cplx c, cplx d) : m{a, b, c, d} {}

  cplx& operator()(int r, int c) noexcept { return m[2 * r + c]; }
  const cplx& operator()(int r, int c) const noexcept { return m[2 * r + c]; }

  static constexpr Mat2 identity() noexcept { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Mat2 sigma_x() noexcept { return {0.0, 1.0, 1.0, 0.0}; }
  static constexpr Mat2 sigma_y() noexcept { return {0.0, -kI, kI, 0.0}; }
  static constexpr Mat2 sigma_z() noexcept { return {1.0, 0.0, 0.0, -1.0}; }
  static Mat2 diag(cplx a, cplx d) noexcept { return {a, 0.0, 0.0, d}; }

  Mat2 adjoint() const noexcept;
  Mat2 conj() const noexcept;
  cplx det() const noexcept { return m[0] * m[3] - m[1] * m[2]; }
  cplx trace() const noexcept { return m[0] + m[3]; }
  /// Inverse of an invertible matrix; callers pass unitaries in practice.
  Mat2 inverse() const;

  /// Largest singular value.
  double norm() const noexcept;
  /// Largest entry modulus.
  double max_abs() const noexcept;

  bool is_unitary(double tol = kAlgebraTol) const noexcept;
  bool is_special_unitary(double tol = kAlgebraTol) const noexcept;
  bool is_hermitian(double tol = kAlgebraTol) const noexcept;

  /// Eigenvalues of a Hermitian matrix, ascending.
  std::array<double, 2> hermitian_eigenvalues() const noexcept;

  Mat2 operator+(const Mat2& o) const noexcept;
  Mat2 operator-(const Mat2& o) const noexcept;
  Mat2 operator*(const Mat2& o) const noexcept;
  Mat2 operator*(cplx s) const noexcept;
};

inline Mat2 operator*(cplx s, const Mat2& a) noexcept { return a * s; }

/// v . sigma with a real vector.
Mat2 pauli_dot(const Vec3& v) noexcept;
/// c0 I + c . sigma.
Mat2 pauli_reconstruct(cplx c0, const CVec3& c) noexcept;

struct PauliDecomposition {
  cplx c0;
  CVec3 c;
};

/// Writes m = c0 I + c . sigma.
PauliDecomposition pauli_decompose(const Mat2& m) noexcept;

/// exp(i a . sigma) = cos|a| I + i sin|a| (a/|a|) . sigma
Mat2 su2_exp(const Vec3& a) noexcept;

/// Real vector r with M (v . sigma) M^dagger = r . sigma, for unitary M.
Vec3 rotate_bloch(const Mat2& u, const Vec3& v) noexcept;

struct Spinor {
  cplx right;  // |->>
  cplx left;   // |<-

  double norm2() const noexcept { return std::norm(right) + std::norm(left); }
};

inline Spinor operator*(const Mat2& a, const Spinor& s) noexcept {
  return {a(0, 0) * s.right + a(0, 1) * s.left, a(1, 0) * s.right + a(1, 1) * s.left};
}

/// Coin angles. All four are reduced to (-pi, pi] on construction.
class CoinParams {
 public:
  CoinParams() = default;
  CoinParams(double delta, double alpha, double beta, double theta) noexcept;

  double delta() const noexcept { return delta_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double theta() const noexcept { return theta_; }
  /// alpha + beta, unreduced.
  double alpha_prime() const noexcept { return alpha_ + beta_; }

  /// theta outside {0, pi}: both quasienergy gaps are open.
  bool is_gapped() const noexcept;

  CoinParams with_theta(double theta) const noexcept {
    return {delta_, alpha_, beta_, theta};
  }
  /// Same (delta, alpha, beta) up to tol.
  bool same_family(const CoinParams& o, double tol = kOperatorTol) const noexcept;

 private:
  double delta_ = 0.0;
  double alpha_ = 0.0;
  double beta_ = 0.0;
  double theta_ = 0.0;
};

Mat2 coin_matrix(const CoinParams& p) noexcept;

/// One site's factor of the gauge unitary
/// W = (sum_x e^{i alpha x}|x><x|) (x) diag(1, e^{-i beta}).
struct GaugeFactor {
  cplx site_phase;
  Mat2 coin_part;
};

GaugeFactor gauge_unitary_w(double alpha, double beta, long x) noexcept;

/// Antiunitary particle-hole operator Omega = W^2 K: complex-conjugate in the
/// position / sigma_z basis, then multiply site x by e^{2 i alpha x} and the coin
/// by diag(1, e^{-2 i beta}).
struct PhsOperator {
  double alpha = 0.0;
  double beta = 0.0;

  /// The W^2 factor at site x.
  GaugeFactor unitary_part(long x) const noexcept;
  /// Omega acting on a single site amplitude; K is applied first.
  Spinor apply(long x, const Spinor& s) const noexcept;
};

PhsOperator phs_operator(double alpha, double beta) noexcept;

/// alpha is a lattice momentum 2 pi m / n on a ring of n sites.
bool is_commensurate(double alpha, long n, double tol = 1e-9) noexcept;

}  // namespace qwalk
