#pragma once

// Test-only reference constructions. Nothing here calls into the library's
// walk or momentum code paths; they rebuild the operators from their defining
// formulas so library results can be checked against them.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using cplx = std::complex<double>;
constexpr double pi = 3.14159265358979323846;
const cplx I{0.0, 1.0};

inline Eigen::Matrix2cd coin(double d, double a, double b, double t) {
  Eigen::Matrix2cd c;
  c << std::cos(t) * std::exp(I * a), std::sin(t) * std::exp(I * (a + b)),
      -std::sin(t) * std::exp(-I * (a + b)), std::cos(t) * std::exp(-I * a);
  return std::exp(-I * d) * c;
}

inline Eigen::Matrix2cd pauli(int j) {
  Eigen::Matrix2cd s;
  if (j == 0) s << 0, 1, 1, 0;
  if (j == 1) s << 0, -I, I, 0;
  if (j == 2) s << 1, 0, 0, -1;
  return s;
}

// Sites x = -N/2 .. N/2-1, index 2*(x+N/2)+c. S = sum_x |x+1><x| (x) P_right + |x-1><x| (x) P_left.
inline Eigen::MatrixXcd shift(long n) {
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  for (long x = -n / 2; x < n / 2; ++x) {
    const long i = x + n / 2;
    const long right = ((x + 1 + n / 2) % n + n) % n;
    const long left = ((x - 1 + n / 2) % n + n) % n;
    s(2 * right, 2 * i) = 1.0;
    s(2 * left + 1, 2 * i + 1) = 1.0;
  }
  return s;
}

inline Eigen::MatrixXcd coin_operator(double d, double a, double b, const std::vector<double>& thetas) {
  const long n = static_cast<long>(thetas.size());
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  for (long i = 0; i < n; ++i) c.block(2 * i, 2 * i, 2, 2) = coin(d, a, b, thetas[static_cast<std::size_t>(i)]);
  return c;
}

inline Eigen::MatrixXcd walk(double d, double a, double b, const std::vector<double>& thetas) {
  return shift(static_cast<long>(thetas.size())) * coin_operator(d, a, b, thetas);
}

inline std::vector<double> interface_profile(double t1, double t2, long n) {
  std::vector<double> th(static_cast<std::size_t>(n));
  for (long x = -n / 2; x < n / 2; ++x) th[static_cast<std::size_t>(x + n / 2)] = x < 0 ? t1 : t2;
  return th;
}

// W = diag_x(e^{i alpha x}) (x) diag(1, e^{-i beta}), dense.
inline Eigen::MatrixXcd gauge(double a, double b, long n, int power = 1) {
  Eigen::VectorXcd d(2 * n);
  for (long x = -n / 2; x < n / 2; ++x) {
    const long i = x + n / 2;
    d(2 * i) = std::exp(I * (power * a * static_cast<double>(x)));
    d(2 * i + 1) = std::exp(I * (power * (a * static_cast<double>(x) - b)));
  }
  return d.asDiagonal();
}

inline double spectral_norm(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

inline Eigen::Matrix2cd expm(const Eigen::Matrix2cd& m) { return m.exp(); }

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); }
  double angle() { return uniform(-pi, pi); }
  // |theta| in [lo, hi] with a random sign.
  double theta(double lo, double hi) {
    const double m = uniform(lo, hi);
    return uniform(0.0, 1.0) < 0.5 ? -m : m;
  }
  cplx gauss_c() {
    std::normal_distribution<double> g;
    return {g(gen), g(gen)};
  }
};

}  // namespace oracle
