#include "qwalk/momentum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "qwalk/error.hpp"
#include "qwalk/io.hpp"

namespace qwalk {

namespace {

// Numerator of n_k. Its norm is exactly sin(omega_k):
// sin^2 theta + cos^2 theta sin^2(k - alpha) = 1 - cos^2 theta cos^2(k - alpha).
Vec3 bloch_numerator(const CoinParams& p, double k) noexcept {
  const double s = std::sin(p.theta());
  const double c = std::cos(p.theta());
  const double kp = k - p.alpha_prime();
  return {s * std::sin(kp), -s * std::cos(kp), c * std::sin(k - p.alpha())};
}

}  // namespace

double dispersion(const CoinParams& p, double k) noexcept {
  const double cos_w = std::cos(p.theta()) * std::cos(k - p.alpha());
  const double sin_w = bloch_numerator(p, k).norm();
  return std::atan2(sin_w, cos_w);
}

BlochPoint bloch_point(const CoinParams& p, double k) noexcept {
  const Vec3 num = bloch_numerator(p, k);
  const double sin_w = num.norm();
  BlochPoint bp;
  bp.k = k;
  bp.omega = std::atan2(sin_w, std::cos(p.theta()) * std::cos(k - p.alpha()));
  if (sin_w < kDegenerateTol) {
    bp.degenerate = true;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    bp.n = {nan, nan, nan};
  } else {
    bp.n = num / sin_w;
  }
  return bp;
}

Vec3 bloch_vector(const CoinParams& p, double k) {
  const BlochPoint bp = bloch_point(p, k);
  if (bp.degenerate) {
    throw Error(ErrorKind::DegeneratePoint,
                "Bloch vector undefined at k=" + format_double(k) +
                    " (gap closing, theta=" + format_double(p.theta()) + ")");
  }
  return bp.n;
}

Mat2 bloch_hamiltonian(const CoinParams& p, double k) {
  const BlochPoint bp = bloch_point(p, k);
  if (bp.degenerate) {
    throw Error(ErrorKind::DegeneratePoint,
                "Bloch Hamiltonian undefined at k=" + format_double(k));
  }
  return Mat2::identity() * p.delta() + pauli_dot(bp.n) * bp.omega;
}

Mat2 momentum_shift(double k) noexcept {
  return Mat2::diag(std::polar(1.0, -k), std::polar(1.0, k));
}

Mat2 momentum_step(const CoinParams& p, double k) noexcept {
  return momentum_shift(k) * coin_matrix(p);
}

UnitaryBloch unitary_bloch(const Mat2& u, double phase) noexcept {
  // e^{i phase} u = cos w I - i sin w m . sigma
  UnitaryBloch out;
  out.phase = phase;
  const auto d = pauli_decompose(u * std::polar(1.0, phase));
  const Vec3 s{-d.c[0].imag(), -d.c[1].imag(), -d.c[2].imag()};
  const double sin_w = s.norm();
  out.omega = std::atan2(sin_w, d.c0.real());
  if (sin_w < kDegenerateTol) {
    out.degenerate = true;
  } else {
    out.n = s / sin_w;
  }
  return out;
}

std::vector<double> k_grid(std::size_t n) {
  std::vector<double> ks(n);
  for (std::size_t i = 0; i < n; ++i) {
    ks[i] = -kPi + kTwoPi * static_cast<double>(i + 1) / static_cast<double>(n);
  }
  return ks;
}

BandStructure band_structure(const CoinParams& p, std::size_t grid_size) {
  if (grid_size < 8) {
    throw Error(ErrorKind::InvalidArgument, "band structure needs grid_size >= 8");
  }
  BandStructure b;
  b.params = p;
  b.grid_size = grid_size;
  b.points.reserve(grid_size);
  for (double k : k_grid(grid_size)) b.points.push_back(bloch_point(p, k));
  return b;
}

GapReport gap_report(const BandStructure& b, double tol) {
  double lo = kPi;
  double hi = 0.0;
  for (const auto& pt : b.points) {
    lo = std::min(lo, pt.omega);
    hi = std::max(hi, pt.omega);
  }
  const auto [k0, k1] = special_points(b.params.alpha());
  for (double k : {k0, k1}) {
    const double w = dispersion(b.params, k);
    lo = std::min(lo, w);
    hi = std::max(hi, w);
  }
  GapReport g;
  g.gap_at_delta = 2.0 * lo;
  g.gap_at_delta_plus_pi = 2.0 * (kPi - hi);
  g.is_gapped = g.gap_at_delta > tol && g.gap_at_delta_plus_pi > tol;
  return g;
}

std::pair<double, double> special_points(double alpha) noexcept {
  return {wrap_angle(alpha), wrap_angle(alpha + kPi)};
}

void write_band_csv(std::ostream& os, const BandStructure& b) {
  os << "k,omega_plus,omega_minus,n_x,n_y,n_z\n";
  const double delta = b.params.delta();
  for (const auto& pt : b.points) {
    os << format_double(pt.k) << ',' << format_double(wrap_angle(delta + pt.omega)) << ','
       << format_double(wrap_angle(delta - pt.omega)) << ',' << format_double(pt.n.x) << ','
       << format_double(pt.n.y) << ',' << format_double(pt.n.z) << '\n';
  }
}

}  // namespace qwalk
