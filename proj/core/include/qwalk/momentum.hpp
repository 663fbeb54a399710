#pragma once

// Translation-invariant walks in quasimomentum space. With |k> = sum_x e^{ikx}|x>
// the one-step operator is U_k = diag(e^{-ik}, e^{ik}) C and
// U_k = exp(-i H_k),  H_k = delta I + omega_k n_k . sigma,
// cos(omega_k) = cos(theta) cos(k - alpha), omega_k in [0, pi].

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

#include "qwalk/coin.hpp"

namespace qwalk {

/// sin(omega_k) below this marks a gap-closing point where n_k is undefined.
inline constexpr double kDegenerateTol = 1e-9;
inline constexpr std::size_t kDefaultGrid = 512;

struct BlochPoint {
  double k = 0.0;
  double omega = 0.0;
  Vec3 n;
  bool degenerate = false;
};

struct BandStructure {
  CoinParams params;
  std::vector<BlochPoint> points;
  std::size_t grid_size = 0;
};

struct GapReport {
  double gap_at_delta = 0.0;
  double gap_at_delta_plus_pi = 0.0;
  bool is_gapped = false;
};

/// omega_k in [0, pi].
double dispersion(const CoinParams& p, double k) noexcept;

/// Unit vector n_k. Throws DegeneratePoint where sin(omega_k) < kDegenerateTol.
Vec3 bloch_vector(const CoinParams& p, double k);

/// Full sample: omega_k and n_k, with the degenerate flag instead of a throw.
BlochPoint bloch_point(const CoinParams& p, double k) noexcept;

/// delta I + omega_k n_k . sigma. Throws DegeneratePoint like bloch_vector.
Mat2 bloch_hamiltonian(const CoinParams& p, double k);

/// Momentum-space step matrix diag(e^{-ik}, e^{ik}) C.
Mat2 momentum_step(const CoinParams& p, double k) noexcept;

/// Momentum-space shift diag(e^{-ik}, e^{ik}).
Mat2 momentum_shift(double k) noexcept;

/// Reads u = e^{-i phase} exp(-i w m . sigma), w in [0, pi], for a caller-supplied
/// scalar phase (delta for every walk in this library). Used to get the Bloch
/// vector of composite steps such as the time-shifted walks.
struct UnitaryBloch {
  double phase = 0.0;
  double omega = 0.0;
  Vec3 n;
  bool degenerate = false;
};

UnitaryBloch unitary_bloch(const Mat2& u, double phase) noexcept;

/// k_i = -pi + 2 pi (i + 1) / n for i = 0..n-1: uniform over (-pi, pi].
std::vector<double> k_grid(std::size_t n);

/// Throws InvalidArgument when grid_size < 8.
BandStructure band_structure(const CoinParams& p, std::size_t grid_size = kDefaultGrid);

/// Gap widths from the grid plus the two special points, where the band
/// extrema sit.
GapReport gap_report(const BandStructure& b, double tol = kDegenerateTol);

/// (alpha, alpha + pi), each wrapped to (-pi, pi].
std::pair<double, double> special_points(double alpha) noexcept;

/// Columns k, omega_plus, omega_minus, n_x, n_y, n_z. Quasienergies are wrapped to
/// (-pi, pi]; degenerate rows carry nan in the n columns.
void write_band_csv(std::ostream& os, const BandStructure& b);

}  // namespace qwalk
