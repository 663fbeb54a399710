#pragma once

// Position-space walks on a ring of N sites labelled x = -N/2 ... N/2 - 1.
// The amplitude vector is ordered (a_x, b_x) site by site, so basis index
// 2 * (x + N/2) + c with c = 0 for |->> and c = 1 for |<-.

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qwalk/coin.hpp"

namespace qwalk {

/// Largest ring accepted by the dense routines (2N = 1024 unknowns).
inline constexpr long kMaxDenseRing = 512;

struct ThetaProfile {
  std::vector<double> theta;  // theta[i] belongs to site x = i - N/2

  long size() const noexcept { return static_cast<long>(theta.size()); }

  static ThetaProfile homogeneous(double theta, long n);
  /// theta1 for x < 0 and theta2 for x >= 0; the ring closes with a second wall at the wrap point.
  static ThetaProfile sharp_interface(double theta1, double theta2, long n);
};

inline long site_label(long index, long n) noexcept { return index - n / 2; }
inline long site_index(long x, long n) noexcept { return x + n / 2; }

class WalkerState {
 public:
  WalkerState() = default;
  explicit WalkerState(long n) : amps_(static_cast<std::size_t>(n), Spinor{0.0, 0.0}) {}
  explicit WalkerState(std::vector<Spinor> amps) : amps_(std::move(amps)) {}

  /// A single basis state |x> (x) |coin>; coin 0 = |->>, 1 = |<-.
  static WalkerState localized(long n, long x, int coin);

  long size() const noexcept { return static_cast<long>(amps_.size()); }
  Spinor& at(long index) { return amps_.at(static_cast<std::size_t>(index)); }
  const Spinor& at(long index) const { return amps_.at(static_cast<std::size_t>(index)); }
  Spinor& at_site(long x) { return at(site_index(x, size())); }
  const Spinor& at_site(long x) const { return at(site_index(x, size())); }
  const std::vector<Spinor>& amplitudes() const noexcept { return amps_; }

  double norm() const noexcept;
  void normalize();
  /// <this|other>
  cplx inner(const WalkerState& other) const;
  /// Probability per site.
  std::vector<double> probabilities() const;

  Eigen::VectorXcd to_vector() const;
  static WalkerState from_vector(const Eigen::VectorXcd& v);

  WalkerState& operator+=(const WalkerState& o);
  WalkerState& operator-=(const WalkerState& o);
  WalkerState& operator*=(cplx s);
  friend WalkerState operator+(WalkerState a, const WalkerState& b) { return a += b; }
  friend WalkerState operator-(WalkerState a, const WalkerState& b) { return a -= b; }
  friend WalkerState operator*(cplx s, WalkerState a) { return a *= s; }

 private:
  std::vector<Spinor> amps_;
};

/// One step U = post * S * pre with per-site coins. A plain walk has pre = C_x
/// and no post coins; time-shifted walks split the coin across the shift.
class WalkOperator {
 public:
  WalkOperator(CoinParams params, ThetaProfile profile, std::vector<Mat2> pre,
               std::vector<Mat2> post = {});

  const CoinParams& params() const noexcept { return params_; }
  const ThetaProfile& profile() const noexcept { return profile_; }
  long size() const noexcept { return profile_.size(); }
  const std::vector<Mat2>& pre_coins() const noexcept { return pre_; }
  const std::vector<Mat2>& post_coins() const noexcept { return post_; }

  /// Coin parameters at site index i (delta, alpha, beta shared; theta from the profile).
  CoinParams site_params(long index) const { return params_.with_theta(profile_.theta.at(index)); }

 private:
  CoinParams params_;
  ThetaProfile profile_;
  std::vector<Mat2> pre_;
  std::vector<Mat2> post_;
};

/// U = S C. Throws OddRing for odd N or N < 4.
WalkOperator build_walk(const CoinParams& p, const ThetaProfile& profile);

/// O(N) application of U. Throws DimensionMismatch.
WalkerState step(const WalkOperator& u, const WalkerState& s);

/// Dense 2N x 2N matrix of U. Throws TooLarge past kMaxDenseRing.
Eigen::MatrixXcd materialize(const WalkOperator& u);

/// Conditional shift alone, dense.
Eigen::MatrixXcd shift_matrix(long n);

/// Block-diagonal I (x) m, dense.
Eigen::MatrixXcd coin_block(long n, const Mat2& m);

struct StepObservables {
  long t = 0;
  double interface_prob = 0.0;
  double mean_x = 0.0;
  double sigma_x = 0.0;
};

struct Snapshot {
  long t = 0;
  WalkerState state;
};

struct Trajectory {
  std::vector<Snapshot> snapshots;
  std::vector<StepObservables> observables;  // every step 0..T
  long window = 0;
  WalkerState final_state;
};

/// Default half-width of the interface window |x| <= window.
inline constexpr long kInterfaceWindow = 5;

StepObservables observe(const WalkerState& s, long t, long window = kInterfaceWindow);

/// Runs T steps. Snapshots at t = 0 and every record_every steps; observables every step.
Trajectory evolve(const WalkOperator& u, const WalkerState& s0, long steps, long record_every = 1,
                  long window = kInterfaceWindow);

struct SpectralData {
  std::vector<double> eigenphases;         // U v = e^{-i w} v, w in (-pi, pi], ascending
  std::vector<WalkerState> eigenvectors;   // orthonormal
  std::vector<double> ipr;                 // sum_x p_x^2
};

/// Full eigendecomposition with an orthonormal eigenbasis, also for degenerate
/// eigenphases: the Hermitian part (U + U^dagger) / 2 is diagonalized first and U is
/// then diagonalized inside each of its eigenspaces. Throws TooLarge past kMaxDenseRing.
SpectralData diagonalize(const WalkOperator& u);

double inverse_participation_ratio(const WalkerState& s);

struct LocalizationEntry {
  std::size_t index = 0;  // into SpectralData
  double eigenphase = 0.0;
  double weight = 0.0;    // probability within [x_lo, x_hi]
  double ipr = 0.0;
};

/// Window weights for every eigenvector, sorted by weight, largest first.
std::vector<LocalizationEntry> localization_report(const SpectralData& spec, long x_lo, long x_hi);

/// Columns x, re_a, im_a, re_b, im_b, prob.
void write_state_csv(std::ostream& os, const WalkerState& s);
/// Columns t, interface_prob, mean_x, sigma_x.
void write_trajectory_csv(std::ostream& os, const Trajectory& tr);
/// Columns index, eigenphase, window_weight, ipr (in eigenphase order).
void write_spectrum_csv(std::ostream& os, const SpectralData& spec, long x_lo, long x_hi);

}  // namespace qwalk

namespace qwalk {

/// Omega = W^2 K applied site by site.
WalkerState apply_phs(const PhsOperator& omega, const WalkerState& s);

}  // namespace qwalk
