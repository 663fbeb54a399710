#pragma once

// Symmetry operators of the basic walk and numerical certificates for them.
//
//   SUB  Lambda U Lambda^-1 = -U,            Lambda = sum_x (-1)^x |x><x| (x) I
//   PHS  Omega U Omega^-1 = lambda U,        Omega = W^2 K
//   PS   P H_k P^-1 = H_{2 alpha - k},       P = i n_beta . sigma
//   CS   Gamma(theta) H_k Gamma(theta)^-1 = -H_k (traceless part, beta = 0)
//
// plus the two time-shifted frames U~ = V U V^-1 built from the split coin.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "qwalk/coin.hpp"
#include "qwalk/lattice.hpp"
#include "qwalk/topology.hpp"

namespace qwalk {

enum class SymmetryName { SUB, PHS, PS, CS, TimeShiftV1, TimeShiftV2 };
std::string_view to_string(SymmetryName name) noexcept;

enum class NormKind { Spectral, MaxEntry };
std::string_view to_string(NormKind kind) noexcept;

/// Dense matrices up to this dimension (2N = 64) are measured in the spectral norm.
inline constexpr long kSpectralNormMaxDim = 64;

NormKind norm_kind_for(long dim) noexcept;
/// Largest singular value for dim <= kSpectralNormMaxDim, largest entry modulus beyond.
double operator_norm(const Eigen::MatrixXcd& m);

struct SymmetryReport {
  SymmetryName name = SymmetryName::SUB;
  double residual = 0.0;
  double tolerance = kOperatorTol;
  NormKind norm = NormKind::Spectral;
  bool passed = false;
  nlohmann::ordered_json context;
};

nlohmann::ordered_json to_json(const SymmetryReport& r);

/// Lambda as a dense diagonal matrix. Throws OddRing.
Eigen::MatrixXcd sublattice_operator(long n);

/// ||Lambda U Lambda^-1 + U||. Throws OddRing.
double sublattice_residual(const WalkOperator& u);

struct PhsResidual {
  double residual = 0.0;
  cplx global_phase{1.0, 0.0};
};

/// Omega U Omega^-1 = W^2 conj(U) W^-2 as a dense matrix.
Eigen::MatrixXcd phs_conjugate(const WalkOperator& u);

/// min over |lambda| = 1 of ||Omega U Omega^-1 - lambda U||, with the minimizing lambda.
/// Throws IncommensurateAlpha unless alpha = 2 pi m / N.
PhsResidual phs_residual(const WalkOperator& u);

/// i n_beta . sigma
Mat2 parity_coin(double beta) noexcept;

/// ||P H_k P^-1 - H_{2 alpha - k}||. Throws DegeneratePoint.
double parity_residual_bloch(const CoinParams& p, double k);

/// m_theta = (cos theta, 0, -sin theta).
Vec3 chiral_vector(double theta) noexcept;

/// Gamma(theta) = exp(-i pi/2 m_theta . sigma).
Mat2 chiral_operator(double theta) noexcept;

/// ||Gamma(theta) H' Gamma(theta)^-1 + H'|| with H' = H_k - delta I.
/// Throws BetaNonzero, DegeneratePoint.
double chiral_residual(const CoinParams& p, double k);

/// Same anticommutator in a rotated frame with the frame's fixed Gamma = i gamma . sigma:
/// ||Gamma H~' Gamma^-1 + H~'||, H~' = V(theta) (H_k - delta I) V(theta)^-1.
/// Throws UnsupportedParams for the identity frame, which has no fixed Gamma.
double frame_chiral_residual(const CoinParams& p, Frame tag, double k);

/// Pre and post coins of the split walk U~ = C(2) S C(1):
/// V1: C(1) = C(2) = C_1/2; V2: C(1) = C_1/2 C_s, C(2) = C_s^-1 C_1/2,
/// with C_1/2 = exp(i theta/2 sigma_y) and C_s = exp(i pi/4 sgn(theta) sigma_y).
/// The coin phase e^{-i delta} rides on C(1).
struct SplitCoin {
  Mat2 pre;
  Mat2 post;
};

SplitCoin split_coin(const CoinParams& p, Frame tag);

/// Homogeneous time-shifted walk on n sites. Requires alpha = beta = 0 and theta != 0
/// (UnsupportedParams). The identity frame returns the plain walk.
WalkOperator timeshift_walk(const CoinParams& p, Frame tag, long n);

/// ||U~ - V U V^-1|| on a ring of n sites.
double timeshift_residual(const CoinParams& p, Frame tag, long n);

/// Momentum-space step of the time-shifted walk, C(2) S_k C(1).
Mat2 timeshift_momentum_step(const CoinParams& p, Frame tag, double k);

/// Largest circular distance in an optimal-greedy pairing of two eigenphase multisets.
/// Infinity when sizes differ.
double spectral_mismatch(std::span<const double> a, std::span<const double> b);

/// Eigenphases of U mapped by w -> w + shift (SUB check: shift = pi).
std::vector<double> shifted(std::span<const double> phases, double shift);
/// Eigenphases reflected about center: w -> 2 center - w (PHS check: center = delta).
std::vector<double> reflected(std::span<const double> phases, double center);

/// All checks applicable to (p, n): SUB, PHS, PS (one k), CS (beta = 0), and the two
/// time-shifted frames (alpha = beta = 0, theta != 0). seed picks the sample momentum
/// and the random state for the Omega^2 = I check.
std::vector<SymmetryReport> symmetry_suite(const CoinParams& p, long n, std::uint64_t seed);

}  // namespace qwalk
