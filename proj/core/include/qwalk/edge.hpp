#pragma once

// Exact edge states at a sharp interface theta_x = theta1 < 0 (x < 0),
// theta2 > 0 (x >= 0):
//
//   |Psi_eta> = N^{-1/2} sum_x e^{i eta x} |x> (x) (a_x |->> + b_x |<-),   eta in {0, pi}
//   a_x = A_j^x,  b_x = -e^{-i(alpha + beta)} A_j^{x+1},  j = 1 (x < 0), 2 (x >= 0)
//   A_j = e^{i alpha} (1 - sin theta_j) / cos theta_j
//   N   = 1 / sin theta2 - 1 / sin theta1
//
// plus the three interface dynamics experiments (initial state orthogonal to both
// edge states, overlapping one, overlapping both).

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qwalk/coin.hpp"
#include "qwalk/lattice.hpp"

namespace qwalk {

struct InterfaceSpec {
  double delta = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double theta1 = -kPi / 4;  // x < 0, in (-pi, 0)
  double theta2 = kPi / 4;   // x >= 0, in (0, pi)
  long n = 64;

  /// Throws InvalidArgument when the signs are wrong or OddRing for a bad ring.
  void validate() const;
  CoinParams params(double theta) const noexcept { return {delta, alpha, beta, theta}; }
};

/// (0, 0, pi/2) with theta = -+pi/4: the reference interface used for the dynamics experiments.
InterfaceSpec default_interface_spec(long n = 64);

/// A = e^{i alpha} (1 - sin theta) / cos theta, evaluated as e^{i alpha} cos theta / (1 + sin theta)
/// so theta -> pi/2 is finite. Undefined at theta = -pi/2.
cplx decay_constant(double alpha, double theta);

/// 1 / sin theta2 - 1 / sin theta1.
double norm_constant(double theta1, double theta2) noexcept;

/// Smallest even ring (>= 64) for which |A2|^N and |A1|^-N are below 1e-12.
long required_ring_size(double theta1, double theta2);

struct EdgeState {
  double eta = 0.0;
  WalkerState state;         // unit norm on the ring
  cplx a1;                   // decay constant for x < 0
  cplx a2;                   // decay constant for x >= 0
  double norm_constant = 0;  // analytic normalization
  double ring_norm2 = 0;     // sum |a|^2 + |b|^2 of the raw amplitudes on the ring
  InterfaceSpec spec;
};

/// Raw (unnormalized) amplitudes a_x, b_x times e^{i eta x}. Throws InvalidArgument for
/// eta outside {0, pi}.
WalkerState edge_amplitudes(const InterfaceSpec& spec, double eta);

/// Normalized edge state. Throws RingTooSmall when the ring truncation is not negligible.
EdgeState analytic_edge_state(const InterfaceSpec& spec, double eta);

WalkOperator interface_walk(const InterfaceSpec& spec);

struct EigenResidual {
  double residual = 0.0;
  double quasienergy = 0.0;  // from <psi|U|psi> = e^{-i w}
};

/// ||U psi - e^{-i w} psi||. Throws SpecMismatch when U is not the walk of e.spec.
EigenResidual eigen_residual(const WalkOperator& u, const EdgeState& e);

struct OverlapDecomposition {
  std::vector<cplx> projections;  // <edge|s>
  double remainder_norm = 0.0;    // ||s - sum <edge|s> edge||
};

OverlapDecomposition overlap_decomposition(const WalkerState& s, std::span<const EdgeState> edges);

enum class OverlapCase { OrthogonalToBoth, OverlapOne, OverlapBoth };
std::string_view to_string(OverlapCase c) noexcept;
std::optional<OverlapCase> parse_overlap_case(std::string_view name) noexcept;

/// Pass threshold on interface probabilities.
inline constexpr double kDynamicsTol = 0.02;
/// Period-2 amplitude of the density at x = 0 above this counts as oscillation.
inline constexpr double kPeriod2Threshold = 0.05;

/// Smallest even ring with N >= 2T + window, so no wavefront returns to the window.
long dynamics_ring_size(long steps, long window = kInterfaceWindow);

/// Deterministic initial states:
///   OrthogonalToBoth: (|-1,->> + i|0,<-)/sqrt2 Gram-Schmidt-orthogonalized against both edges
///   OverlapOne:       (Psi_0 + chi) / sqrt2, chi the state above
///   OverlapBoth:      (Psi_0 + Psi_pi) / sqrt2
WalkerState overlap_initial_state(OverlapCase c, const EdgeState& edge0, const EdgeState& edge_pi);

struct DynamicsRecord {
  OverlapCase which = OverlapCase::OrthogonalToBoth;
  InterfaceSpec spec;
  long steps = 0;
  long window = kInterfaceWindow;
  std::vector<cplx> projections;  // onto (Psi_0, Psi_pi)
  double predicted = 0.0;         // sum |projection|^2
  double plateau = 0.0;           // mean interface probability over the last quarter
  double final_interface_prob = 0.0;
  double period2_amplitude = 0.0; // |mean of (-1)^t p_0(t)| over the last quarter
  bool oscillation_detected = false;
  bool passed = false;
  Trajectory trajectory;
};

/// Builds the initial state, runs the walk and scores the run. Throws RingTooSmall
/// when spec.n < dynamics_ring_size(steps, window).
DynamicsRecord interface_dynamics(const InterfaceSpec& spec, OverlapCase c, long steps,
                           long window = kInterfaceWindow);

nlohmann::ordered_json to_json(const InterfaceSpec& spec);
/// Experiment record without the trajectory (that goes to CSV).
nlohmann::ordered_json to_json(const DynamicsRecord& r);

}  // namespace qwalk
